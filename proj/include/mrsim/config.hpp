#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrsim/attachment.hpp"
#include "mrsim/energy.hpp"
#include "mrsim/mobility.hpp"
#include "mrsim/radio.hpp"
#include "mrsim/traffic.hpp"

namespace mrsim {

enum class NetworkConfig { MacroOnly, HetNet };
enum class TrafficMode { FullBuffer, Job };
enum class RemainderMode { AtDeadline, Continuous };

std::string_view to_string(NetworkConfig config);

struct GeometryConfig {
    int lane_count = 4;
    double lane_width_m = 3.2;
    double pavement_depth_m = 5.0;
    double penetration_depth_m = 5.0;
    double segment_length_m = 150.0;
    double mr_radius_m = 30.0;
    double test_area_m2 = 4920.0;
    double mr_area_m2 = 2826.0;
    double macro_distance_m = 250.0;
    double pico_lateral_m = 7.5;
    int ue_count = 15;
    double ue_pavement_share = 0.5;
};

struct RadioConfig {
    LinkBudgetParams links{};
    RateTable rates{};
    double hysteresis_db = 0.0;
};

struct MobilityConfig {
    double interarrival_s = 360.0;
    double first_arrival_s = 0.0;
    double speed_kmh = 30.0;
    int lane_index = -1;  // -1: farthest lane from the UEs
};

struct ThresholdConfig {
    double speed_max_kmh = 50.0;
    int mr_max_ues = 10;
    double pico_exclusion_m = 30.0;
    CapacityMode capacity_mode = CapacityMode::Slots;
    double mr_capacity_bytes_per_s = 1.8e6;
    double gps_staleness_s = 0.0;
};

struct TrafficConfig {
    PopulationModel population{};
    TrafficMode mode = TrafficMode::FullBuffer;
    double job_size_bytes = 100e6;
    double job_max_delay_s = 3600.0;
    RemainderMode remainder = RemainderMode::AtDeadline;
    double dl_ul_ratio = 6.0;
    double voice_share = 0.0;
};

struct EnergyConfig {
    PowerModelParams power{};
    bool calibrate = true;
    double target_macro_nj = 1.57 / 22.5e6 * 1e9;
    double target_pico_nj = 1.57 / 26e6 * 1e9;
    double target_mr_nj = (1.57 / 22.5e6 - 1.57 / 800e6) * 1e9;
    double ref_distance_pico_m = 75.0;
    double ref_distance_mr_m = 21.2;
};

struct SimConfig {
    double horizon_s = 3600.0;
    std::uint64_t seed = 7;
    ArrivalMode arrival_mode = ArrivalMode::Deterministic;
    NetworkConfig network = NetworkConfig::MacroOnly;
    double sample_interval_s = 0.0;
};

struct SweepConfig {
    std::vector<double> speeds_kmh{5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
    std::vector<double> interarrivals_min{3, 6, 9};
    double fig4_interarrival_min = 6.0;
    std::vector<double> fig4_speeds_kmh{0.5, 1, 1.5, 2, 3, 4, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
    std::vector<double> fig5_availability{0,    0.05, 0.1,  0.15, 0.2,  0.25, 0.3,
                                          0.35, 0.4,  0.45, 0.5,  0.55, 0.6,  0.65,
                                          0.7,  0.75, 0.8,  0.85, 0.9,  0.95, 1.0};
    std::vector<double> fig6_delays_min = default_delays();

    static std::vector<double> default_delays();
};

/// Every tunable of a run. Each field has exactly one `section.key` in the
/// scenario file grammar (see docs/scenario-format.md).
struct ScenarioConfig {
    GeometryConfig geometry{};
    RadioConfig radio{};
    MobilityConfig mobility{};
    ThresholdConfig thresholds{};
    HandoverCosts handover{};
    TrafficConfig traffic{};
    EnergyConfig energy{};
    SimConfig sim{};
    SweepConfig sweep{};

    int farthest_lane() const { return geometry.lane_count - 1; }
    int effective_lane() const { return mobility.lane_index < 0 ? farthest_lane() : mobility.lane_index; }
    RelaySchedule relay_schedule() const;
    Thresholds attach_thresholds() const;
    ReferenceDistances reference_distances() const;
    PerBitTable energy_targets() const;
};

enum class ViolationKind { ParseError, RangeError, UnknownKey };

struct Violation {
    ViolationKind kind = ViolationKind::ParseError;
    int line = 0;  // 0 when not tied to a line (cross-key checks, --set)
    std::string key;
    std::string message;

    std::string to_string() const;
};

struct ValidationResult {
    ScenarioConfig config{};
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

/// Parses scenario text and applies `overrides` (key, value) afterwards.
/// Collects every violation rather than stopping at the first.
ValidationResult validate(std::string_view text,
                          const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Range and cross-key checks on an already populated config.
std::vector<Violation> check_ranges(const ScenarioConfig& config);

/// Effective config in scenario-file form: every key, defaults applied.
std::string serialize(const ScenarioConfig& config);

std::vector<std::string> known_keys();

}  // namespace mrsim
