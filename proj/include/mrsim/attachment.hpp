#pragma once

#include <span>
#include <string_view>

#include "mrsim/geometry.hpp"
#include "mrsim/mobility.hpp"
#include "mrsim/radio.hpp"

namespace mrsim {

enum class ServiceType { Data, Voice };

enum class CapacityMode { Slots, Rate };

struct Thresholds {
    double speed_max_mps = kmh_to_mps(50.0);
    int mr_max_ues = 10;
    double pico_exclusion_m = 30.0;
    CapacityMode capacity_mode = CapacityMode::Slots;
    double mr_capacity_bytes_per_s = 1.8e6;
};

struct UeContext {
    int id = 0;
    Point position{};
    NetworkNode serving{};
    ServiceType service = ServiceType::Data;
};

enum class AttachReason {
    Granted,
    VoiceOngoing,
    SpeedExceeded,
    NoCapacity,
    PicoTooClose,
    RsrpNotHigher,
};

std::string_view to_string(AttachReason reason);

struct AttachDecision {
    bool granted = false;
    AttachReason reason = AttachReason::RsrpNotHigher;
};

struct HandoverCosts {
    double interruption_s = 0.050;
    double execution_known_s = 0.050;
    double execution_unknown_s = 0.130;
};

/// What the serving base station knows about the relay when the request
/// arrives: its GPS-reported position, its speed, and its current load.
struct RelaySnapshot {
    Point reported_position{};
    double speed_mps = 0.0;
    int attached_ues = 0;
    double attached_load_bytes_per_s = 0.0;
};

/// Decides a UE's request to move from its macro or pico cell onto a passing
/// relay. Checks run in order: RSRP trigger, data-only service, relay speed,
/// free capacity, and (pico-served UEs only) relay-to-pico distance. The
/// first failing check names the denial.
///
/// `ue_demand_bytes_per_s` is only consulted in rate capacity mode.
AttachDecision handle_attach_request(const UeContext& ue, const RelaySnapshot& relay,
                                     const Thresholds& thresholds, bool rsrp_ok,
                                     double ue_demand_bytes_per_s = 0.0);

/// Switches `ue` to `target`. Returns the time transfers resume.
double apply_handover(UeContext& ue, const NetworkNode& target, const HandoverCosts& costs,
                      double t);

/// Hands a UE whose relay has left coverage back to the strongest
/// infrastructure node. Returns the time transfers resume.
double on_coverage_exit(UeContext& ue, std::span<const NetworkNode> infrastructure,
                        const LinkBudgetParams& params, const HandoverCosts& costs, double t);

double gps_distance_check(Point relay_reported, const NetworkNode& pico);

}  // namespace mrsim
