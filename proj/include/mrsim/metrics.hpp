#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mrsim/config.hpp"
#include "mrsim/simulation.hpp"
#include "mrsim/traffic.hpp"

namespace mrsim {

struct Fig2Row {
    double speed_kmh = 0.0;
    NetworkConfig config = NetworkConfig::MacroOnly;
    double avg_attach_s = 0.0;
};

struct Fig3Row {
    double speed_kmh = 0.0;
    double interarrival_min = 0.0;
    double availability = 0.0;
};

struct Fig4Row {
    double availability = 0.0;
    NetworkConfig config = NetworkConfig::MacroOnly;
    double bypassed_mb = 0.0;
};

enum class EnergyConfigLabel { Macro, Pico, MrMacro, MrPico };

std::string_view to_string(EnergyConfigLabel label);

struct Fig5Row {
    double availability = 0.0;
    EnergyConfigLabel config = EnergyConfigLabel::Macro;
    double bits_per_joule = 0.0;
};

struct Fig6Row {
    double delay_min = 0.0;
    NetworkConfig config = NetworkConfig::MacroOnly;
    double fraction_bypassed = 0.0;
};

struct MetricsBundle {
    std::vector<Fig2Row> fig2;
    std::vector<Fig3Row> fig3;
    std::vector<Fig4Row> fig4;
    std::vector<Fig5Row> fig5;
    std::vector<Fig6Row> fig6;

    bool empty() const;
    /// Appends all rows of `other` (a pure merge).
    void merge(const MetricsBundle& other);
    /// Orders every table by its leading columns.
    void sort();
};

/// Mean attachment duration over all attach requests in the trace; denied
/// requests contribute zero.
double avg_attachment_time(const RunTrace& trace);

/// Closed-form availability of the worst-placed UE: min(1, window / interarrival).
double availability_ratio(double speed_mps, double interarrival_s, const ScenarioConfig& config);

/// Share of the horizon UE `ue` spent attached to a relay.
double measured_availability(const RunTrace& trace, int ue);

/// Busy-hour volume (MB) one UE can move over relays at the given availability.
double bypassed_traffic(double availability, double per_user_rate_bytes_per_s,
                        double relay_rate_bytes_per_s);

/// Mean relay-carried volume per UE in the trace, in MB.
double mean_bypassed_mb(const RunTrace& trace);

/// As above, counting only the part of each transfer inside [begin, end).
double mean_bypassed_mb(const RunTrace& trace, double begin_s, double end_s);

/// Bypassed fraction of a delayed job, averaged over UEs, for each accepted
/// delay (seconds). `delays_s` must be sorted ascending.
std::vector<double> bypass_efficiency_curve(const RunTrace& trace, double job_size_bytes,
                                            double relay_rate_bytes_per_s,
                                            double interruption_s,
                                            std::span<const double> delays_s);

struct CsvFile {
    std::string name;
    std::string content;
};

/// Renders the five tables. Numbers use 6 significant digits.
std::vector<CsvFile> render_csv(const MetricsBundle& bundle);

/// Writes fig2.csv .. fig6.csv into `out_dir`, creating it if needed. With
/// `include_empty` false, tables without rows are skipped. Throws IoError.
std::vector<std::filesystem::path> write_csv(const MetricsBundle& bundle,
                                             const std::filesystem::path& out_dir,
                                             bool include_empty = true);

}  // namespace mrsim
