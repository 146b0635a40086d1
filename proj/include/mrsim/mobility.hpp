#pragma once

#include <optional>
#include <vector>

#include "mrsim/engine.hpp"
#include "mrsim/geometry.hpp"

namespace mrsim {

enum class ArrivalMode { Deterministic, Poisson };

struct RelaySchedule {
    double interarrival_s = 360.0;
    double first_arrival_s = 0.0;
    double speed_mps = kmh_to_mps(30.0);
    int lane_index = 3;
    ArrivalMode mode = ArrivalMode::Deterministic;
};

struct Interval {
    double begin = 0.0;
    double end = 0.0;

    double length() const { return end - begin; }
};

/// One relay pass along the segment at constant speed.
struct RelayState {
    int id = 0;
    double entry_time_s = 0.0;
    double speed_mps = 1.0;
    double lane_y_m = 0.0;
    double segment_length_m = 150.0;

    Point position(double t) const;
    bool active(double t) const;
    double exit_time_s() const;
};

/// Relay entry times in [0, horizon).
std::vector<double> arrivals(const RelaySchedule& schedule, double horizon_s, RngStream& rng);

/// Interval during which `ue` lies within the relay's coverage disk, clipped
/// to the relay's time on the segment. Empty if the UE is never covered.
std::optional<Interval> coverage_interval(const RelayState& relay, Point ue,
                                          const CoverageDisk& disk);

}  // namespace mrsim
