#include "mrsim/mobility.hpp"

#include <algorithm>
#include <cmath>

namespace mrsim {

Point RelayState::position(double t) const
{
    return {speed_mps * (t - entry_time_s), lane_y_m};
}

bool RelayState::active(double t) const
{
    const double x = position(t).x;
    return x >= 0.0 && x <= segment_length_m;
}

double RelayState::exit_time_s() const
{
    return entry_time_s + segment_length_m / speed_mps;
}

std::vector<double> arrivals(const RelaySchedule& schedule, double horizon_s, RngStream& rng)
{
    std::vector<double> times;
    if (!(horizon_s > 0.0)) return times;

    if (schedule.mode == ArrivalMode::Deterministic) {
        // Multiply rather than accumulate so late arrivals carry no drift.
        for (long k = 0;; ++k) {
            const double t = schedule.first_arrival_s + static_cast<double>(k) * schedule.interarrival_s;
            if (t >= horizon_s) break;
            if (t >= 0.0) times.push_back(t);
        }
        return times;
    }

    for (double t = schedule.first_arrival_s; t < horizon_s; t += rng.exponential(schedule.interarrival_s)) {
        if (t >= 0.0) times.push_back(t);
    }
    return times;
}

std::optional<Interval> coverage_interval(const RelayState& relay, Point ue, const CoverageDisk& disk)
{
    const double offset = std::abs(ue.y - relay.lane_y_m);
    if (offset >= disk.radius_m) return std::nullopt;

    const double half = std::sqrt(disk.radius_m * disk.radius_m - offset * offset);
    const double lo = std::max(ue.x - half, 0.0);
    const double hi = std::min(ue.x + half, relay.segment_length_m);
    if (!(hi > lo)) return std::nullopt;

    return Interval{relay.entry_time_s + lo / relay.speed_mps, relay.entry_time_s + hi / relay.speed_mps};
}

}  // namespace mrsim
