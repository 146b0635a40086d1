#include "mrsim/traffic.hpp"

#include <algorithm>

namespace mrsim {

DelayedJob DelayedJob::make(double size_bytes, double max_delay_s)
{
    DelayedJob job;
    job.size_bytes = size_bytes;
    job.max_delay_s = max_delay_s;
    job.bytes_remaining = size_bytes;
    return job;
}

double DelayedJob::bypass(double bytes)
{
    const double moved = std::clamp(bytes, 0.0, bytes_remaining);
    bytes_bypassed += moved;
    bytes_remaining = size_bytes - bytes_bypassed - bytes_direct;
    if (bytes_remaining < 0.0) bytes_remaining = 0.0;
    return moved;
}

double DelayedJob::send_direct(double bytes)
{
    const double moved = std::clamp(bytes, 0.0, bytes_remaining);
    bytes_direct += moved;
    bytes_remaining = size_bytes - bytes_bypassed - bytes_direct;
    if (bytes_remaining < 0.0) bytes_remaining = 0.0;
    return moved;
}

void TransferLedger::add(Interval interval, Tier tier, double bytes)
{
    entries.push_back({interval, tier, bytes});
}

double TransferLedger::total_bytes() const
{
    double total = 0.0;
    for (const auto& e : entries) total += e.bytes;
    return total;
}

double TransferLedger::bytes_on(Tier tier) const
{
    double total = 0.0;
    for (const auto& e : entries) {
        if (e.tier == tier) total += e.bytes;
    }
    return total;
}

double offered_bytes(double rate_bytes_per_s, double interval_s)
{
    return rate_bytes_per_s * interval_s;
}

double integrate_transfer(TransferLedger& ledger, std::span<const Interval> intervals, Tier tier,
                          double rate_bytes_per_s, double demand_bytes)
{
    double moved = 0.0;
    for (const auto& interval : intervals) {
        const double left = demand_bytes - moved;
        if (!(left > 0.0)) break;
        const double bytes = std::min(offered_bytes(rate_bytes_per_s, std::max(interval.length(), 0.0)), left);
        ledger.add(interval, tier, bytes);
        moved += bytes;
    }
    return moved;
}

double job_progress(const DelayedJob& job, double relay_rate_bytes_per_s, std::span<const PassWindow> passes)
{
    if (!(job.size_bytes > 0.0)) return 1.0;
    double carried = 0.0;
    for (const auto& pass : passes) {
        if (pass.relay_arrival_s > job.max_delay_s) continue;
        carried += relay_rate_bytes_per_s * std::max(pass.effective_s, 0.0);
    }
    return std::min(1.0, carried / job.size_bytes);
}

}  // namespace mrsim
