#pragma once

#include <limits>
#include <span>
#include <vector>

#include "mrsim/mobility.hpp"
#include "mrsim/radio.hpp"

namespace mrsim {

struct PopulationModel {
    int active_users = 25;
    int users_in_mr_zone = 10;
    int users_pico = 10;
    int users_macro = 5;
    double per_user_ul_bytes_per_s = 0.16e6;
};

/// A delay-tolerant upload. `bytes_remaining` counts what has not yet been
/// moved over a relay or handed to the baseline server.
struct DelayedJob {
    double size_bytes = 100e6;
    double max_delay_s = 0.0;
    double bytes_bypassed = 0.0;
    double bytes_direct = 0.0;
    double bytes_remaining = 100e6;

    static DelayedJob make(double size_bytes, double max_delay_s);
    bool complete() const { return bytes_remaining <= 0.0; }
    /// Moves up to `bytes` over a relay; returns the amount actually moved.
    double bypass(double bytes);
    /// Moves up to `bytes` over the baseline server; returns the amount moved.
    double send_direct(double bytes);
};

struct LedgerEntry {
    Interval interval{};
    Tier tier = Tier::Macro;
    double bytes = 0.0;
};

/// Per-UE record of what was sent, when, and over which tier.
struct TransferLedger {
    std::vector<LedgerEntry> entries;

    void add(Interval interval, Tier tier, double bytes);
    double total_bytes() const;
    double bytes_on(Tier tier) const;
};

constexpr double kUnlimitedDemand = std::numeric_limits<double>::infinity();

double offered_bytes(double rate_bytes_per_s, double interval_s);

/// Appends one entry per interval at `rate_bytes_per_s`, capped by the
/// remaining `demand_bytes`. Intervals must be sorted and disjoint.
/// Returns the bytes moved.
double integrate_transfer(TransferLedger& ledger, std::span<const Interval> intervals, Tier tier,
                          double rate_bytes_per_s, double demand_bytes = kUnlimitedDemand);

/// A relay pass usable by a delayed job: when the relay entered the street
/// and how long the UE could actually send over it.
struct PassWindow {
    double relay_arrival_s = 0.0;
    double effective_s = 0.0;
};

/// Fraction of `job` that relays arriving no later than the job's deadline
/// can carry. A pass already under way at the deadline runs to completion.
double job_progress(const DelayedJob& job, double relay_rate_bytes_per_s,
                    std::span<const PassWindow> passes);

}  // namespace mrsim
