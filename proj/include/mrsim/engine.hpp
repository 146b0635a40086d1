#pragma once

#include <cstdint>
#include <queue>
#include <random>
#include <string_view>
#include <vector>

namespace mrsim {

enum class EventKind : std::uint8_t {
    MrArrival,
    MrEnterCoverage,
    MrExitCoverage,
    AttachRequest,
    HandoverComplete,
    JobDeadline,
    MetricSample,
    SimEnd,
};

std::string_view to_string(EventKind kind);

/// A scheduled occurrence. `seq` is assigned by the queue on insertion and
/// breaks ties between events at the same instant.
struct SimEvent {
    double time = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::SimEnd;
    int relay = -1;
    int ue = -1;
    std::uint64_t token = 0;  // handover generation, used to drop stale completions
};

/// Min-ordered event list with a monotone clock.
class EventQueue {
public:
    /// Enqueues `event` and returns the sequence number it was given.
    /// Throws PastEvent if the event lies before the current clock.
    std::uint64_t schedule(SimEvent event);

    /// Removes the earliest event and advances the clock to its time.
    SimEvent pop();

    const SimEvent& top() const { return heap_.top(); }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

    double clock() const { return clock_; }
    void advance_to(double t);

    std::uint64_t scheduled_count() const { return next_seq_; }
    std::uint64_t processed_count() const { return popped_; }

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
    double clock_ = 0.0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t popped_ = 0;
};

/// Seeded random stream. The engine is std::mt19937_64, whose output sequence
/// is fixed by the C++ standard; variates are derived from raw 64-bit draws
/// here rather than through <random> distributions, which are not portable.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    static constexpr std::string_view algorithm() { return "mt19937_64"; }
    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform01();
    /// Exponential variate with the given mean.
    double exponential(double mean);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace mrsim
