#pragma once

#include <cstdint>
#include <vector>

#include "mrsim/attachment.hpp"
#include "mrsim/config.hpp"
#include "mrsim/engine.hpp"
#include "mrsim/geometry.hpp"
#include "mrsim/mobility.hpp"
#include "mrsim/traffic.hpp"

namespace mrsim {

struct TraceEntry {
    double time = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::SimEnd;
    int relay = -1;
    int ue = -1;

    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// One attach request and, if granted, the attachment that followed.
struct AttachRecord {
    int ue = -1;
    int relay = -1;
    double relay_arrival_s = 0.0;
    double request_s = 0.0;
    AttachDecision decision{};
    Tier serving_tier = Tier::Macro;
    double detach_s = 0.0;  // == request_s when denied
    bool truncated = false;  // attachment still open at the horizon

    double attached_s() const { return decision.granted ? detach_s - request_s : 0.0; }
};

/// A change of serving node.
struct ServingChange {
    int ue = -1;
    double time = 0.0;
    int node_id = -1;
    Tier tier = Tier::Macro;
};

struct UeInfo {
    Point position{};
    UeSpot spot = UeSpot::InBuilding;
    ServiceType service = ServiceType::Data;
    NetworkNode baseline{};  // initial infrastructure server
};

struct Sample {
    double time = 0.0;
    int relay_served_ues = 0;
};

struct RunTrace {
    double horizon_s = 0.0;
    double end_clock_s = 0.0;
    std::uint64_t events_scheduled = 0;
    std::uint64_t events_processed = 0;
    std::vector<TraceEntry> events;
    std::vector<double> relay_arrivals;
    std::vector<UeInfo> ues;
    std::vector<AttachRecord> attachments;
    std::vector<ServingChange> serving_changes;
    std::vector<TransferLedger> ledgers;
    std::vector<DelayedJob> jobs;  // job mode only
    std::vector<Sample> samples;

    std::size_t count(EventKind kind) const;
    /// Time UE `ue` spent attached to a relay.
    double attached_time(int ue) const;
    /// Relay passes available to UE `ue` for a delayed job.
    std::vector<PassWindow> pass_windows(int ue, double interruption_s) const;
};

/// Hook called after every processed event (for invariant checks in tests).
using EventObserver = void (*)(const SimEvent& event, const RunTrace& trace, void* context);

/// Single-threaded discrete-event run of one scenario. Owns all its state,
/// so independent instances may run concurrently.
class Simulation {
public:
    explicit Simulation(ScenarioConfig config);

    void set_observer(EventObserver observer, void* context);

    RunTrace run();

    const ScenarioConfig& config() const { return config_; }
    const StreetLayout& layout() const { return layout_; }

private:
    ScenarioConfig config_;
    StreetLayout layout_;
    EventObserver observer_ = nullptr;
    void* observer_context_ = nullptr;
};

/// Index of the reference UE: the in-building UE nearest the segment middle.
int reference_ue(const RunTrace& trace, double segment_length_m);

}  // namespace mrsim
