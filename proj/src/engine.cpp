#include "mrsim/engine.hpp"

#include <cmath>
#include <string>

#include "mrsim/error.hpp"

namespace mrsim {

std::string_view to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::MrArrival: return "MR_ARRIVAL";
    case EventKind::MrEnterCoverage: return "MR_ENTER_COVERAGE";
    case EventKind::MrExitCoverage: return "MR_EXIT_COVERAGE";
    case EventKind::AttachRequest: return "ATTACH_REQUEST";
    case EventKind::HandoverComplete: return "HANDOVER_COMPLETE";
    case EventKind::JobDeadline: return "JOB_DEADLINE";
    case EventKind::MetricSample: return "METRIC_SAMPLE";
    case EventKind::SimEnd: return "SIM_END";
    }
    return "UNKNOWN";
}

std::uint64_t EventQueue::schedule(SimEvent event)
{
    if (!(event.time >= clock_)) {
        throw PastEvent("event " + std::string(to_string(event.kind)) + " at t=" +
                        std::to_string(event.time) + " precedes clock " + std::to_string(clock_));
    }
    event.seq = next_seq_++;
    heap_.push(event);
    return event.seq;
}

SimEvent EventQueue::pop()
{
    SimEvent event = heap_.top();
    heap_.pop();
    clock_ = event.time;
    ++popped_;
    return event;
}

void EventQueue::advance_to(double t)
{
    if (t < clock_) throw PastEvent("clock cannot move backwards");
    clock_ = t;
}

double RngStream::uniform01()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::exponential(double mean)
{
    // 1 - u lies in (0, 1], so the log is finite.
    return -mean * std::log(1.0 - uniform01());
}

}  // namespace mrsim
