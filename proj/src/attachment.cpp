#include "mrsim/attachment.hpp"

namespace mrsim {

std::string_view to_string(AttachReason reason)
{
    switch (reason) {
    case AttachReason::Granted: return "GRANTED";
    case AttachReason::VoiceOngoing: return "VOICE_ONGOING";
    case AttachReason::SpeedExceeded: return "SPEED_EXCEEDED";
    case AttachReason::NoCapacity: return "NO_CAPACITY";
    case AttachReason::PicoTooClose: return "PICO_TOO_CLOSE";
    case AttachReason::RsrpNotHigher: return "RSRP_NOT_HIGHER";
    }
    return "UNKNOWN";
}

namespace {

bool has_capacity(const RelaySnapshot& relay, const Thresholds& thresholds, double demand)
{
    if (thresholds.capacity_mode == CapacityMode::Slots) {
        return thresholds.mr_max_ues > relay.attached_ues;
    }
    return thresholds.mr_capacity_bytes_per_s - relay.attached_load_bytes_per_s > demand;
}

AttachDecision deny(AttachReason reason)
{
    return {false, reason};
}

}  // namespace

AttachDecision handle_attach_request(const UeContext& ue, const RelaySnapshot& relay,
                                     const Thresholds& thresholds, bool rsrp_ok,
                                     double ue_demand_bytes_per_s)
{
    if (!rsrp_ok) return deny(AttachReason::RsrpNotHigher);
    if (ue.service != ServiceType::Data) return deny(AttachReason::VoiceOngoing);
    if (!(relay.speed_mps <= thresholds.speed_max_mps)) return deny(AttachReason::SpeedExceeded);
    if (!has_capacity(relay, thresholds, ue_demand_bytes_per_s)) return deny(AttachReason::NoCapacity);
    if (ue.serving.tier == Tier::Pico &&
        !(gps_distance_check(relay.reported_position, ue.serving) > thresholds.pico_exclusion_m)) {
        return deny(AttachReason::PicoTooClose);
    }
    return {true, AttachReason::Granted};
}

double apply_handover(UeContext& ue, const NetworkNode& target, const HandoverCosts& costs, double t)
{
    ue.serving = target;
    return t + costs.interruption_s;
}

double on_coverage_exit(UeContext& ue, std::span<const NetworkNode> infrastructure,
                        const LinkBudgetParams& params, const HandoverCosts& costs, double t)
{
    const NetworkNode& target = best_server(ue.position, infrastructure, params);
    return apply_handover(ue, target, costs, t);
}

double gps_distance_check(Point relay_reported, const NetworkNode& pico)
{
    return distance(relay_reported, pico.position);
}

}  // namespace mrsim
