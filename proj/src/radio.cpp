#include "mrsim/radio.hpp"

#include <algorithm>
#include <cmath>

#include "mrsim/error.hpp"

namespace mrsim {

std::string_view to_string(Tier tier)
{
    switch (tier) {
    case Tier::Macro: return "MACRO";
    case Tier::Pico: return "PICO";
    case Tier::Relay: return "MR";
    }
    return "UNKNOWN";
}

const TierLink& LinkBudgetParams::operator[](Tier tier) const
{
    switch (tier) {
    case Tier::Macro: return macro;
    case Tier::Pico: return pico;
    case Tier::Relay: return relay;
    }
    return macro;
}

double RateTable::uplink(Tier tier) const
{
    switch (tier) {
    case Tier::Macro: return macro_ul;
    case Tier::Pico: return pico_ul;
    case Tier::Relay: return relay_ul;
    }
    return macro_ul;
}

double RateTable::downlink(Tier tier) const
{
    switch (tier) {
    case Tier::Macro: return macro_dl;
    case Tier::Pico: return pico_dl;
    case Tier::Relay: return relay_dl;
    }
    return macro_dl;
}

double pathloss_db(const TierLink& link, double distance_m)
{
    const double d = std::max(distance_m, link.min_distance_m);
    return link.pl_intercept_db + link.pl_exponent * std::log10(d / 1000.0);
}

double pathloss_db(const LinkBudgetParams& params, Tier tier, double distance_m)
{
    return pathloss_db(params[tier], distance_m);
}

double rsrp_dbm(double tx_power_dbm, double pathloss_db)
{
    return tx_power_dbm - pathloss_db;
}

double rsrp_at(const LinkBudgetParams& params, const NetworkNode& node, Point ue)
{
    return rsrp_dbm(node.tx_power_dbm, pathloss_db(params, node.tier, distance(node.position, ue)));
}

const NetworkNode& best_server(Point ue, std::span<const NetworkNode> nodes,
                               const LinkBudgetParams& params, std::optional<int> current_serving_id)
{
    if (nodes.empty()) throw NoNodes("no candidate nodes");

    const NetworkNode* best = nullptr;
    double best_rsrp = 0.0;
    for (const auto& node : nodes) {
        const double rsrp = rsrp_at(params, node, ue);
        if (best == nullptr || rsrp > best_rsrp) {
            best = &node;
            best_rsrp = rsrp;
            continue;
        }
        if (rsrp < best_rsrp) continue;
        // exact tie
        const bool node_serving = current_serving_id && node.id == *current_serving_id;
        const bool best_serving = current_serving_id && best->id == *current_serving_id;
        if (node_serving || (!best_serving && node.id < best->id)) best = &node;
    }
    return *best;
}

double uplink_rate(const RateTable& rates, Tier tier)
{
    return rates.uplink(tier);
}

}  // namespace mrsim
