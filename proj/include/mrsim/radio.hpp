#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "mrsim/geometry.hpp"

namespace mrsim {

enum class Tier { Macro, Pico, Relay };

std::string_view to_string(Tier tier);

/// Log-distance link parameters of one tier:
/// PL = intercept + exponent * log10(max(d, min_distance) / 1 km).
struct TierLink {
    double tx_power_dbm = 0.0;
    double pl_intercept_db = 0.0;
    double pl_exponent = 0.0;
    double min_distance_m = 1.0;
};

struct LinkBudgetParams {
    TierLink macro{46.0, 128.1, 37.6, 1.0};
    TierLink pico{30.0, 140.7, 36.7, 1.0};
    TierLink relay{30.0, 140.7, 36.7, 1.0};

    const TierLink& operator[](Tier tier) const;
};

/// Constant per-tier link rates in bytes per second.
struct RateTable {
    double macro_ul = 0.705e6;
    double pico_ul = 0.705e6;
    double relay_ul = 1.8e6;
    double macro_dl = 1.5925e6;
    double pico_dl = 1.5925e6;
    double relay_dl = 4.3e6;

    double uplink(Tier tier) const;
    double downlink(Tier tier) const;
};

struct NetworkNode {
    int id = 0;
    Tier tier = Tier::Macro;
    Point position{};
    double tx_power_dbm = 0.0;
    int max_ues = 0;  // 0 = not limited
};

double pathloss_db(const TierLink& link, double distance_m);
double pathloss_db(const LinkBudgetParams& params, Tier tier, double distance_m);

double rsrp_dbm(double tx_power_dbm, double pathloss_db);

/// RSRP of `node` as seen at `ue`.
double rsrp_at(const LinkBudgetParams& params, const NetworkNode& node, Point ue);

/// Strongest node at `ue`. Exact ties keep `current_serving_id` if it is among
/// the tied nodes, otherwise the lowest node id wins. Throws NoNodes.
const NetworkNode& best_server(Point ue, std::span<const NetworkNode> nodes,
                               const LinkBudgetParams& params,
                               std::optional<int> current_serving_id = std::nullopt);

double uplink_rate(const RateTable& rates, Tier tier);

}  // namespace mrsim
