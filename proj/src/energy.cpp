#include "mrsim/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mrsim/error.hpp"

namespace mrsim {

double PerBitTable::operator[](Tier tier) const
{
    switch (tier) {
    case Tier::Macro: return macro;
    case Tier::Pico: return pico;
    case Tier::Relay: return relay;
    }
    return macro;
}

PerBitTable PerBitTable::from_nanojoules(double macro_nj, double pico_nj, double relay_nj)
{
    return {macro_nj * 1e-9, pico_nj * 1e-9, relay_nj * 1e-9};
}

const PowerModelParams& TierPowerModels::operator[](Tier tier) const
{
    switch (tier) {
    case Tier::Macro: return macro;
    case Tier::Pico: return pico;
    case Tier::Relay: return relay;
    }
    return macro;
}

TierPowerModels TierPowerModels::uniform(const PowerModelParams& params)
{
    return {params, params, params};
}

double ReferenceDistances::operator[](Tier tier) const
{
    switch (tier) {
    case Tier::Macro: return macro_m;
    case Tier::Pico: return pico_m;
    case Tier::Relay: return relay_m;
    }
    return macro_m;
}

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts)
{
    return 10.0 * std::log10(watts) + 30.0;
}

double tx_power_dbm(const PowerModelParams& params, double pathloss_db)
{
    return std::min(params.p_max_dbm, params.p0_dbm + params.alpha * pathloss_db);
}

double device_power_w(const PowerModelParams& params, double tx_dbm)
{
    return params.p_base_w + params.k * dbm_to_watts(tx_dbm);
}

double energy_for_bytes(double bytes, Tier tier, double distance_m, const TierPowerModels& models,
                        const LinkBudgetParams& links, const RateTable& rates)
{
    if (bytes <= 0.0) return 0.0;
    const PowerModelParams& params = models[tier];
    const double tx = tx_power_dbm(params, pathloss_db(links, tier, distance_m));
    return device_power_w(params, tx) * (bytes / rates.uplink(tier));
}

PerBitTable realized_per_bit(const TierPowerModels& models, const ReferenceDistances& distances,
                             const LinkBudgetParams& links, const RateTable& rates)
{
    auto per_bit = [&](Tier tier) {
        return energy_for_bytes(1.0, tier, distances[tier], models, links, rates) / 8.0;
    };
    return {per_bit(Tier::Macro), per_bit(Tier::Pico), per_bit(Tier::Relay)};
}

TierPowerModels calibrate(const PerBitTable& targets, const PowerModelParams& base,
                          const ReferenceDistances& distances, const LinkBudgetParams& links,
                          const RateTable& rates)
{
    constexpr std::array tiers{Tier::Macro, Tier::Pico, Tier::Relay};

    for (Tier tier : tiers) {
        if (!(targets[tier] > 0.0)) {
            throw Unsatisfiable("per-bit target for " + std::string(to_string(tier)) + " must be positive");
        }
    }
    if (!(targets.relay < targets.macro) || !(targets.pico < targets.macro)) {
        throw Unsatisfiable("relay and pico per-bit targets must both lie below the macro target");
    }

    std::array<double, 3> required{};  // device power needed per tier, W
    std::array<double, 3> open_loop{};  // radiated power under the base p0, W
    for (std::size_t i = 0; i < tiers.size(); ++i) {
        const Tier tier = tiers[i];
        required[i] = targets[tier] * 8.0 * rates.uplink(tier);
        open_loop[i] = dbm_to_watts(tx_power_dbm(base, pathloss_db(links, tier, distances[tier])));
    }

    const auto cheapest = static_cast<std::size_t>(std::min_element(required.begin(), required.end()) - required.begin());
    const auto dearest = static_cast<std::size_t>(std::max_element(required.begin(), required.end()) - required.begin());
    const double p_max_w = dbm_to_watts(base.p_max_dbm);

    double k = 0.0;
    double p_base = required[cheapest];
    if (dearest != cheapest && required[dearest] > required[cheapest]) {
        const double span_w = p_max_w - open_loop[cheapest];
        if (!(span_w > 0.0)) {
            throw Unsatisfiable("open-loop power of the cheapest tier already reaches p_max");
        }
        k = (required[dearest] - required[cheapest]) / span_w;
        p_base = required[cheapest] - k * open_loop[cheapest];
    }
    if (p_base < 0.0) throw Unsatisfiable("targets imply a negative baseline power");

    TierPowerModels out = TierPowerModels::uniform(base);
    for (std::size_t i = 0; i < tiers.size(); ++i) {
        const Tier tier = tiers[i];
        PowerModelParams params = base;
        params.p_base_w = p_base;
        params.k = k;
        double radiated_w = open_loop[i];
        if (k > 0.0) radiated_w = (required[i] - p_base) / k;
        if (!(radiated_w > 0.0)) {
            throw Unsatisfiable("target for " + std::string(to_string(tier)) + " is below the baseline power");
        }
        const double tx_dbm = watts_to_dbm(radiated_w);
        if (tx_dbm > base.p_max_dbm + 1e-9) {
            throw Unsatisfiable("target for " + std::string(to_string(tier)) + " needs more than p_max");
        }
        // Shift p0 so that open-loop control lands exactly on tx_dbm.
        params.p0_dbm = tx_dbm - base.alpha * pathloss_db(links, tier, distances[tier]);
        params.p_max_dbm = std::max(base.p_max_dbm, tx_dbm);
        switch (tier) {
        case Tier::Macro: out.macro = params; break;
        case Tier::Pico: out.pico = params; break;
        case Tier::Relay: out.relay = params; break;
        }
    }
    return out;
}

double ledger_energy_j(const TransferLedger& ledger, const PerBitTable& per_bit)
{
    double joules = 0.0;
    for (const auto& e : ledger.entries) joules += e.bytes * 8.0 * per_bit[e.tier];
    return joules;
}

double savings(const TransferLedger& baseline, const TransferLedger& relay_assisted, const PerBitTable& per_bit)
{
    return ledger_energy_j(baseline, per_bit) - ledger_energy_j(relay_assisted, per_bit);
}

double energy_efficiency(double bits, double joules)
{
    if (!(joules > 0.0)) throw ZeroEnergy("energy efficiency needs a positive energy");
    return bits / joules;
}

}  // namespace mrsim
