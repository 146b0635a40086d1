#pragma once

#include "mrsim/radio.hpp"
#include "mrsim/traffic.hpp"

namespace mrsim {

/// Affine UE power model with open-loop uplink power control.
struct PowerModelParams {
    double p0_dbm = -78.0;
    double alpha = 0.8;
    double p_max_dbm = 23.0;
    double p_base_w = 1.0;
    double k = 5.0;
};

/// Energy per transmitted bit, per tier, in joules.
struct PerBitTable {
    double macro = 0.0;
    double pico = 0.0;
    double relay = 0.0;

    double operator[](Tier tier) const;
    static PerBitTable from_nanojoules(double macro_nj, double pico_nj, double relay_nj);
};

/// Per-tier power models. When produced by calibrate(), p_base and k are
/// shared and only p0 differs between tiers.
struct TierPowerModels {
    PowerModelParams macro{};
    PowerModelParams pico{};
    PowerModelParams relay{};

    const PowerModelParams& operator[](Tier tier) const;
    static TierPowerModels uniform(const PowerModelParams& params);
};

/// UE-to-node distances at which the per-bit targets are defined.
struct ReferenceDistances {
    double macro_m = 250.0;
    double pico_m = 75.0;
    double relay_m = 21.2;

    double operator[](Tier tier) const;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

double tx_power_dbm(const PowerModelParams& params, double pathloss_db);
double device_power_w(const PowerModelParams& params, double tx_dbm);

double energy_for_bytes(double bytes, Tier tier, double distance_m, const TierPowerModels& models,
                        const LinkBudgetParams& links, const RateTable& rates);

/// Per-bit energies realised at the reference distances.
PerBitTable realized_per_bit(const TierPowerModels& models, const ReferenceDistances& distances,
                             const LinkBudgetParams& links, const RateTable& rates);

/// Fits the device model to per-bit targets.
///
/// The cheapest tier (lowest required device power) keeps its open-loop
/// transmit power and the most expensive one transmits at p_max; those two
/// points fix the shared baseline and slope. Each tier's p0 is then shifted
/// so its realised device power meets its target. Throws Unsatisfiable when
/// the targets are non-positive, when relay or pico is not cheaper per bit
/// than macro, or when no non-negative baseline fits under p_max.
TierPowerModels calibrate(const PerBitTable& targets, const PowerModelParams& base,
                          const ReferenceDistances& distances, const LinkBudgetParams& links,
                          const RateTable& rates);

double ledger_energy_j(const TransferLedger& ledger, const PerBitTable& per_bit);

/// Energy saved by the relay-assisted assignment relative to the baseline.
double savings(const TransferLedger& baseline, const TransferLedger& relay_assisted,
               const PerBitTable& per_bit);

/// Bits per joule. Throws ZeroEnergy unless `joules` > 0.
double energy_efficiency(double bits, double joules);

}  // namespace mrsim
