#pragma once

#include "mrsim/config.hpp"
#include "mrsim/energy.hpp"
#include "mrsim/metrics.hpp"

namespace mrsim {

/// Runs one scenario and reports the metrics it yields. A zero horizon gives
/// an empty bundle.
MetricsBundle run_scenario(const ScenarioConfig& config);

MetricsBundle fig2_attachment_time(const ScenarioConfig& config);
MetricsBundle fig3_availability(const ScenarioConfig& config);
MetricsBundle fig4_bypassed_traffic(const ScenarioConfig& config);
MetricsBundle fig5_energy_efficiency(const ScenarioConfig& config);
MetricsBundle fig6_delayed_transfers(const ScenarioConfig& config);
MetricsBundle full_sweep(const ScenarioConfig& config);

/// Power models for the scenario: calibrated when energy.calibrate is set,
/// the configured parameters otherwise.
TierPowerModels energy_models(const ScenarioConfig& config);

/// Per-bit table implied by `energy_models` at the reference distances.
PerBitTable energy_per_bit(const ScenarioConfig& config);

/// Scenario used for availability points: one in-building UE mid-segment,
/// macro only, no handover interruption, horizon a whole number of
/// interarrival periods covering at least `min_horizon_s`.
ScenarioConfig reference_ue_scenario(const ScenarioConfig& base, double speed_kmh,
                                     double interarrival_s, double min_horizon_s = 3600.0);

}  // namespace mrsim
