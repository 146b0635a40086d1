#include "mrsim/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "mrsim/simulation.hpp"

namespace mrsim {

namespace {

constexpr NetworkConfig kNetworks[] = {NetworkConfig::MacroOnly, NetworkConfig::HetNet};

RunTrace simulate(const ScenarioConfig& config)
{
    Simulation sim(config);
    return sim.run();
}

// Whole interarrival periods needed for a relay to clear the segment.
double warmup_s(const ScenarioConfig& config)
{
    const double transit = config.geometry.segment_length_m / kmh_to_mps(config.mobility.speed_kmh);
    return std::ceil(transit / config.mobility.interarrival_s) * config.mobility.interarrival_s;
}

std::vector<double> minutes_to_seconds(const std::vector<double>& minutes)
{
    std::vector<double> out;
    for (double m : minutes) out.push_back(m * 60.0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Fig6Row> fig6_rows(const RunTrace& trace, const ScenarioConfig& config)
{
    const auto delays = minutes_to_seconds(config.sweep.fig6_delays_min);
    const auto curve = bypass_efficiency_curve(trace, config.traffic.job_size_bytes, config.radio.rates.relay_ul,
                                               config.handover.interruption_s, delays);
    std::vector<Fig6Row> rows;
    for (std::size_t i = 0; i < delays.size(); ++i) {
        rows.push_back({delays[i] / 60.0, config.sim.network, curve[i]});
    }
    return rows;
}

}  // namespace

TierPowerModels energy_models(const ScenarioConfig& config)
{
    if (!config.energy.calibrate) return TierPowerModels::uniform(config.energy.power);
    return calibrate(config.energy_targets(), config.energy.power, config.reference_distances(),
                     config.radio.links, config.radio.rates);
}

PerBitTable energy_per_bit(const ScenarioConfig& config)
{
    return realized_per_bit(energy_models(config), config.reference_distances(), config.radio.links,
                            config.radio.rates);
}

ScenarioConfig reference_ue_scenario(const ScenarioConfig& base, double speed_kmh, double interarrival_s,
                                     double min_horizon_s)
{
    ScenarioConfig c = base;
    c.geometry.ue_count = 1;
    c.geometry.ue_pavement_share = 0.0;
    c.sim.network = NetworkConfig::MacroOnly;
    c.sim.arrival_mode = ArrivalMode::Deterministic;
    c.sim.sample_interval_s = 0.0;
    c.traffic.mode = TrafficMode::FullBuffer;
    c.traffic.voice_share = 0.0;
    c.handover.interruption_s = 0.0;
    c.mobility.speed_kmh = speed_kmh;
    c.mobility.interarrival_s = interarrival_s;
    c.mobility.first_arrival_s = 0.0;
    c.sim.horizon_s = std::ceil(min_horizon_s / interarrival_s) * interarrival_s;
    return c;
}

MetricsBundle run_scenario(const ScenarioConfig& config)
{
    MetricsBundle out;
    if (!(config.sim.horizon_s > 0.0)) return out;

    Simulation sim(config);
    const RunTrace trace = sim.run();
    const double speed = config.mobility.speed_kmh;
    const double availability = availability_ratio(kmh_to_mps(speed), config.mobility.interarrival_s, config);

    out.fig2.push_back({speed, config.sim.network, avg_attachment_time(trace)});
    const int ref = reference_ue(trace, config.geometry.segment_length_m);
    if (ref >= 0) {
        out.fig3.push_back({speed, config.mobility.interarrival_s / 60.0, measured_availability(trace, ref)});
    }
    out.fig4.push_back({availability, config.sim.network, mean_bypassed_mb(trace)});
    out.fig6 = fig6_rows(trace, config);
    out.sort();
    return out;
}

MetricsBundle fig2_attachment_time(const ScenarioConfig& config)
{
    MetricsBundle out;
    for (double speed : config.sweep.speeds_kmh) {
        for (NetworkConfig network : kNetworks) {
            ScenarioConfig c = config;
            c.mobility.speed_kmh = speed;
            c.sim.network = network;
            c.traffic.mode = TrafficMode::FullBuffer;
            out.fig2.push_back({speed, network, avg_attachment_time(simulate(c))});
        }
    }
    out.sort();
    return out;
}

MetricsBundle fig3_availability(const ScenarioConfig& config)
{
    MetricsBundle out;
    for (double minutes : config.sweep.interarrivals_min) {
        for (double speed : config.sweep.speeds_kmh) {
            const ScenarioConfig c = reference_ue_scenario(config, speed, minutes * 60.0, config.sim.horizon_s);
            out.fig3.push_back({speed, minutes, measured_availability(simulate(c), 0)});
        }
    }
    out.sort();
    return out;
}

MetricsBundle fig4_bypassed_traffic(const ScenarioConfig& config)
{
    MetricsBundle out;
    const double interarrival = config.sweep.fig4_interarrival_min * 60.0;
    for (double speed : config.sweep.fig4_speeds_kmh) {
        for (NetworkConfig network : kNetworks) {
            ScenarioConfig c = config;
            c.mobility.speed_kmh = speed;
            c.mobility.interarrival_s = interarrival;
            c.mobility.first_arrival_s = 0.0;
            c.sim.arrival_mode = ArrivalMode::Deterministic;
            c.sim.network = network;
            c.traffic.mode = TrafficMode::FullBuffer;
            // Measure one busy hour after every relay present could have
            // entered, so slow relays are not cut off by the horizon.
            const double begin = warmup_s(c);
            c.sim.horizon_s = begin + config.sim.horizon_s;
            const double mb = mean_bypassed_mb(simulate(c), begin, c.sim.horizon_s) * 3600.0 / config.sim.horizon_s;
            out.fig4.push_back({availability_ratio(kmh_to_mps(speed), interarrival, c), network, mb});
        }
    }
    out.sort();
    return out;
}

MetricsBundle fig5_energy_efficiency(const ScenarioConfig& config)
{
    MetricsBundle out;
    const PerBitTable per_bit = energy_per_bit(config);

    for (NetworkConfig network : kNetworks) {
        ScenarioConfig c = config;
        c.sim.network = network;
        c.traffic.mode = TrafficMode::FullBuffer;
        const RunTrace trace = simulate(c);

        const std::size_t n = trace.ues.size();
        std::vector<double> requests(n, 0.0);
        std::vector<double> grants(n, 0.0);
        for (const auto& a : trace.attachments) {
            requests[a.ue] += 1.0;
            if (a.decision.granted) grants[a.ue] += 1.0;
        }

        const EnergyConfigLabel plain = network == NetworkConfig::MacroOnly ? EnergyConfigLabel::Macro
                                                                            : EnergyConfigLabel::Pico;
        const EnergyConfigLabel assisted = network == NetworkConfig::MacroOnly ? EnergyConfigLabel::MrMacro
                                                                               : EnergyConfigLabel::MrPico;
        for (double a : config.sweep.fig5_availability) {
            // Every UE offers the same volume, so bits per joule is the
            // inverse of the mean per-bit energy.
            double plain_j = 0.0;
            double assisted_j = 0.0;
            for (std::size_t u = 0; u < n; ++u) {
                const double base = per_bit[trace.ues[u].baseline.tier];
                const double share = requests[u] > 0.0 ? a * grants[u] / requests[u] : 0.0;
                plain_j += base;
                assisted_j += share * per_bit.relay + (1.0 - share) * base;
            }
            const double bits = static_cast<double>(n);
            out.fig5.push_back({a, plain, energy_efficiency(bits, plain_j)});
            out.fig5.push_back({a, assisted, energy_efficiency(bits, assisted_j)});
        }
    }
    out.sort();
    return out;
}

MetricsBundle fig6_delayed_transfers(const ScenarioConfig& config)
{
    MetricsBundle out;
    double longest = 0.0;
    for (double m : config.sweep.fig6_delays_min) longest = std::max(longest, m * 60.0);

    for (NetworkConfig network : kNetworks) {
        ScenarioConfig c = config;
        c.sim.network = network;
        c.traffic.mode = TrafficMode::FullBuffer;
        const double transit = c.geometry.segment_length_m / kmh_to_mps(c.mobility.speed_kmh);
        c.sim.horizon_s = std::max(c.sim.horizon_s, longest + std::ceil(transit));
        const auto rows = fig6_rows(simulate(c), c);
        out.fig6.insert(out.fig6.end(), rows.begin(), rows.end());
    }
    out.sort();
    return out;
}

MetricsBundle full_sweep(const ScenarioConfig& config)
{
    MetricsBundle out;
    out.merge(fig2_attachment_time(config));
    out.merge(fig3_availability(config));
    out.merge(fig4_bypassed_traffic(config));
    out.merge(fig5_energy_efficiency(config));
    out.merge(fig6_delayed_transfers(config));
    out.sort();
    return out;
}

}  // namespace mrsim
