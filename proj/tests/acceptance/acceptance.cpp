// Prints one PASS/FAIL line per acceptance criterion. Exit status is the
// number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mrsim/attachment.hpp"
#include "mrsim/energy.hpp"
#include "mrsim/engine.hpp"
#include "mrsim/experiments.hpp"
#include "mrsim/geometry.hpp"
#include "mrsim/metrics.hpp"
#include "mrsim/simulation.hpp"
#include "mrsim/traffic.hpp"
#include "oracles.hpp"

using namespace mrsim;

namespace {

namespace tol {
constexpr double kChordM = 0.1;
constexpr double kWindowS = 0.01;
constexpr double kFig3Ceiling = 0.02;
constexpr double kFig3Relative = 1e-6;
constexpr double kEnergyJ = 0.01;       // relative
constexpr double kSavingsJ = 0.02;      // relative
constexpr double kFig6DelayLo = 45.0;   // minutes
constexpr double kFig6DelayHi = 70.0;
constexpr double kFig6Pico = 0.59;
constexpr double kFig6PicoBand = 0.10;
constexpr double kFig4Linearity = 0.05;  // spread of volume/availability below saturation
constexpr double kFig4LinearRange = 0.5;
constexpr double kFig5RelativeGap = 0.5;
}  // namespace tol

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

bool close_rel(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

Outcome geometry_anchors()
{
    Outcome o;
    const double off = lateral_offset(4, 3.2, 10.0);
    const double chord = coverage_chord(30.0, off);
    const double window = coverage_window(chord, kmh_to_mps(50.0));
    o.require(off == 21.2, fmt("offset %.17g != 21.2", off));
    o.require(std::abs(chord - 42.4) <= tol::kChordM, fmt("chord %.6g", chord));
    o.require(std::abs(window - 3.05) <= tol::kWindowS, fmt("window %.6g s", window));
    o.detail = o.pass ? fmt("offset %.4g m, chord %.4g m, window %.4g s", off, chord, window) : o.detail;
    return o;
}

Outcome fig3_claim()
{
    Outcome o;
    ScenarioConfig c;
    c.sweep.interarrivals_min = {9};
    const auto b = fig3_availability(c);
    double worst_rel = 0.0;
    double max_above_10 = 0.0;
    for (const auto& r : b.fig3) {
        const ScenarioConfig ref = reference_ue_scenario(c, r.speed_kmh, 540.0, c.sim.horizon_s);
        const double closed = availability_ratio(kmh_to_mps(r.speed_kmh), 540.0, ref);
        const double rel = std::abs(r.availability - closed) / closed;
        worst_rel = std::max(worst_rel, rel);
        o.require(rel <= tol::kFig3Relative, fmt("%g km/h: sim %.9g vs closed %.9g", r.speed_kmh, r.availability, closed));
        if (r.speed_kmh > 10.0) {
            max_above_10 = std::max(max_above_10, r.availability);
            o.require(r.availability < tol::kFig3Ceiling, fmt("%g km/h: availability %.4g", r.speed_kmh, r.availability));
        }
    }
    o.require(b.fig3.size() == c.sweep.speeds_kmh.size(), "missing rows");
    if (o.pass) o.detail = fmt("max availability above 10 km/h %.4g, worst rel error %.2g", max_above_10, worst_rel);
    return o;
}

Outcome attach_decision_oracle()
{
    Outcome o;
    const double limit = 13.5;
    int cases = 0;
    int checks = 0;
    const NetworkNode macro{0, Tier::Macro, {75.0, -250.0}, 46.0, 0};
    const NetworkNode pico{1, Tier::Pico, {0.0, 0.0}, 30.0, 0};
    for (bool via_pico : {false, true}) {
        const std::vector<double> dists = via_pico ? std::vector<double>{30.0, 31.0} : std::vector<double>{31.0};
        for (bool data : {true, false}) {
            for (double speed : {limit, 14.0}) {
                for (int attached : {9, 10}) {
                    for (double dist : dists) {
                        ++cases;
                        const oracle::AttachCase k{via_pico, data, speed, limit, 10, attached, dist, 30.0};
                        Thresholds th;
                        th.speed_max_mps = limit;
                        th.mr_max_ues = 10;
                        th.pico_exclusion_m = 30.0;
                        const UeContext ue{0, {40.0, 0.0}, via_pico ? pico : macro,
                                           data ? ServiceType::Data : ServiceType::Voice};
                        const RelaySnapshot r{{dist, 0.0}, speed, attached, 0.0};
                        for (bool rsrp : {true, false}) {
                            ++checks;
                            const auto got = handle_attach_request(ue, r, th, rsrp);
                            const std::string want = oracle::attach_decision(k, rsrp);
                            o.require(std::string(to_string(got.reason)) == want &&
                                          got.granted == (want == "GRANTED"),
                                      "case " + std::to_string(cases) + ": got " + std::string(to_string(got.reason)) +
                                          ", want " + want);
                        }
                    }
                }
            }
        }
    }
    o.require(cases == 24, "enumerated " + std::to_string(cases) + " cases");
    if (o.pass) o.detail = std::to_string(cases) + " combinations, " + std::to_string(checks) + " decisions";
    return o;
}

struct ConservationProbe {
    long long events = 0;
    long long failures = 0;
};

void probe_conservation(const SimEvent&, const RunTrace& trace, void* ctx)
{
    auto* p = static_cast<ConservationProbe*>(ctx);
    ++p->events;
    for (const auto& job : trace.jobs) {
        const double sum = job.bytes_bypassed + job.bytes_direct + job.bytes_remaining;
        if (std::abs(sum - job.size_bytes) > 1e-9 * job.size_bytes) ++p->failures;
    }
}

Outcome traffic_anchors()
{
    Outcome o;
    TransferLedger ledger;
    const Interval one[] = {{0.0, 1.0}};
    const double moved = integrate_transfer(ledger, one, Tier::Relay, ScenarioConfig{}.radio.rates.relay_ul);
    o.require(moved == 1.8e6, fmt("1 s attachment moved %.9g bytes", moved));
    const double hour = offered_bytes(0.16e6, 3600.0);
    o.require(std::abs(hour - 576e6) <= 1e-6, fmt("busy hour %.9g bytes", hour));

    RngStream rng(20240601);
    ConservationProbe probe;
    for (int trial = 0; trial < 20; ++trial) {
        ScenarioConfig c;
        c.sim.seed = rng.next_u64();
        c.sim.arrival_mode = ArrivalMode::Poisson;
        c.sim.network = trial % 2 == 0 ? NetworkConfig::MacroOnly : NetworkConfig::HetNet;
        c.traffic.mode = TrafficMode::Job;
        c.traffic.remainder = trial % 3 == 0 ? RemainderMode::Continuous : RemainderMode::AtDeadline;
        c.traffic.job_max_delay_s = 60.0 * std::floor(rng.uniform01() * 60.0);
        c.mobility.speed_kmh = 5.0 + 45.0 * rng.uniform01();
        c.mobility.interarrival_s = 30.0 + 600.0 * rng.uniform01();
        Simulation sim(c);
        sim.set_observer(probe_conservation, &probe);
        sim.run();
    }
    o.require(probe.events > 0 && probe.failures == 0,
              fmt("%g conservation failures over %g events", static_cast<double>(probe.failures),
                  static_cast<double>(probe.events)));
    if (o.pass) {
        o.detail = fmt("1.8 MB per second attached, %g MB busy hour, conservation held over %g events", hour / 1e6,
                       static_cast<double>(probe.events));
    }
    return o;
}

Outcome energy_calibration()
{
    Outcome o;
    const ScenarioConfig c;
    const TierPowerModels m = energy_models(c);
    const auto d = c.reference_distances();
    const double pico_j = energy_for_bytes(26e6 / 8.0, Tier::Pico, d.pico_m, m, c.radio.links, c.radio.rates);
    const double macro_j = energy_for_bytes(22.5e6 / 8.0, Tier::Macro, d.macro_m, m, c.radio.links, c.radio.rates);
    o.require(close_rel(pico_j, 1.57, tol::kEnergyJ), fmt("26 Mbit via pico costs %.5g J", pico_j));
    o.require(close_rel(macro_j, 1.57, tol::kEnergyJ), fmt("22.5 Mbit via macro costs %.5g J", macro_j));

    const PerBitTable per_bit = energy_per_bit(c);
    TransferLedger baseline;
    baseline.add({0.0, 1.0}, Tier::Macro, 100e6);
    TransferLedger bypassed;
    bypassed.add({0.0, 1.0}, Tier::Relay, 100e6);
    const double saved = savings(baseline, bypassed, per_bit);
    o.require(close_rel(saved, 1.57, tol::kSavingsJ), fmt("100 MB bypass saves %.5g J", saved));
    if (o.pass) o.detail = fmt("pico %.4g J, macro %.4g J, saving %.4g J", pico_j, macro_j, saved);
    return o;
}

Outcome fig6_band()
{
    Outcome o;
    const auto b = fig6_delayed_transfers(ScenarioConfig{});
    double full_at = -1.0;
    for (const auto& r : b.fig6) {
        if (r.config == NetworkConfig::MacroOnly && r.fraction_bypassed >= 1.0) {
            full_at = r.delay_min;
            break;
        }
    }
    o.require(full_at >= 0.0, "macro+MR never reaches 1.0");
    if (!o.pass) return o;
    double pico = -1.0;
    for (const auto& r : b.fig6) {
        if (r.config == NetworkConfig::HetNet && r.delay_min == full_at) pico = r.fraction_bypassed;
    }
    o.require(full_at >= tol::kFig6DelayLo && full_at <= tol::kFig6DelayHi, fmt("macro+MR full at %g min", full_at));
    o.require(std::abs(pico - tol::kFig6Pico) <= tol::kFig6PicoBand, fmt("pico fraction %.4g at %g min", pico, full_at));
    if (o.pass) o.detail = fmt("macro+MR reaches 1.0 at %g min, pico configuration %.4g there", full_at, pico);
    return o;
}

Outcome curve_shapes()
{
    Outcome o;
    const ScenarioConfig c;

    const auto f2 = fig2_attachment_time(c);
    for (NetworkConfig net : {NetworkConfig::MacroOnly, NetworkConfig::HetNet}) {
        double prev = INFINITY;
        for (const auto& r : f2.fig2) {
            if (r.config != net) continue;
            o.require(r.avg_attach_s < prev, fmt("fig2 not decreasing at %g km/h", r.speed_kmh));
            prev = r.avg_attach_s;
        }
    }
    for (std::size_t i = 0; i + 1 < f2.fig2.size(); i += 2) {
        // Sorted rows pair HETNET then MACRO_ONLY at each speed.
        o.require(f2.fig2[i].config == NetworkConfig::HetNet && f2.fig2[i + 1].config == NetworkConfig::MacroOnly &&
                      f2.fig2[i].avg_attach_s <= f2.fig2[i + 1].avg_attach_s,
                  fmt("fig2 HETNET above MACRO_ONLY at %g km/h", f2.fig2[i].speed_kmh));
    }

    const auto f4 = fig4_bypassed_traffic(c);
    double top[2] = {0.0, 0.0};
    for (NetworkConfig net : {NetworkConfig::MacroOnly, NetworkConfig::HetNet}) {
        double lo = INFINITY;
        double hi = 0.0;
        for (const auto& r : f4.fig4) {
            if (r.config != net) continue;
            top[static_cast<int>(net)] = std::max(top[static_cast<int>(net)], r.bypassed_mb);
            if (r.availability <= 0.0 || r.availability > tol::kFig4LinearRange) continue;
            lo = std::min(lo, r.bypassed_mb / r.availability);
            hi = std::max(hi, r.bypassed_mb / r.availability);
        }
        o.require(hi > 0.0 && hi / lo - 1.0 <= tol::kFig4Linearity,
                  std::string("fig4 ") + std::string(to_string(net)) + fmt(" slope spread %.4g", hi / lo - 1.0));
    }
    o.require(top[1] < top[0], fmt("fig4 HETNET ceiling %.4g not below MACRO_ONLY %.4g", top[1], top[0]));
    for (std::size_t i = 0; i + 1 < f4.fig4.size(); i += 2) {
        o.require(f4.fig4[i].bypassed_mb < f4.fig4[i + 1].bypassed_mb,
                  fmt("fig4 HETNET not below MACRO_ONLY at availability %.4g", f4.fig4[i].availability));
    }

    const auto f5 = fig5_energy_efficiency(c);
    auto series = [&](EnergyConfigLabel l) {
        std::vector<std::pair<double, double>> s;
        for (const auto& r : f5.fig5) {
            if (r.config == l) s.push_back({r.availability, r.bits_per_joule});
        }
        return s;
    };
    for (EnergyConfigLabel l : {EnergyConfigLabel::Macro, EnergyConfigLabel::Pico, EnergyConfigLabel::MrMacro,
                                EnergyConfigLabel::MrPico}) {
        const auto s = series(l);
        for (std::size_t i = 1; i < s.size(); ++i) {
            o.require(s[i].second >= s[i - 1].second, fmt("fig5 decreasing at availability %g", s[i].first));
        }
    }
    auto gap = [&](double a) {
        double mm = 0.0;
        double mp = 0.0;
        for (const auto& r : f5.fig5) {
            if (r.availability != a) continue;
            if (r.config == EnergyConfigLabel::MrMacro) mm = r.bits_per_joule;
            if (r.config == EnergyConfigLabel::MrPico) mp = r.bits_per_joule;
        }
        return std::pair{std::abs(mp - mm), std::abs(mp - mm) / std::max(mp, mm)};
    };
    const auto [g1, r1] = gap(0.1);
    const auto [g5, r5] = gap(0.5);
    o.require(g5 < g1, fmt("fig5 gap at 0.5 (%.4g) not below gap at 0.1 (%.4g)", g5, g1));
    o.require(r5 < tol::kFig5RelativeGap, fmt("fig5 relative gap at 0.5 is %.4g", r5));
    if (o.pass) o.detail = fmt("fig5 gap %.4g at 0.1, %.4g at 0.5 bits/J", g1, g5);
    return o;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism()
{
    Outcome o;
    ScenarioConfig c;
    c.sim.arrival_mode = ArrivalMode::Poisson;
    c.sim.seed = 424242;
    const auto root = std::filesystem::temp_directory_path() / "mrsim_acceptance";
    std::filesystem::remove_all(root);
    const auto first = write_csv(full_sweep(c), root / "a");
    const auto second = write_csv(full_sweep(c), root / "b");
    o.require(first.size() == 5 && second.size() == 5, "expected five CSV files per run");
    std::size_t bytes = 0;
    for (std::size_t i = 0; i < std::min(first.size(), second.size()); ++i) {
        const std::string a = slurp(first[i]);
        o.require(a == slurp(second[i]), first[i].filename().string() + " differs");
        bytes += a.size();
    }
    std::filesystem::remove_all(root);
    if (o.pass) o.detail = std::to_string(bytes) + " bytes identical across two runs";
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    const Criterion criteria[] = {
        {"geometry anchors", geometry_anchors},
        {"fig3 availability claim", fig3_claim},
        {"attach decision oracle equivalence", attach_decision_oracle},
        {"traffic anchors", traffic_anchors},
        {"energy calibration", energy_calibration},
        {"fig6 delay band", fig6_band},
        {"fig2/4/5 shape properties", curve_shapes},
        {"determinism", determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("threw: ") + e.what();
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %s: %s (%.0f ms)\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), ms);
        failures += o.pass ? 0 : 1;
    }
    return failures;
}
