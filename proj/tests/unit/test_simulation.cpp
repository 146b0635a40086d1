#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "mrsim/experiments.hpp"
#include "mrsim/metrics.hpp"
#include "mrsim/simulation.hpp"
#include "oracles.hpp"

using namespace mrsim;

namespace {

RunTrace run(const ScenarioConfig& c)
{
    Simulation sim(c);
    return sim.run();
}

// Largest number of granted attachments open at once on each relay.
std::map<int, int> peak_load(const RunTrace& trace)
{
    std::map<int, std::vector<std::pair<double, int>>> edges;
    for (const auto& a : trace.attachments) {
        if (!a.decision.granted || !(a.detach_s > a.request_s)) continue;
        edges[a.relay].push_back({a.request_s, +1});
        edges[a.relay].push_back({a.detach_s, -1});
    }
    std::map<int, int> peak;
    for (auto& [relay, list] : edges) {
        std::sort(list.begin(), list.end());  // detaches sort before attaches at equal times
        int open = 0;
        for (const auto& [t, d] : list) {
            open += d;
            peak[relay] = std::max(peak[relay], open);
        }
    }
    return peak;
}

struct JobCheck {
    int events = 0;
    int failures = 0;
};

void check_jobs(const SimEvent&, const RunTrace& trace, void* ctx)
{
    auto* check = static_cast<JobCheck*>(ctx);
    ++check->events;
    for (const auto& job : trace.jobs) {
        const double sum = job.bytes_bypassed + job.bytes_direct + job.bytes_remaining;
        if (std::abs(sum - job.size_bytes) > 1e-6 * job.size_bytes || job.bytes_remaining < 0.0) ++check->failures;
    }
}

}  // namespace

TEST_SUITE("simulation") {

TEST_CASE("serving timeline starts at zero and is ordered per UE")
{
    for (NetworkConfig net : {NetworkConfig::MacroOnly, NetworkConfig::HetNet}) {
        ScenarioConfig c;
        c.sim.network = net;
        const RunTrace t = run(c);
        REQUIRE(t.ues.size() == 15);
        std::vector<double> last(t.ues.size(), -1.0);
        for (const auto& s : t.serving_changes) {
            if (last[s.ue] < 0.0) CHECK(s.time == 0.0);
            CHECK(s.time >= last[s.ue]);
            last[s.ue] = s.time;
        }
        for (double l : last) CHECK(l >= 0.0);
        CHECK(t.end_clock_s == c.sim.horizon_s);
        CHECK(t.events.back().kind == EventKind::SimEnd);
    }
}

TEST_CASE("no grant inside the pico exclusion distance")
{
    ScenarioConfig c;
    c.sim.network = NetworkConfig::HetNet;
    for (double kmh : {5.0, 20.0, 50.0}) {
        c.mobility.speed_kmh = kmh;
        Simulation sim(c);
        const RunTrace t = sim.run();
        const double lane_y = sim.layout().lane_centre_y(c.effective_lane());
        int pico_requests = 0;
        for (const auto& a : t.attachments) {
            if (a.serving_tier != Tier::Pico) continue;
            ++pico_requests;
            const Point pico = t.ues[a.ue].baseline.position;
            const double x = kmh_to_mps(kmh) * (a.request_s - a.relay_arrival_s);
            const double d = std::hypot(x - pico.x, lane_y - pico.y);
            if (d <= c.thresholds.pico_exclusion_m) CHECK_FALSE(a.decision.granted);
        }
        CHECK(pico_requests > 0);
    }
}

TEST_CASE("relay capacity is never exceeded")
{
    ScenarioConfig c;
    c.thresholds.mr_max_ues = 3;
    c.mobility.interarrival_s = 20.0;
    const RunTrace t = run(c);
    for (const auto& [relay, peak] : peak_load(t)) CHECK(peak <= 3);
    const bool denied = std::any_of(t.attachments.begin(), t.attachments.end(),
                                    [](const AttachRecord& a) { return a.decision.reason == AttachReason::NoCapacity; });
    CHECK(denied);
}

TEST_CASE("overlapping relays: one at a time, a follower entering at the edge is weaker")
{
    ScenarioConfig c;
    c.mobility.interarrival_s = 1.0;
    c.mobility.speed_kmh = 50.0;
    c.sim.horizon_s = 120.0;
    const RunTrace t = run(c);
    int while_attached = 0;
    for (int u = 0; u < static_cast<int>(t.ues.size()); ++u) {
        std::vector<const AttachRecord*> granted;
        for (const auto& a : t.attachments) {
            if (a.ue != u) continue;
            if (a.decision.granted) granted.push_back(&a);
            if (a.serving_tier == Tier::Relay) {
                ++while_attached;
                CHECK(a.decision.reason == AttachReason::RsrpNotHigher);
            }
        }
        for (std::size_t i = 1; i < granted.size(); ++i) CHECK(granted[i - 1]->detach_s <= granted[i]->request_s);
    }
    CHECK(while_attached > 0);
}

TEST_CASE("job bytes are conserved after every event")
{
    for (RemainderMode mode : {RemainderMode::AtDeadline, RemainderMode::Continuous}) {
        ScenarioConfig c;
        c.traffic.mode = TrafficMode::Job;
        c.traffic.remainder = mode;
        c.traffic.job_max_delay_s = 1500.0;
        c.sim.network = NetworkConfig::HetNet;
        Simulation sim(c);
        JobCheck check;
        sim.set_observer(check_jobs, &check);
        const RunTrace t = sim.run();
        CHECK(check.events == static_cast<int>(t.events.size()));
        CHECK(check.failures == 0);
        for (const auto& job : t.jobs) CHECK(job.complete());
    }
}

TEST_CASE("job mode agrees with job progress over the recorded passes")
{
    for (double delay : {0.0, 600.0, 1500.0, 2400.0}) {
        ScenarioConfig c;
        c.traffic.mode = TrafficMode::Job;
        c.traffic.job_max_delay_s = delay;
        const RunTrace t = run(c);
        for (int u = 0; u < static_cast<int>(t.ues.size()); ++u) {
            const DelayedJob& job = t.jobs[u];
            const double expected = job_progress(DelayedJob::make(job.size_bytes, delay), c.radio.rates.relay_ul,
                                                 t.pass_windows(u, c.handover.interruption_s));
            CHECK(job.bytes_bypassed / job.size_bytes == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("measured availability equals the closed form on the reference UE")
{
    const ScenarioConfig base;
    for (double minutes : {3.0, 6.0, 9.0}) {
        for (double kmh : {5.0, 10.0, 15.0, 30.0, 50.0}) {
            const ScenarioConfig c = reference_ue_scenario(base, kmh, minutes * 60.0);
            const RunTrace t = run(c);
            REQUIRE(t.ues.size() == 1);
            CHECK(t.ues[0].spot == UeSpot::InBuilding);
            const double closed = availability_ratio(kmh_to_mps(kmh), minutes * 60.0, c);
            CHECK(std::abs(measured_availability(t, 0) - closed) <= 1e-6);
            const double indep = std::min(1.0, oracle::window_s(30.0, oracle::offset(4, 3.2, 10.0), kmh) / (minutes * 60.0));
            CHECK(closed == doctest::Approx(indep).epsilon(1e-12));
        }
    }
}

TEST_CASE("bypassed volume equals availability times rate on the reference UE")
{
    const ScenarioConfig base;
    for (double kmh : {5.0, 15.0, 50.0}) {
        const ScenarioConfig c = reference_ue_scenario(base, kmh, 360.0);
        const RunTrace t = run(c);
        const double a = availability_ratio(kmh_to_mps(kmh), 360.0, c);
        CHECK(mean_bypassed_mb(t) == doctest::Approx(bypassed_traffic(a, 0.16e6, 1.8e6)).epsilon(1e-9));
        CHECK(mean_bypassed_mb(t, 0.0, c.sim.horizon_s) == doctest::Approx(mean_bypassed_mb(t)).epsilon(1e-12));
    }
}

TEST_CASE("attachment time at 50 km/h")
{
    const ScenarioConfig c = reference_ue_scenario(ScenarioConfig{}, 50.0, 360.0);
    const RunTrace t = run(c);
    CHECK(avg_attachment_time(t) == doctest::Approx(3.056).epsilon(1e-3));
    CHECK(avg_attachment_time(t) == doctest::Approx(oracle::window_s(30.0, 21.2, 50.0)).epsilon(1e-9));
    CHECK(t.attachments.size() == 10);
}

TEST_CASE("runs are reproducible")
{
    ScenarioConfig c;
    c.sim.arrival_mode = ArrivalMode::Poisson;
    c.sim.network = NetworkConfig::HetNet;
    const RunTrace a = run(c);
    const RunTrace b = run(c);
    CHECK(a.events == b.events);
    CHECK(a.relay_arrivals == b.relay_arrivals);
    c.sim.seed += 1;
    CHECK(run(c).relay_arrivals != a.relay_arrivals);
}

TEST_CASE("voice UEs are never granted")
{
    ScenarioConfig c;
    c.traffic.voice_share = 0.4;
    const RunTrace t = run(c);
    int voice = 0;
    for (const auto& ue : t.ues) voice += ue.service == ServiceType::Voice ? 1 : 0;
    CHECK(voice == 6);
    for (const auto& a : t.attachments) {
        if (t.ues[a.ue].service == ServiceType::Voice) CHECK_FALSE(a.decision.granted);
    }
}

}  // TEST_SUITE
