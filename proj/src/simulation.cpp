#include "mrsim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "mrsim/error.hpp"

namespace mrsim {

std::size_t RunTrace::count(EventKind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(), [kind](const TraceEntry& e) { return e.kind == kind; }));
}

double RunTrace::attached_time(int ue) const
{
    double total = 0.0;
    for (const auto& a : attachments) {
        if (a.ue == ue) total += a.attached_s();
    }
    return total;
}

std::vector<PassWindow> RunTrace::pass_windows(int ue, double interruption_s) const
{
    std::vector<PassWindow> out;
    for (const auto& a : attachments) {
        if (a.ue != ue || !a.decision.granted) continue;
        // A truncated attachment never paid for its outbound handover.
        const double handovers = a.truncated ? 1.0 : 2.0;
        out.push_back({a.relay_arrival_s, std::max(0.0, a.attached_s() - handovers * interruption_s)});
    }
    return out;
}

int reference_ue(const RunTrace& trace, double segment_length_m)
{
    int best = -1;
    double best_gap = 0.0;
    for (int i = 0; i < static_cast<int>(trace.ues.size()); ++i) {
        if (trace.ues[i].spot != UeSpot::InBuilding) continue;
        const double gap = std::abs(trace.ues[i].position.x - segment_length_m / 2.0);
        if (best < 0 || gap < best_gap) {
            best = i;
            best_gap = gap;
        }
    }
    return best;
}

Simulation::Simulation(ScenarioConfig config) : config_(std::move(config)), layout_(build_layout(config_)) {}

void Simulation::set_observer(EventObserver observer, void* context)
{
    observer_ = observer;
    observer_context_ = context;
}

namespace {

constexpr int kRelayNodeBase = 1000;

struct UeState {
    UeContext ctx;
    int relay = -1;   // relay currently serving the UE
    int record = -1;  // open entry in RunTrace::attachments
    std::uint64_t token = 0;
    std::optional<double> open_since;  // start of the running transfer segment
};

struct RelayLoad {
    int attached = 0;
    double load_bytes_per_s = 0.0;
};

class Run {
public:
    Run(const ScenarioConfig& config, const StreetLayout& layout, EventObserver observer, void* context)
        : c_(config), layout_(layout), observer_(observer), context_(context), rng_(config.sim.seed)
    {
        thresholds_ = c_.attach_thresholds();
        infra_.push_back({0, Tier::Macro, layout_.macro_position, c_.radio.links.macro.tx_power_dbm, 0});
        for (const Point& p : layout_.pico_positions) {
            infra_.push_back({static_cast<int>(infra_.size()), Tier::Pico, p, c_.radio.links.pico.tx_power_dbm, 0});
        }
        job_mode_ = c_.traffic.mode == TrafficMode::Job;
    }

    RunTrace execute()
    {
        trace_.horizon_s = c_.sim.horizon_s;
        setup_ues();
        setup_relays();
        if (job_mode_ && c_.traffic.job_max_delay_s <= horizon()) {
            schedule({c_.traffic.job_max_delay_s, 0, EventKind::JobDeadline});
        }
        if (c_.sim.sample_interval_s > 0.0) {
            schedule({0.0, 0, EventKind::MetricSample});
        }

        while (!queue_.empty()) dispatch(queue_.pop());
        schedule({horizon(), 0, EventKind::SimEnd});
        dispatch(queue_.pop());

        trace_.end_clock_s = queue_.clock();
        trace_.events_scheduled = queue_.scheduled_count();
        trace_.events_processed = queue_.processed_count();
        return std::move(trace_);
    }

private:
    double horizon() const { return c_.sim.horizon_s; }

    void schedule(SimEvent e) { queue_.schedule(e); }

    double user_rate(Tier tier) const
    {
        return std::min(c_.traffic.population.per_user_ul_bytes_per_s, c_.radio.rates.uplink(tier));
    }

    void setup_ues()
    {
        const int n = static_cast<int>(layout_.ue_positions.size());
        const double voice = c_.traffic.voice_share;
        for (int i = 0; i < n; ++i) {
            UeState s;
            s.ctx.id = i;
            s.ctx.position = layout_.ue_positions[i];
            s.ctx.serving = best_server(s.ctx.position, infra_, c_.radio.links);
            const bool is_voice = std::floor((i + 1) * voice) > std::floor(i * voice);
            s.ctx.service = is_voice ? ServiceType::Voice : ServiceType::Data;
            s.open_since = 0.0;
            ues_.push_back(s);

            trace_.ues.push_back({s.ctx.position, layout_.ue_spots[i], s.ctx.service, s.ctx.serving});
            trace_.serving_changes.push_back({i, 0.0, s.ctx.serving.id, s.ctx.serving.tier});
            trace_.ledgers.emplace_back();
            if (job_mode_) {
                trace_.jobs.push_back(DelayedJob::make(c_.traffic.job_size_bytes, c_.traffic.job_max_delay_s));
            }
        }
    }

    void setup_relays()
    {
        const RelaySchedule schedule_cfg = c_.relay_schedule();
        trace_.relay_arrivals = arrivals(schedule_cfg, horizon(), rng_);
        const double lane_y = layout_.lane_centre_y(schedule_cfg.lane_index);
        for (std::size_t r = 0; r < trace_.relay_arrivals.size(); ++r) {
            relays_.push_back({static_cast<int>(r), trace_.relay_arrivals[r], schedule_cfg.speed_mps, lane_y,
                               layout_.segment_length_m});
            loads_.emplace_back();
            schedule({trace_.relay_arrivals[r], 0, EventKind::MrArrival, static_cast<int>(r)});
        }
    }

    void dispatch(const SimEvent& e)
    {
        switch (e.kind) {
        case EventKind::MrArrival: on_arrival(e); break;
        case EventKind::MrEnterCoverage: on_enter(e); break;
        case EventKind::MrExitCoverage: on_exit(e); break;
        case EventKind::AttachRequest: on_request(e); break;
        case EventKind::HandoverComplete: on_handover_complete(e); break;
        case EventKind::JobDeadline: on_deadline(e); break;
        case EventKind::MetricSample: on_sample(e); break;
        case EventKind::SimEnd: on_end(e); break;
        }
        trace_.events.push_back({e.time, e.seq, e.kind, e.relay, e.ue});
        if (observer_ != nullptr) observer_(e, trace_, context_);
    }

    void on_arrival(const SimEvent& e)
    {
        const RelayState& relay = relays_[e.relay];
        for (int u = 0; u < static_cast<int>(ues_.size()); ++u) {
            const auto cover = coverage_interval(relay, ues_[u].ctx.position, layout_.relay_disk);
            if (!cover) continue;
            if (cover->begin <= horizon()) schedule({cover->begin, 0, EventKind::MrEnterCoverage, e.relay, u});
            if (cover->end <= horizon()) schedule({cover->end, 0, EventKind::MrExitCoverage, e.relay, u});
        }
    }

    void on_enter(const SimEvent& e)
    {
        schedule({e.time, 0, EventKind::AttachRequest, e.relay, e.ue});
    }

    NetworkNode relay_node(int r, double t) const
    {
        return {kRelayNodeBase + r, Tier::Relay, relays_[r].position(t), c_.radio.links.relay.tx_power_dbm,
                c_.thresholds.mr_max_ues};
    }

    void on_request(const SimEvent& e)
    {
        UeState& ue = ues_[e.ue];
        const RelayState& relay = relays_[e.relay];
        const NetworkNode mr = relay_node(e.relay, e.time);
        const double mr_rsrp = rsrp_at(c_.radio.links, mr, ue.ctx.position);
        // Overlapping passes: the serving relay has moved since it was chosen.
        const NetworkNode serving = ue.relay >= 0 ? relay_node(ue.relay, e.time) : ue.ctx.serving;
        const double serving_rsrp = rsrp_at(c_.radio.links, serving, ue.ctx.position);
        const bool rsrp_ok = mr_rsrp > serving_rsrp + c_.radio.hysteresis_db;

        RelaySnapshot snap;
        snap.reported_position = relay.position(e.time - c_.thresholds.gps_staleness_s);
        snap.speed_mps = relay.speed_mps;
        snap.attached_ues = loads_[e.relay].attached;
        snap.attached_load_bytes_per_s = loads_[e.relay].load_bytes_per_s;
        const double demand = c_.traffic.population.per_user_ul_bytes_per_s;

        AttachRecord rec;
        rec.ue = e.ue;
        rec.relay = e.relay;
        rec.relay_arrival_s = relay.entry_time_s;
        rec.request_s = e.time;
        rec.decision = handle_attach_request(ue.ctx, snap, thresholds_, rsrp_ok, demand);
        rec.serving_tier = ue.ctx.serving.tier;
        rec.detach_s = e.time;
        trace_.attachments.push_back(rec);
        if (!rec.decision.granted) return;

        close_segment(e.ue, e.time);
        if (ue.relay >= 0) detach(e.ue, e.time, false);
        const double resume = apply_handover(ue.ctx, mr, c_.handover, e.time);
        ue.relay = e.relay;
        ue.record = static_cast<int>(trace_.attachments.size()) - 1;
        loads_[e.relay].attached += 1;
        loads_[e.relay].load_bytes_per_s += demand;
        trace_.serving_changes.push_back({e.ue, e.time, mr.id, Tier::Relay});
        schedule({std::max(resume, e.time), 0, EventKind::HandoverComplete, e.relay, e.ue, ++ue.token});
    }

    void on_exit(const SimEvent& e)
    {
        UeState& ue = ues_[e.ue];
        if (ue.relay != e.relay) return;

        // The outbound handover has to finish before coverage is lost, so its
        // interruption comes out of the relay segment.
        const double leave = std::max(e.time - c_.handover.interruption_s, ue.open_since.value_or(e.time));
        close_segment(e.ue, std::min(leave, e.time));
        on_coverage_exit(ue.ctx, infra_, c_.radio.links, c_.handover, leave);
        detach(e.ue, e.time, false);
        trace_.serving_changes.push_back({e.ue, e.time, ue.ctx.serving.id, ue.ctx.serving.tier});
        schedule({e.time, 0, EventKind::HandoverComplete, -1, e.ue, ++ue.token});
    }

    void detach(int u, double t, bool truncated)
    {
        UeState& ue = ues_[u];
        AttachRecord& rec = trace_.attachments[ue.record];
        rec.detach_s = t;
        rec.truncated = truncated;
        loads_[ue.relay].attached -= 1;
        loads_[ue.relay].load_bytes_per_s -= c_.traffic.population.per_user_ul_bytes_per_s;
        ue.relay = -1;
        ue.record = -1;
    }

    void on_handover_complete(const SimEvent& e)
    {
        UeState& ue = ues_[e.ue];
        if (e.token != ue.token) return;  // superseded by a later handover
        ue.open_since = e.time;
    }

    // Books the transfer of the running segment up to `t` and stops it.
    void close_segment(int u, double t)
    {
        UeState& ue = ues_[u];
        if (!ue.open_since) return;
        const Interval span{*ue.open_since, std::max(t, *ue.open_since)};
        ue.open_since.reset();
        const Tier tier = ue.ctx.serving.tier;
        TransferLedger& ledger = trace_.ledgers[u];

        if (!job_mode_) {
            const Interval one[] = {span};
            integrate_transfer(ledger, one, tier, user_rate(tier));
            return;
        }

        DelayedJob& job = trace_.jobs[u];
        double bytes = 0.0;
        if (tier == Tier::Relay) {
            if (ue.relay >= 0 && relays_[ue.relay].entry_time_s <= job.max_delay_s) {
                bytes = job.bypass(c_.radio.rates.relay_ul * span.length());
            }
        } else if (c_.traffic.remainder == RemainderMode::Continuous) {
            bytes = job.send_direct(c_.radio.rates.uplink(tier) * span.length());
        }
        ledger.add(span, tier, bytes);
    }

    void on_deadline(const SimEvent& e)
    {
        // Relays that arrived by the deadline finish their pass first.
        double flush_at = e.time;
        for (const auto& relay : relays_) {
            if (relay.entry_time_s <= c_.traffic.job_max_delay_s) flush_at = std::max(flush_at, relay.exit_time_s());
        }
        if (flush_at > e.time) {
            if (flush_at <= horizon()) schedule({flush_at, 0, EventKind::JobDeadline});
            return;
        }
        for (int u = 0; u < static_cast<int>(ues_.size()); ++u) {
            DelayedJob& job = trace_.jobs[u];
            const Tier tier = ues_[u].relay >= 0 ? trace_.ues[u].baseline.tier : ues_[u].ctx.serving.tier;
            const double rate = c_.radio.rates.uplink(tier);
            const double bytes = job.send_direct(job.bytes_remaining);
            if (bytes > 0.0) trace_.ledgers[u].add({e.time, e.time + bytes / rate}, tier, bytes);
        }
    }

    void on_sample(const SimEvent& e)
    {
        int served = 0;
        for (const auto& ue : ues_) served += ue.relay >= 0 ? 1 : 0;
        trace_.samples.push_back({e.time, served});
        const double next = e.time + c_.sim.sample_interval_s;
        if (next <= horizon()) schedule({next, 0, EventKind::MetricSample});
    }

    void on_end(const SimEvent& e)
    {
        for (int u = 0; u < static_cast<int>(ues_.size()); ++u) {
            close_segment(u, e.time);
            if (ues_[u].relay >= 0) detach(u, e.time, true);
        }
    }

    const ScenarioConfig& c_;
    const StreetLayout& layout_;
    EventObserver observer_;
    void* context_;
    RngStream rng_;
    Thresholds thresholds_;
    bool job_mode_ = false;

    EventQueue queue_;
    RunTrace trace_;
    std::vector<NetworkNode> infra_;
    std::vector<UeState> ues_;
    std::vector<RelayState> relays_;
    std::vector<RelayLoad> loads_;
};

}  // namespace

RunTrace Simulation::run()
{
    Run run(config_, layout_, observer_, observer_context_);
    return run.execute();
}

}  // namespace mrsim
