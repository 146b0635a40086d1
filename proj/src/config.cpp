#include "mrsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <system_error>

namespace mrsim {

std::string_view to_string(NetworkConfig config)
{
    switch (config) {
    case NetworkConfig::MacroOnly: return "MACRO_ONLY";
    case NetworkConfig::HetNet: return "HETNET";
    }
    return "UNKNOWN";
}

std::vector<double> SweepConfig::default_delays()
{
    std::vector<double> delays;
    for (int m = 0; m <= 90; ++m) delays.push_back(m);
    return delays;
}

RelaySchedule ScenarioConfig::relay_schedule() const
{
    RelaySchedule s;
    s.interarrival_s = mobility.interarrival_s;
    s.first_arrival_s = mobility.first_arrival_s;
    s.speed_mps = kmh_to_mps(mobility.speed_kmh);
    s.lane_index = effective_lane();
    s.mode = sim.arrival_mode;
    return s;
}

Thresholds ScenarioConfig::attach_thresholds() const
{
    Thresholds t;
    t.speed_max_mps = kmh_to_mps(thresholds.speed_max_kmh);
    t.mr_max_ues = thresholds.mr_max_ues;
    t.pico_exclusion_m = thresholds.pico_exclusion_m;
    t.capacity_mode = thresholds.capacity_mode;
    t.mr_capacity_bytes_per_s = thresholds.mr_capacity_bytes_per_s;
    return t;
}

ReferenceDistances ScenarioConfig::reference_distances() const
{
    return {geometry.macro_distance_m, energy.ref_distance_pico_m, energy.ref_distance_mr_m};
}

PerBitTable ScenarioConfig::energy_targets() const
{
    return PerBitTable::from_nanojoules(energy.target_macro_nj, energy.target_pico_nj, energy.target_mr_nj);
}

std::string Violation::to_string() const
{
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    switch (kind) {
    case ViolationKind::ParseError: out += "parse error: "; break;
    case ViolationKind::RangeError: out += "range error: "; break;
    case ViolationKind::UnknownKey: out += "unknown key: "; break;
    }
    if (!key.empty()) out += key + ": ";
    out += message;
    return out;
}

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string format_double(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::optional<double> parse_double(std::string_view s)
{
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s)
{
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

// Text for `stored * scale` that parses back to exactly `stored`.
std::string format_scaled(double stored, double scale)
{
    const double shown = stored * scale;
    double up = shown;
    double down = shown;
    for (int step = 0; step < 4; ++step) {
        for (double candidate : {up, down}) {
            const std::string text = format_double(candidate);
            if (parse_double(text).value_or(NAN) / scale == stored) return text;
        }
        up = std::nextafter(up, INFINITY);
        down = std::nextafter(down, -INFINITY);
    }
    return format_double(shown);
}

struct Key {
    std::string name;
    std::function<std::string(const ScenarioConfig&)> get;
    // Returns an error message, or empty on success.
    std::function<std::string(ScenarioConfig&, std::string_view)> set;
};

Key real(std::string name, std::function<double&(ScenarioConfig&)> field, double scale = 1.0)
{
    auto get = [field, scale](const ScenarioConfig& c) {
        return format_scaled(field(const_cast<ScenarioConfig&>(c)), scale);
    };
    auto set = [field, scale](ScenarioConfig& c, std::string_view v) -> std::string {
        auto x = parse_double(v);
        if (!x) return "expected a finite number, got '" + std::string(v) + "'";
        field(c) = *x / scale;
        return {};
    };
    return {std::move(name), get, set};
}

Key integer(std::string name, std::function<int&(ScenarioConfig&)> field)
{
    auto get = [field](const ScenarioConfig& c) {
        return std::to_string(field(const_cast<ScenarioConfig&>(c)));
    };
    auto set = [field](ScenarioConfig& c, std::string_view v) -> std::string {
        auto x = parse_int<int>(v);
        if (!x) return "expected an integer, got '" + std::string(v) + "'";
        field(c) = *x;
        return {};
    };
    return {std::move(name), get, set};
}

Key boolean(std::string name, std::function<bool&(ScenarioConfig&)> field)
{
    auto get = [field](const ScenarioConfig& c) -> std::string {
        return field(const_cast<ScenarioConfig&>(c)) ? "true" : "false";
    };
    auto set = [field](ScenarioConfig& c, std::string_view v) -> std::string {
        if (v == "true") field(c) = true;
        else if (v == "false") field(c) = false;
        else return "expected true or false, got '" + std::string(v) + "'";
        return {};
    };
    return {std::move(name), get, set};
}

template <typename E>
Key choice(std::string name, std::function<E&(ScenarioConfig&)> field,
           std::vector<std::pair<E, std::string>> names)
{
    auto get = [field, names](const ScenarioConfig& c) -> std::string {
        const E value = field(const_cast<ScenarioConfig&>(c));
        for (const auto& [e, text] : names) {
            if (e == value) return text;
        }
        return "?";
    };
    auto set = [field, names](ScenarioConfig& c, std::string_view v) -> std::string {
        std::string allowed;
        for (const auto& [e, text] : names) {
            if (text == v) {
                field(c) = e;
                return {};
            }
            allowed += (allowed.empty() ? "" : ", ") + text;
        }
        return "expected one of " + allowed + ", got '" + std::string(v) + "'";
    };
    return {std::move(name), get, set};
}

Key list(std::string name, std::function<std::vector<double>&(ScenarioConfig&)> field)
{
    auto get = [field](const ScenarioConfig& c) {
        std::string out;
        for (double x : field(const_cast<ScenarioConfig&>(c))) {
            if (!out.empty()) out += ", ";
            out += format_double(x);
        }
        return out;
    };
    auto set = [field](ScenarioConfig& c, std::string_view v) -> std::string {
        std::vector<double> values;
        std::size_t start = 0;
        while (true) {
            const auto comma = v.find(',', start);
            const std::string item = trim(v.substr(start, comma == std::string_view::npos ? v.npos : comma - start));
            auto x = parse_double(item);
            if (!x) return "expected a comma-separated list of numbers, bad item '" + item + "'";
            values.push_back(*x);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        field(c) = std::move(values);
        return {};
    };
    return {std::move(name), get, set};
}

void tier_keys(std::vector<Key>& keys, const std::string& prefix, std::function<TierLink&(ScenarioConfig&)> link)
{
    keys.push_back(real("radio." + prefix + "_tx_dbm", [link](ScenarioConfig& c) -> double& { return link(c).tx_power_dbm; }));
    keys.push_back(real("radio." + prefix + "_pl_intercept_db", [link](ScenarioConfig& c) -> double& { return link(c).pl_intercept_db; }));
    keys.push_back(real("radio." + prefix + "_pl_exponent", [link](ScenarioConfig& c) -> double& { return link(c).pl_exponent; }));
    keys.push_back(real("radio." + prefix + "_min_distance_m", [link](ScenarioConfig& c) -> double& { return link(c).min_distance_m; }));
}

#define MRSIM_REAL(key, member, ...) real(key, [](ScenarioConfig& c) -> double& { return c.member; } __VA_OPT__(,) __VA_ARGS__)
#define MRSIM_INT(key, member) integer(key, [](ScenarioConfig& c) -> int& { return c.member; })

const std::vector<Key>& registry()
{
    static const std::vector<Key> keys = [] {
        std::vector<Key> k;
        k.push_back(MRSIM_INT("geometry.lane_count", geometry.lane_count));
        k.push_back(MRSIM_REAL("geometry.lane_width_m", geometry.lane_width_m));
        k.push_back(MRSIM_REAL("geometry.pavement_depth_m", geometry.pavement_depth_m));
        k.push_back(MRSIM_REAL("geometry.penetration_depth_m", geometry.penetration_depth_m));
        k.push_back(MRSIM_REAL("geometry.segment_length_m", geometry.segment_length_m));
        k.push_back(MRSIM_REAL("geometry.mr_radius_m", geometry.mr_radius_m));
        k.push_back(MRSIM_REAL("geometry.test_area_m2", geometry.test_area_m2));
        k.push_back(MRSIM_REAL("geometry.mr_area_m2", geometry.mr_area_m2));
        k.push_back(MRSIM_REAL("geometry.macro_distance_m", geometry.macro_distance_m));
        k.push_back(MRSIM_REAL("geometry.pico_lateral_m", geometry.pico_lateral_m));
        k.push_back(MRSIM_INT("geometry.ue_count", geometry.ue_count));
        k.push_back(MRSIM_REAL("geometry.ue_pavement_share", geometry.ue_pavement_share));

        tier_keys(k, "macro", [](ScenarioConfig& c) -> TierLink& { return c.radio.links.macro; });
        tier_keys(k, "pico", [](ScenarioConfig& c) -> TierLink& { return c.radio.links.pico; });
        tier_keys(k, "mr", [](ScenarioConfig& c) -> TierLink& { return c.radio.links.relay; });
        k.push_back(MRSIM_REAL("radio.hysteresis_db", radio.hysteresis_db));
        k.push_back(MRSIM_REAL("radio.macro_ul_bytes_per_s", radio.rates.macro_ul));
        k.push_back(MRSIM_REAL("radio.pico_ul_bytes_per_s", radio.rates.pico_ul));
        k.push_back(MRSIM_REAL("radio.mr_ul_bytes_per_s", radio.rates.relay_ul));
        k.push_back(MRSIM_REAL("radio.macro_dl_bytes_per_s", radio.rates.macro_dl));
        k.push_back(MRSIM_REAL("radio.pico_dl_bytes_per_s", radio.rates.pico_dl));
        k.push_back(MRSIM_REAL("radio.mr_dl_bytes_per_s", radio.rates.relay_dl));

        k.push_back(MRSIM_REAL("mobility.interarrival_s", mobility.interarrival_s));
        k.push_back(MRSIM_REAL("mobility.first_arrival_s", mobility.first_arrival_s));
        k.push_back(MRSIM_REAL("mobility.speed_kmh", mobility.speed_kmh));
        k.push_back(MRSIM_INT("mobility.lane_index", mobility.lane_index));

        k.push_back(MRSIM_REAL("thresholds.speed_max_kmh", thresholds.speed_max_kmh));
        k.push_back(MRSIM_INT("thresholds.mr_max_ues", thresholds.mr_max_ues));
        k.push_back(MRSIM_REAL("thresholds.pico_exclusion_m", thresholds.pico_exclusion_m));
        k.push_back(choice<CapacityMode>("thresholds.capacity_mode",
                                         [](ScenarioConfig& c) -> CapacityMode& { return c.thresholds.capacity_mode; },
                                         {{CapacityMode::Slots, "slots"}, {CapacityMode::Rate, "rate"}}));
        k.push_back(MRSIM_REAL("thresholds.mr_capacity_bytes_per_s", thresholds.mr_capacity_bytes_per_s));
        k.push_back(MRSIM_REAL("thresholds.gps_staleness_s", thresholds.gps_staleness_s));

        k.push_back(MRSIM_REAL("handover.interruption_ms", handover.interruption_s, 1e3));
        k.push_back(MRSIM_REAL("handover.execution_known_ms", handover.execution_known_s, 1e3));
        k.push_back(MRSIM_REAL("handover.execution_unknown_ms", handover.execution_unknown_s, 1e3));

        k.push_back(MRSIM_INT("traffic.active_users", traffic.population.active_users));
        k.push_back(MRSIM_INT("traffic.users_mr_zone", traffic.population.users_in_mr_zone));
        k.push_back(MRSIM_INT("traffic.users_pico", traffic.population.users_pico));
        k.push_back(MRSIM_INT("traffic.users_macro", traffic.population.users_macro));
        k.push_back(MRSIM_REAL("traffic.per_user_ul_mbps_equiv", traffic.population.per_user_ul_bytes_per_s, 1e-6));
        k.push_back(choice<TrafficMode>("traffic.mode", [](ScenarioConfig& c) -> TrafficMode& { return c.traffic.mode; },
                                        {{TrafficMode::FullBuffer, "full_buffer"}, {TrafficMode::Job, "job"}}));
        k.push_back(MRSIM_REAL("traffic.job_size_bytes", traffic.job_size_bytes));
        k.push_back(MRSIM_REAL("traffic.job_max_delay_s", traffic.job_max_delay_s));
        k.push_back(choice<RemainderMode>("traffic.remainder_mode",
                                          [](ScenarioConfig& c) -> RemainderMode& { return c.traffic.remainder; },
                                          {{RemainderMode::AtDeadline, "at_deadline"}, {RemainderMode::Continuous, "continuous"}}));
        k.push_back(MRSIM_REAL("traffic.dl_ul_ratio", traffic.dl_ul_ratio));
        k.push_back(MRSIM_REAL("traffic.voice_share", traffic.voice_share));

        k.push_back(MRSIM_REAL("energy.p0_dbm", energy.power.p0_dbm));
        k.push_back(MRSIM_REAL("energy.alpha", energy.power.alpha));
        k.push_back(MRSIM_REAL("energy.p_max_dbm", energy.power.p_max_dbm));
        k.push_back(MRSIM_REAL("energy.p_base_w", energy.power.p_base_w));
        k.push_back(MRSIM_REAL("energy.k", energy.power.k));
        k.push_back(boolean("energy.calibrate", [](ScenarioConfig& c) -> bool& { return c.energy.calibrate; }));
        k.push_back(MRSIM_REAL("energy.target_per_bit_macro_nj", energy.target_macro_nj));
        k.push_back(MRSIM_REAL("energy.target_per_bit_pico_nj", energy.target_pico_nj));
        k.push_back(MRSIM_REAL("energy.target_per_bit_mr_nj", energy.target_mr_nj));
        k.push_back(MRSIM_REAL("energy.ref_distance_pico_m", energy.ref_distance_pico_m));
        k.push_back(MRSIM_REAL("energy.ref_distance_mr_m", energy.ref_distance_mr_m));

        k.push_back(MRSIM_REAL("sim.horizon_s", sim.horizon_s));
        k.push_back({"sim.seed", [](const ScenarioConfig& c) { return std::to_string(c.sim.seed); },
                     [](ScenarioConfig& c, std::string_view v) -> std::string {
                         auto x = parse_int<std::uint64_t>(v);
                         if (!x) return "expected an unsigned 64-bit integer, got '" + std::string(v) + "'";
                         c.sim.seed = *x;
                         return {};
                     }});
        k.push_back(choice<ArrivalMode>("sim.arrival_mode", [](ScenarioConfig& c) -> ArrivalMode& { return c.sim.arrival_mode; },
                                        {{ArrivalMode::Deterministic, "deterministic"}, {ArrivalMode::Poisson, "poisson"}}));
        k.push_back(choice<NetworkConfig>("sim.network", [](ScenarioConfig& c) -> NetworkConfig& { return c.sim.network; },
                                          {{NetworkConfig::MacroOnly, "macro_only"}, {NetworkConfig::HetNet, "hetnet"}}));
        k.push_back(MRSIM_REAL("sim.sample_interval_s", sim.sample_interval_s));

        auto vec = [](auto member) {
            return [member](ScenarioConfig& c) -> std::vector<double>& { return c.sweep.*member; };
        };
        k.push_back(list("sweep.speeds_kmh", vec(&SweepConfig::speeds_kmh)));
        k.push_back(list("sweep.interarrivals_min", vec(&SweepConfig::interarrivals_min)));
        k.push_back(MRSIM_REAL("sweep.fig4_interarrival_min", sweep.fig4_interarrival_min));
        k.push_back(list("sweep.fig4_speeds_kmh", vec(&SweepConfig::fig4_speeds_kmh)));
        k.push_back(list("sweep.fig5_availability", vec(&SweepConfig::fig5_availability)));
        k.push_back(list("sweep.fig6_delays_min", vec(&SweepConfig::fig6_delays_min)));
        return k;
    }();
    return keys;
}

#undef MRSIM_REAL
#undef MRSIM_INT

const Key* find_key(std::string_view name)
{
    for (const auto& key : registry()) {
        if (key.name == name) return &key;
    }
    return nullptr;
}

class RangeChecker {
public:
    explicit RangeChecker(std::vector<Violation>& out) : out_(out) {}

    void fail(const std::string& key, const std::string& message)
    {
        out_.push_back({ViolationKind::RangeError, 0, key, message});
    }
    void positive(const std::string& key, double v)
    {
        if (!(v > 0.0)) fail(key, "must be > 0, got " + format_double(v));
    }
    void non_negative(const std::string& key, double v)
    {
        if (!(v >= 0.0)) fail(key, "must be >= 0, got " + format_double(v));
    }
    void within(const std::string& key, double v, double lo, double hi)
    {
        if (!(v >= lo && v <= hi)) {
            fail(key, "must lie in [" + format_double(lo) + ", " + format_double(hi) + "], got " + format_double(v));
        }
    }
    void int_within(const std::string& key, long long v, long long lo, long long hi)
    {
        if (v < lo || v > hi) {
            fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + std::to_string(v));
        }
    }
    void list(const std::string& key, const std::vector<double>& values, double lo, double hi, bool open_lo = false)
    {
        if (values.empty()) fail(key, "must not be empty");
        for (double v : values) {
            if (!(open_lo ? v > lo : v >= lo) || !(v <= hi)) {
                fail(key, "item " + format_double(v) + " outside " + (open_lo ? "(" : "[") + format_double(lo) +
                              ", " + format_double(hi) + "]");
                return;
            }
        }
    }

private:
    std::vector<Violation>& out_;
};

}  // namespace

std::vector<Violation> check_ranges(const ScenarioConfig& c)
{
    std::vector<Violation> out;
    RangeChecker r(out);

    const auto& g = c.geometry;
    r.int_within("geometry.lane_count", g.lane_count, 1, 16);
    r.positive("geometry.lane_width_m", g.lane_width_m);
    r.positive("geometry.pavement_depth_m", g.pavement_depth_m);
    r.positive("geometry.penetration_depth_m", g.penetration_depth_m);
    r.positive("geometry.segment_length_m", g.segment_length_m);
    r.positive("geometry.mr_radius_m", g.mr_radius_m);
    r.positive("geometry.test_area_m2", g.test_area_m2);
    r.positive("geometry.mr_area_m2", g.mr_area_m2);
    r.positive("geometry.macro_distance_m", g.macro_distance_m);
    r.non_negative("geometry.pico_lateral_m", g.pico_lateral_m);
    r.int_within("geometry.ue_count", g.ue_count, 1, 10000);
    r.within("geometry.ue_pavement_share", g.ue_pavement_share, 0.0, 1.0);
    if (out.empty()) {
        const double area = g.segment_length_m * (g.lane_count * g.lane_width_m +
                                                  2.0 * (g.pavement_depth_m + g.penetration_depth_m));
        if (std::abs(area - g.test_area_m2) > 0.01 * g.test_area_m2) {
            r.fail("geometry.test_area_m2", "street dimensions give " + format_double(area) + " m^2, more than 1% off");
        }
        const double disk = CoverageDisk{g.mr_radius_m}.area_m2();
        if (std::abs(disk - g.mr_area_m2) > 0.01 * g.mr_area_m2) {
            r.fail("geometry.mr_area_m2", "relay radius gives " + format_double(disk) + " m^2, more than 1% off");
        }
    }

    const std::pair<const char*, const TierLink*> links[] = {
        {"macro", &c.radio.links.macro}, {"pico", &c.radio.links.pico}, {"mr", &c.radio.links.relay}};
    for (const auto& [name, link] : links) {
        const std::string p = std::string("radio.") + name;
        r.within(p + "_tx_dbm", link->tx_power_dbm, -30.0, 60.0);
        r.positive(p + "_pl_exponent", link->pl_exponent);
        r.positive(p + "_min_distance_m", link->min_distance_m);
    }
    r.within("radio.hysteresis_db", c.radio.hysteresis_db, 0.0, 30.0);
    r.positive("radio.macro_ul_bytes_per_s", c.radio.rates.macro_ul);
    r.positive("radio.pico_ul_bytes_per_s", c.radio.rates.pico_ul);
    r.positive("radio.mr_ul_bytes_per_s", c.radio.rates.relay_ul);
    r.positive("radio.macro_dl_bytes_per_s", c.radio.rates.macro_dl);
    r.positive("radio.pico_dl_bytes_per_s", c.radio.rates.pico_dl);
    r.positive("radio.mr_dl_bytes_per_s", c.radio.rates.relay_dl);

    r.positive("mobility.interarrival_s", c.mobility.interarrival_s);
    r.non_negative("mobility.first_arrival_s", c.mobility.first_arrival_s);
    r.within("mobility.speed_kmh", c.mobility.speed_kmh, 1e-3, 300.0);
    r.int_within("mobility.lane_index", c.mobility.lane_index, -1, std::max(g.lane_count - 1, -1));

    r.positive("thresholds.speed_max_kmh", c.thresholds.speed_max_kmh);
    r.int_within("thresholds.mr_max_ues", c.thresholds.mr_max_ues, 0, 100000);
    r.non_negative("thresholds.pico_exclusion_m", c.thresholds.pico_exclusion_m);
    r.positive("thresholds.mr_capacity_bytes_per_s", c.thresholds.mr_capacity_bytes_per_s);
    r.non_negative("thresholds.gps_staleness_s", c.thresholds.gps_staleness_s);

    r.within("handover.interruption_ms", c.handover.interruption_s * 1e3, 0.0, 10000.0);
    r.within("handover.execution_known_ms", c.handover.execution_known_s * 1e3, 0.0, 10000.0);
    r.within("handover.execution_unknown_ms", c.handover.execution_unknown_s * 1e3, 0.0, 10000.0);

    const auto& pop = c.traffic.population;
    r.int_within("traffic.active_users", pop.active_users, 0, 1000000);
    r.int_within("traffic.users_mr_zone", pop.users_in_mr_zone, 0, 1000000);
    r.int_within("traffic.users_pico", pop.users_pico, 0, 1000000);
    r.int_within("traffic.users_macro", pop.users_macro, 0, 1000000);
    if (pop.users_in_mr_zone + pop.users_pico + pop.users_macro != pop.active_users) {
        r.fail("traffic.active_users", "must equal users_mr_zone + users_pico + users_macro");
    }
    r.positive("traffic.per_user_ul_mbps_equiv", pop.per_user_ul_bytes_per_s);
    r.positive("traffic.job_size_bytes", c.traffic.job_size_bytes);
    r.non_negative("traffic.job_max_delay_s", c.traffic.job_max_delay_s);
    r.positive("traffic.dl_ul_ratio", c.traffic.dl_ul_ratio);
    r.within("traffic.voice_share", c.traffic.voice_share, 0.0, 1.0);

    const auto& e = c.energy;
    r.within("energy.alpha", e.power.alpha, 1e-12, 1.0);
    r.within("energy.p_max_dbm", e.power.p_max_dbm, -30.0, 60.0);
    if (!(e.power.p_max_dbm >= e.power.p0_dbm)) r.fail("energy.p_max_dbm", "must be >= energy.p0_dbm");
    r.non_negative("energy.p_base_w", e.power.p_base_w);
    r.non_negative("energy.k", e.power.k);
    r.positive("energy.target_per_bit_macro_nj", e.target_macro_nj);
    r.positive("energy.target_per_bit_pico_nj", e.target_pico_nj);
    r.positive("energy.target_per_bit_mr_nj", e.target_mr_nj);
    r.positive("energy.ref_distance_pico_m", e.ref_distance_pico_m);
    r.positive("energy.ref_distance_mr_m", e.ref_distance_mr_m);

    r.within("sim.horizon_s", c.sim.horizon_s, 0.0, 1e7);
    r.non_negative("sim.sample_interval_s", c.sim.sample_interval_s);

    r.list("sweep.speeds_kmh", c.sweep.speeds_kmh, 0.0, 300.0, true);
    r.list("sweep.interarrivals_min", c.sweep.interarrivals_min, 0.0, 1e5, true);
    r.positive("sweep.fig4_interarrival_min", c.sweep.fig4_interarrival_min);
    r.list("sweep.fig4_speeds_kmh", c.sweep.fig4_speeds_kmh, 0.0, 300.0, true);
    r.list("sweep.fig5_availability", c.sweep.fig5_availability, 0.0, 1.0);
    r.list("sweep.fig6_delays_min", c.sweep.fig6_delays_min, 0.0, 1e5);
    return out;
}

ValidationResult validate(std::string_view text, const std::vector<std::pair<std::string, std::string>>& overrides)
{
    ValidationResult result;
    std::map<std::string, int, std::less<>> seen;

    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            result.violations.push_back({ViolationKind::ParseError, line_no, "", "expected 'section.key = value'"});
            continue;
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const Key* entry = find_key(key);
        if (entry == nullptr) {
            result.violations.push_back({ViolationKind::UnknownKey, line_no, key, "not a recognised key"});
            continue;
        }
        if (auto it = seen.find(key); it != seen.end()) {
            result.violations.push_back({ViolationKind::ParseError, line_no, key,
                                         "duplicate key (first set on line " + std::to_string(it->second) + ")"});
            continue;
        }
        seen.emplace(key, line_no);
        if (value.empty()) {
            result.violations.push_back({ViolationKind::ParseError, line_no, key, "missing value"});
            continue;
        }
        if (std::string err = entry->set(result.config, value); !err.empty()) {
            result.violations.push_back({ViolationKind::ParseError, line_no, key, std::move(err)});
        }
    }

    for (const auto& [key, value] : overrides) {
        const Key* entry = find_key(key);
        if (entry == nullptr) {
            result.violations.push_back({ViolationKind::UnknownKey, 0, key, "not a recognised key (--set)"});
            continue;
        }
        seen.erase(key);
        if (std::string err = entry->set(result.config, trim(value)); !err.empty()) {
            result.violations.push_back({ViolationKind::ParseError, 0, key, err + " (--set)"});
        }
    }

    for (auto& v : check_ranges(result.config)) {
        if (auto it = seen.find(v.key); it != seen.end()) v.line = it->second;
        result.violations.push_back(std::move(v));
    }
    // File order first; violations without a line (overrides, cross-key) last.
    std::stable_sort(result.violations.begin(), result.violations.end(), [](const Violation& a, const Violation& b) {
        const auto rank = [](int line) { return line > 0 ? line : std::numeric_limits<int>::max(); };
        return rank(a.line) < rank(b.line);
    });
    return result;
}

std::string serialize(const ScenarioConfig& config)
{
    std::string out = "# effective scenario\n";
    std::string section;
    for (const auto& key : registry()) {
        const std::string s = key.name.substr(0, key.name.find('.'));
        if (s != section) {
            out += "\n# " + s + "\n";
            section = s;
        }
        out += key.name + " = " + key.get(config) + "\n";
    }
    return out;
}

std::vector<std::string> known_keys()
{
    std::vector<std::string> names;
    for (const auto& key : registry()) names.push_back(key.name);
    return names;
}

}  // namespace mrsim
