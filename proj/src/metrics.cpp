#include "mrsim/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <system_error>
#include <tuple>

#include "mrsim/error.hpp"
#include "mrsim/geometry.hpp"

namespace mrsim {

std::string_view to_string(EnergyConfigLabel label)
{
    switch (label) {
    case EnergyConfigLabel::Macro: return "MACRO";
    case EnergyConfigLabel::Pico: return "PICO";
    case EnergyConfigLabel::MrMacro: return "MR+MACRO";
    case EnergyConfigLabel::MrPico: return "MR+PICO";
    }
    return "UNKNOWN";
}

bool MetricsBundle::empty() const
{
    return fig2.empty() && fig3.empty() && fig4.empty() && fig5.empty() && fig6.empty();
}

void MetricsBundle::merge(const MetricsBundle& other)
{
    fig2.insert(fig2.end(), other.fig2.begin(), other.fig2.end());
    fig3.insert(fig3.end(), other.fig3.begin(), other.fig3.end());
    fig4.insert(fig4.end(), other.fig4.begin(), other.fig4.end());
    fig5.insert(fig5.end(), other.fig5.begin(), other.fig5.end());
    fig6.insert(fig6.end(), other.fig6.begin(), other.fig6.end());
}

void MetricsBundle::sort()
{
    auto by = [](auto key) {
        return [key](const auto& a, const auto& b) { return key(a) < key(b); };
    };
    std::stable_sort(fig2.begin(), fig2.end(),
                     by([](const Fig2Row& r) { return std::make_tuple(r.speed_kmh, to_string(r.config)); }));
    std::stable_sort(fig3.begin(), fig3.end(),
                     by([](const Fig3Row& r) { return std::make_tuple(r.speed_kmh, r.interarrival_min); }));
    std::stable_sort(fig4.begin(), fig4.end(),
                     by([](const Fig4Row& r) { return std::make_tuple(r.availability, to_string(r.config)); }));
    std::stable_sort(fig5.begin(), fig5.end(),
                     by([](const Fig5Row& r) { return std::make_tuple(r.availability, to_string(r.config)); }));
    std::stable_sort(fig6.begin(), fig6.end(),
                     by([](const Fig6Row& r) { return std::make_tuple(r.delay_min, to_string(r.config)); }));
}

double avg_attachment_time(const RunTrace& trace)
{
    if (trace.attachments.empty()) return 0.0;
    double total = 0.0;
    for (const auto& a : trace.attachments) total += a.attached_s();
    return total / static_cast<double>(trace.attachments.size());
}

double availability_ratio(double speed_mps, double interarrival_s, const ScenarioConfig& config)
{
    if (!(interarrival_s > 0.0)) throw OutOfRange("interarrival must be positive");
    const auto& g = config.geometry;
    const double offset = lateral_offset(config.effective_lane() + 1, g.lane_width_m,
                                         g.pavement_depth_m + g.penetration_depth_m);
    if (offset >= g.mr_radius_m) return 0.0;
    const double window = coverage_window(coverage_chord(g.mr_radius_m, offset), speed_mps);
    return std::min(1.0, window / interarrival_s);
}

double measured_availability(const RunTrace& trace, int ue)
{
    if (!(trace.horizon_s > 0.0)) return 0.0;
    return trace.attached_time(ue) / trace.horizon_s;
}

double bypassed_traffic(double availability, double per_user_rate_bytes_per_s, double relay_rate_bytes_per_s)
{
    return availability * std::min(per_user_rate_bytes_per_s, relay_rate_bytes_per_s) * 3600.0 / 1e6;
}

double mean_bypassed_mb(const RunTrace& trace)
{
    if (trace.ledgers.empty()) return 0.0;
    double total = 0.0;
    for (const auto& ledger : trace.ledgers) total += ledger.bytes_on(Tier::Relay);
    return total / static_cast<double>(trace.ledgers.size()) / 1e6;
}

double mean_bypassed_mb(const RunTrace& trace, double begin_s, double end_s)
{
    if (trace.ledgers.empty()) return 0.0;
    double total = 0.0;
    for (const auto& ledger : trace.ledgers) {
        for (const auto& e : ledger.entries) {
            if (e.tier != Tier::Relay) continue;
            const double len = e.interval.length();
            if (!(len > 0.0)) continue;
            const double inside = std::min(e.interval.end, end_s) - std::max(e.interval.begin, begin_s);
            if (inside > 0.0) total += e.bytes * inside / len;
        }
    }
    return total / static_cast<double>(trace.ledgers.size()) / 1e6;
}

std::vector<double> bypass_efficiency_curve(const RunTrace& trace, double job_size_bytes,
                                            double relay_rate_bytes_per_s, double interruption_s,
                                            std::span<const double> delays_s)
{
    std::vector<double> curve(delays_s.size(), 0.0);
    const int n = static_cast<int>(trace.ues.size());
    if (n == 0) return curve;
    for (int u = 0; u < n; ++u) {
        const auto passes = trace.pass_windows(u, interruption_s);
        for (std::size_t i = 0; i < delays_s.size(); ++i) {
            curve[i] += job_progress(DelayedJob::make(job_size_bytes, delays_s[i]), relay_rate_bytes_per_s, passes);
        }
    }
    for (double& v : curve) v /= n;
    return curve;
}

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

template <typename Row, typename Fn>
std::string table(const char* header, const std::vector<Row>& rows, Fn line)
{
    std::string out = header;
    out += '\n';
    for (const auto& r : rows) {
        out += line(r);
        out += '\n';
    }
    return out;
}

}  // namespace

std::vector<CsvFile> render_csv(const MetricsBundle& input)
{
    MetricsBundle b = input;
    b.sort();
    std::vector<CsvFile> files;
    files.push_back({"fig2.csv", table("speed_kmh,config,avg_attach_s", b.fig2, [](const Fig2Row& r) {
                         return num(r.speed_kmh) + "," + std::string(to_string(r.config)) + "," + num(r.avg_attach_s);
                     })});
    files.push_back({"fig3.csv", table("speed_kmh,interarrival_min,availability", b.fig3, [](const Fig3Row& r) {
                         return num(r.speed_kmh) + "," + num(r.interarrival_min) + "," + num(r.availability);
                     })});
    files.push_back({"fig4.csv", table("availability,config,bypassed_mb", b.fig4, [](const Fig4Row& r) {
                         return num(r.availability) + "," + std::string(to_string(r.config)) + "," + num(r.bypassed_mb);
                     })});
    files.push_back({"fig5.csv", table("availability,config,bits_per_joule", b.fig5, [](const Fig5Row& r) {
                         return num(r.availability) + "," + std::string(to_string(r.config)) + "," +
                                num(r.bits_per_joule);
                     })});
    files.push_back({"fig6.csv", table("delay_min,config,fraction_bypassed", b.fig6, [](const Fig6Row& r) {
                         return num(r.delay_min) + "," + std::string(to_string(r.config)) + "," +
                                num(r.fraction_bypassed);
                     })});
    return files;
}

std::vector<std::filesystem::path> write_csv(const MetricsBundle& bundle, const std::filesystem::path& out_dir,
                                             bool include_empty)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    const bool has_rows[] = {!bundle.fig2.empty(), !bundle.fig3.empty(), !bundle.fig4.empty(),
                             !bundle.fig5.empty(), !bundle.fig6.empty()};
    std::vector<std::filesystem::path> written;
    const auto files = render_csv(bundle);
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (!include_empty && !has_rows[i]) continue;
        const auto path = out_dir / files[i].name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << files[i].content;
        out.close();
        if (!out) throw IoError("cannot write " + path.string());
        written.push_back(path);
    }
    return written;
}

}  // namespace mrsim
