// Command-line front end: scenario validation, single runs, figure sweeps and
// energy calibration.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mrsim/config.hpp"
#include "mrsim/energy.hpp"
#include "mrsim/error.hpp"
#include "mrsim/experiments.hpp"
#include "mrsim/metrics.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string out_dir;
    std::string seed;
    std::vector<std::string> sets;
};

void fail(const std::string& message)
{
    std::fprintf(stderr, "mrsim: %s\n", message.c_str());
}

std::string default_out_dir()
{
    if (const char* env = std::getenv("MRSIM_OUT_DIR"); env != nullptr && *env != '\0') return env;
    return "out";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mrsim::IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Returns the validated config, or nothing after printing every violation.
std::optional<mrsim::ScenarioConfig> load(const Options& opt)
{
    std::vector<std::pair<std::string, std::string>> overrides;
    for (const auto& s : opt.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            fail("--set expects key=value, got '" + s + "'");
            return std::nullopt;
        }
        overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    if (!opt.seed.empty()) overrides.emplace_back("sim.seed", opt.seed);

    const std::string text = opt.config_path.empty() ? std::string() : read_file(opt.config_path);
    auto result = mrsim::validate(text, overrides);
    if (!result.ok()) {
        const std::string where = opt.config_path.empty() ? "<defaults>" : opt.config_path;
        for (const auto& v : result.violations) fail(where + ": " + v.to_string());
        return std::nullopt;
    }
    return result.config;
}

void write_effective(const mrsim::ScenarioConfig& config, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    const auto path = dir / "effective_config.scn";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << mrsim::serialize(config);
    out.close();
    if (!out) throw mrsim::IoError("cannot write " + path.string());
}

int emit(const mrsim::ScenarioConfig& config, const Options& opt, const mrsim::MetricsBundle& bundle,
         bool include_empty)
{
    const std::filesystem::path dir = opt.out_dir;
    write_effective(config, dir);
    for (const auto& path : mrsim::write_csv(bundle, dir, include_empty)) {
        std::printf("wrote %s\n", path.string().c_str());
    }
    return 0;
}

void print_model(const char* tier, const mrsim::PowerModelParams& p)
{
    std::printf("%-5s p0_dbm=%.6g alpha=%.6g p_max_dbm=%.6g p_base_w=%.6g k=%.6g\n", tier, p.p0_dbm, p.alpha,
                p.p_max_dbm, p.p_base_w, p.k);
}

int calibrate_energy(const mrsim::ScenarioConfig& config)
{
    const auto models = mrsim::energy_models(config);
    print_model("MACRO", models.macro);
    print_model("PICO", models.pico);
    print_model("MR", models.relay);
    const auto per_bit = mrsim::energy_per_bit(config);
    std::printf("per_bit_nj MACRO=%.6g PICO=%.6g MR=%.6g\n", per_bit.macro * 1e9, per_bit.pico * 1e9,
                per_bit.relay * 1e9);
    return 0;
}

void add_common(CLI::App* cmd, Options& opt)
{
    cmd->add_option("--config,-c", opt.config_path, "Scenario file (defaults apply when omitted)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out,-o", opt.out_dir, "Output directory (default $MRSIM_OUT_DIR or ./out)");
    cmd->add_option("--seed", opt.seed, "Override sim.seed");
    cmd->add_option("--set", opt.sets, "Override one key, key=value (repeatable)")->take_all();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mobile relay uplink bypassing simulator"};
    app.require_subcommand(1);

    Options opt;
    opt.out_dir = default_out_dir();

    using Action = std::function<int(const mrsim::ScenarioConfig&)>;
    std::vector<std::pair<CLI::App*, Action>> commands;
    auto figure = [&](const char* name, const char* help, mrsim::MetricsBundle (*fn)(const mrsim::ScenarioConfig&)) {
        auto* cmd = app.add_subcommand(name, help);
        add_common(cmd, opt);
        commands.emplace_back(cmd, [fn, &opt](const mrsim::ScenarioConfig& c) { return emit(c, opt, fn(c), false); });
    };

    auto* validate = app.add_subcommand("validate", "Check a scenario file and list every violation");
    add_common(validate, opt);
    validate->add_option("file", opt.config_path, "Scenario file")->check(CLI::ExistingFile);
    commands.emplace_back(validate, [](const mrsim::ScenarioConfig&) {
        std::printf("ok\n");
        return 0;
    });

    auto* run = app.add_subcommand("run", "Run one scenario and write all tables");
    add_common(run, opt);
    commands.emplace_back(run, [&opt](const mrsim::ScenarioConfig& c) {
        return emit(c, opt, mrsim::run_scenario(c), true);
    });

    auto* sweep = app.add_subcommand("sweep", "Run every figure sweep");
    add_common(sweep, opt);
    commands.emplace_back(sweep, [&opt](const mrsim::ScenarioConfig& c) {
        return emit(c, opt, mrsim::full_sweep(c), true);
    });

    figure("fig2", "Mean attachment time against relay speed", mrsim::fig2_attachment_time);
    figure("fig3", "Availability ratio against speed and interarrival", mrsim::fig3_availability);
    figure("fig4", "Bypassed busy-hour traffic against availability", mrsim::fig4_bypassed_traffic);
    figure("fig5", "Uplink energy efficiency against availability", mrsim::fig5_energy_efficiency);
    figure("fig6", "Bypassed share of a delayed upload against accepted delay", mrsim::fig6_delayed_transfers);

    auto* calibrate = app.add_subcommand("calibrate-energy", "Solve and print the per-tier power models");
    add_common(calibrate, opt);
    commands.emplace_back(calibrate, calibrate_energy);

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto& [cmd, action] : commands) {
            if (!cmd->parsed()) continue;
            const auto config = load(opt);
            if (!config) return 1;
            return action(*config);
        }
    } catch (const std::exception& e) {
        fail(e.what());
        return 1;
    }
    return 1;
}
