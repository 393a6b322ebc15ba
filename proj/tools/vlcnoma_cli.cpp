// Command-line front end: channel gains, constellation design, closed-form
// SER, Monte Carlo sweeps and the canned figure experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vlcnoma/config.hpp"
#include "vlcnoma/error.hpp"
#include "vlcnoma/report.hpp"

namespace {

using namespace vlcnoma;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct CommonOptions {
    std::string config;
    std::string out;
};

struct SweepOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> snr;
    std::optional<std::string> schemes;
    std::optional<std::uint64_t> min_errors;
};

ExperimentConfig load(const CommonOptions& common, const SweepOverrides& sweep) {
    ExperimentConfig cfg = common.config.empty() ? ExperimentConfig::reference() : load_config(common.config);
    // Overrides go through the same parser so they get identical validation.
    std::string text;
    for (const auto& line : config_lines(cfg)) text += line + "\n";
    if (sweep.seed) text += "seed = " + std::to_string(*sweep.seed) + "\n";
    if (sweep.trials) text += "trials = " + std::to_string(*sweep.trials) + "\n";
    if (sweep.snr) text += "snr_db = " + *sweep.snr + "\n";
    if (sweep.schemes) text += "schemes = " + *sweep.schemes + "\n";
    if (sweep.min_errors) text += "min_errors = " + std::to_string(*sweep.min_errors) + "\n";
    if (!common.out.empty()) text += "output = " + common.out + "\n";
    try {
        return parse_config(text);
    } catch (const ConfigError& e) {
        // Line numbers refer to the merged text, not the user's file.
        const std::string what = e.what();
        const auto colon = what.find(": ");
        throw ConfigError(e.line() > 0 && colon != std::string::npos ? what.substr(colon + 2) : what);
    }
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file << text;
    if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--config", common.config, "Flat key = value configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--out", common.out, "Write CSV here instead of stdout");
}

void add_sweep(CLI::App* cmd, SweepOverrides& sweep) {
    cmd->add_option("--seed", sweep.seed, "Random seed (u64)");
    cmd->add_option("--trials", sweep.trials, "Trials per SNR point");
    cmd->add_option("--snr", sweep.snr, "SNR grid start:stop:step in dB, or a comma list");
    cmd->add_option("--schemes", sweep.schemes, "Comma list of noma-sic, noma-jml, oma");
    cmd->add_option("--min-errors", sweep.min_errors, "Stop a point once every user has this many errors");
}

void warn_if_infeasible(const ExperimentConfig& cfg) {
    const auto gains = cfg.effective_gains();
    if (auto why = gains.ordering_diagnostic()) std::cerr << "warning: " << *why << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-cell VLC NOMA link simulator"};
    app.require_subcommand(1);

    CommonOptions common;
    SweepOverrides sweep;
    bool trace = false;
    std::string figure;

    auto* gains_cmd = app.add_subcommand("gains", "Lambertian gains vs configured gains");
    add_common(gains_cmd, common);

    auto* design_cmd = app.add_subcommand("design", "Constellation levels, spacings, scale factors, margins");
    add_common(design_cmd, common);

    auto* analytic_cmd = app.add_subcommand("analytic", "Closed-form SER per SNR");
    add_common(analytic_cmd, common);
    analytic_cmd->add_option("--snr", sweep.snr, "SNR grid start:stop:step in dB, or a comma list");

    auto* complexity_cmd = app.add_subcommand("complexity", "Decoder metric evaluations per channel use");
    add_common(complexity_cmd, common);

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo SER sweep");
    add_common(simulate_cmd, common);
    add_sweep(simulate_cmd, sweep);
    simulate_cmd->add_flag("--trace", trace, "Print one channel use (first SNR point) before the sweep");

    auto* reproduce_cmd = app.add_subcommand("reproduce", "Run a figure experiment");
    reproduce_cmd->add_option("figure", figure, "fig2, fig3 or fig4")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
    add_common(reproduce_cmd, common);
    add_sweep(reproduce_cmd, sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        const auto cfg = load(common, sweep);
        const auto& out = cfg.output;
        if (*gains_cmd) {
            emit(run_experiment(Experiment::gains, cfg), out);
        } else if (*design_cmd) {
            emit(run_experiment(Experiment::design, cfg), out);
        } else if (*complexity_cmd) {
            emit(run_experiment(Experiment::complexity, cfg), out);
        } else if (*analytic_cmd) {
            emit(analytic_csv(cfg), out);
        } else if (*simulate_cmd) {
            warn_if_infeasible(cfg);
            if (trace) std::cerr << trace_frame(cfg, cfg.sweep.snr_db.front());
            emit(ser_csv(simulate(cfg), cfg), out);
        } else if (*reproduce_cmd) {
            warn_if_infeasible(cfg);
            emit(run_experiment(parse_experiment(figure), cfg), out);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
