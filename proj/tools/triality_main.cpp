// triality — simulate single-photon two-beam self-interference with a
// polarization tag: prepare states, scan fringes, block paths, run simulated
// tomography, and reproduce the seven-state benchmark table.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "triality/triality.hpp"

namespace {

using namespace triality;

struct CliOptions {
    // global
    std::uint64_t seed = 0;
    double exposure = kDefaultExposure;
    std::string out_prefix;
    std::string format = "json";
    std::string config_path;
    // state selection
    double ratio = 1.0;
    double theta = 0.0;
    double xi = 0.0;
    std::string target;
    // grid
    double start = 0.0;
    double stop = 4.0 * std::numbers::pi;
    int steps = 256;
    // misc
    int trials = 16;
    int samples = 128;
};

bool option_set(const CLI::App* a, const std::string& name) {
    const CLI::Option* o = a->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
}

// flag > config file > built-in default
ExperimentConfig resolve_config(const CLI::App& app, const CLI::App* sub, const CliOptions& opt) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty()) {
        std::ifstream f(opt.config_path);
        if (!f) throw std::runtime_error("cannot open config file " + opt.config_path);
        json j;
        f >> j;
        cfg = config_from_json(j);
    }
    if (option_set(&app, "--seed")) cfg.seed = opt.seed;
    if (option_set(&app, "--exposure")) cfg.exposure = opt.exposure;
    if (option_set(&app, "--out")) cfg.output = opt.out_prefix;
    if (option_set(sub, "--start")) cfg.grid.start = opt.start;
    if (option_set(sub, "--stop")) cfg.grid.stop = opt.stop;
    if (option_set(sub, "--steps")) cfg.grid.steps = opt.steps;

    const bool explicit_params = option_set(sub, "--R") || option_set(sub, "--theta") ||
                                 option_set(sub, "--xi");
    if (!opt.target.empty())
        cfg.params = solve_params(find_target(opt.target));
    else if (explicit_params || opt.config_path.empty())
        cfg.params = PreparationParams(opt.ratio, opt.theta, opt.xi);
    cfg.validate();
    return cfg;
}

void emit(const ExperimentConfig& cfg, const std::string& suffix, const std::string& content,
          json& summary) {
    if (cfg.output.empty()) {
        std::cout << content;
    } else {
        const std::string path = cfg.output + suffix;
        write_file(path, content);
        summary["files"].push_back(path);
    }
}

int cmd_prepare(const ExperimentConfig& cfg) {
    const PureState state = prepare_state(cfg.params);
    const json doc{{"params", to_json(cfg.params)},
                   {"amplitudes", to_json(state)},
                   {"vdc", to_json(vdc_closed_form(cfg.params))}};
    json summary = {{"files", json::array()}};
    emit(cfg, "_state.json", doc.dump(2) + "\n", summary);
    if (!cfg.output.empty()) std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_metrics(const ExperimentConfig& cfg) {
    const VDCTriple t = vdc_closed_form(cfg.params);
    const json doc{{"params", to_json(cfg.params)},
                   {"vdc", to_json(t)},
                   {"identity_residual", identity_residual(t)},
                   {"duality_gap", duality_gap(cfg.params)}};
    json summary = {{"files", json::array()}};
    emit(cfg, "_metrics.json", doc.dump(2) + "\n", summary);
    if (!cfg.output.empty()) std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_fringe(const ExperimentConfig& cfg) {
    const FringeScan scan =
        fringe_scan(cfg.params, cfg.grid.phases(), cfg.exposure, mix_seed(cfg.seed, 0xf51));
    const double fitted = visibility_from_scan(scan);
    json summary{{"fitted_V", fitted},
                 {"closed_form_V", vdc_closed_form(cfg.params).V},
                 {"points", scan.phases.size()},
                 {"files", json::array()}};
    emit(cfg, "_fringe.csv", fringe_csv(scan), summary);
    if (cfg.output.empty())
        std::cerr << "fitted V = " << format_double(fitted) << "\n";
    else
        std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_block(const ExperimentConfig& cfg) {
    const double rate_b_blocked =
        block_path(cfg.params, PathTag::b, cfg.exposure, mix_seed(cfg.seed, 0xb10));
    const double rate_a_blocked =
        block_path(cfg.params, PathTag::a, cfg.exposure, mix_seed(cfg.seed, 0xb10));
    const json doc{{"blocked_b", rate_b_blocked},
                   {"blocked_a", rate_a_blocked},
                   {"unit", cfg.exposure > 0.0 ? "counts" : "probability"},
                   {"D", distinguishability_from_blocking(rate_b_blocked, rate_a_blocked)},
                   {"closed_form_D", vdc_closed_form(cfg.params).D}};
    json summary = {{"files", json::array()}};
    emit(cfg, "_block.json", doc.dump(2) + "\n", summary);
    if (!cfg.output.empty()) std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_tomo(const ExperimentConfig& cfg) {
    const DensityMatrix ideal = density_of(prepare_state(cfg.params));
    const auto records = cfg.exposure > 0.0
                             ? simulate_counts(ideal, cfg.exposure, mix_seed(cfg.seed, 0x706))
                             : exact_records(ideal);
    const MleResult res = reconstruct_mle(records);
    json doc{{"rho", to_json(res.rho.op())},
             {"loglik", res.log_likelihood},
             {"iterations", res.iterations},
             {"converged", res.converged},
             {"fidelity_to_ideal", fidelity(res.rho, ideal)},
             {"concurrence", concurrence_wootters(res.rho)},
             {"concurrence_raw", concurrence_wootters_raw(res.rho)},
             {"closed_form_C", vdc_closed_form(cfg.params).C}};
    if (!res.warning.empty()) doc["warning"] = res.warning;
    json summary = {{"files", json::array()}};
    emit(cfg, "_tomo.json", doc.dump(2) + "\n", summary);
    if (!cfg.output.empty()) {
        emit(cfg, "_tomo_bars.csv", bars_csv(res.rho.op()), summary);
        emit(cfg, "_tomo_counts.csv", counts_csv(records), summary);
        std::cout << summary.dump() << "\n";
    }
    return 0;
}

int cmd_table1(const ExperimentConfig& cfg, const std::string& format, int trials) {
    const auto rows = table1_report(cfg.exposure, cfg.seed, trials, cfg.grid);
    json summary = {{"files", json::array()}};
    if (format == "csv")
        emit(cfg, "_table1.csv", table1_csv(rows), summary);
    else
        emit(cfg, "_table1.json", table1_to_json(rows, cfg.exposure).dump(2) + "\n", summary);
    if (!cfg.output.empty()) std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_sphere(const ExperimentConfig& cfg, int samples) {
    const auto points = octant_samples(samples);
    for (const auto& t : points) {
        const double residual = identity_residual(t.triple);
        if (std::abs(residual) > 1e-9)
            throw std::runtime_error("sphere sample off the unit sphere, residual " +
                                     format_double(residual));
    }
    json summary = {{"files", json::array()}, {"samples", points.size()}};
    emit(cfg, "_sphere.csv", sphere_csv(points), summary);
    if (!cfg.output.empty()) std::cout << summary.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-photon two-beam interference simulator: visibility, "
                 "distinguishability, concurrence"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--seed", opt.seed, "RNG seed")->envname("TRIALITY_SEED");
    app.add_option("--exposure", opt.exposure, "mean counts per measurement point (0 = noiseless)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--out", opt.out_prefix, "output path prefix (default: stdout)");
    app.add_option("--format", opt.format, "table output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", opt.config_path, "JSON run configuration file");

    const auto add_state_options = [&](CLI::App* sub) {
        sub->add_option("--R", opt.ratio, "amplitude ratio |c_b/c_a|");
        sub->add_option("--theta", opt.theta, "polarization angle in path b [rad]");
        sub->add_option("--xi", opt.xi, "arm phase [rad]");
        sub->add_option("--target", opt.target,
                        "named target: state-1..state-7 or center (overrides --R/--theta/--xi)");
    };
    const auto add_grid_options = [&](CLI::App* sub) {
        sub->add_option("--start", opt.start, "first stage phase [rad]");
        sub->add_option("--stop", opt.stop, "end of the phase range (exclusive) [rad]");
        sub->add_option("--steps", opt.steps, "number of phase points");
    };

    CLI::App* prepare = app.add_subcommand("prepare", "prepare a state and report amplitudes");
    add_state_options(prepare);
    CLI::App* fringe = app.add_subcommand("fringe", "scan the stage phase and fit the visibility");
    add_state_options(fringe);
    add_grid_options(fringe);
    CLI::App* block = app.add_subcommand("block", "block each path and estimate D");
    add_state_options(block);
    CLI::App* metrics = app.add_subcommand("metrics", "closed-form V, D, C and identity checks");
    add_state_options(metrics);
    CLI::App* tomo = app.add_subcommand("tomo", "simulate tomography and reconstruct the state");
    add_state_options(tomo);
    CLI::App* table1 = app.add_subcommand("table1", "run the seven-state benchmark table");
    add_grid_options(table1);
    table1->add_option("--trials", opt.trials, "Monte Carlo repetitions per state")
        ->check(CLI::PositiveNumber);
    CLI::App* sphere = app.add_subcommand("sphere", "sample the VDC octant surface");
    sphere->add_option("--samples", opt.samples, "number of octant samples")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        const CLI::App* sub = app.get_subcommands().front();
        const ExperimentConfig cfg = resolve_config(app, sub, opt);
        if (prepare->parsed()) return cmd_prepare(cfg);
        if (fringe->parsed()) return cmd_fringe(cfg);
        if (block->parsed()) return cmd_block(cfg);
        if (metrics->parsed()) return cmd_metrics(cfg);
        if (tomo->parsed()) return cmd_tomo(cfg);
        if (table1->parsed()) return cmd_table1(cfg, opt.format, opt.trials);
        if (sphere->parsed()) return cmd_sphere(cfg, opt.samples);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
