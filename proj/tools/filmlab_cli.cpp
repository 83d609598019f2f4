// Command-line driver.
//
//   filmlab run <config>          solve the configured coefficients and
//                                 write thickness CSVs, heatmaps and a
//                                 summary table
//   filmlab sweep <config>        coefficient sweep with a convergence
//                                 table and the mesh-resolution floor
//   filmlab check                 fixed-seed invariant battery, writes
//                                 checks.jsonl
//   filmlab export-mesh <config>  plain-text mesh dump
//
// <config> is a key=value file or a preset name (film-k0, film-k1,
// film-k2).  Exit codes: 0 ok, 1 config error, 2 solver failure,
// 3 check failure.
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "filmlab/experiment.hpp"

namespace {

struct CommonOpts {
    std::string out;
    bool quick = false;
    unsigned seed = 1;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out, "output directory (overrides the config)");
    cmd->add_flag("--quick", opts.quick, "coarse meshes for fast runs");
    cmd->add_option("--seed", opts.seed, "seed for the randomized checks")
        ->each([&](const std::string&) { opts.seed_set = true; });
}

filmlab::ExperimentConfig make_config(const std::string& source, const CommonOpts& opts) {
    filmlab::ExperimentConfig config = filmlab::load_config(source);
    if (!opts.out.empty()) config.out_dir = opts.out;
    if (opts.seed_set) config.seed = opts.seed;
    config.quick = opts.quick;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fictitious-thickness laboratory for film shapes"};
    app.require_subcommand(1);

    std::string run_cfg, sweep_cfg, mesh_cfg;
    CommonOpts run_opts, sweep_opts, check_opts, mesh_opts;

    auto* run_cmd = app.add_subcommand("run", "solve and write thickness maps");
    run_cmd->add_option("config", run_cfg, "config file or preset name")->required();
    add_common(run_cmd, run_opts);

    auto* sweep_cmd = app.add_subcommand("sweep", "coefficient sweep convergence study");
    sweep_cmd->add_option("config", sweep_cfg, "config file or preset name")->required();
    add_common(sweep_cmd, sweep_opts);

    auto* check_cmd = app.add_subcommand("check", "run the invariant battery");
    add_common(check_cmd, check_opts);

    auto* mesh_cmd = app.add_subcommand("export-mesh", "write the mesh as plain text");
    mesh_cmd->add_option("config", mesh_cfg, "config file or preset name")->required();
    add_common(mesh_cmd, mesh_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return filmlab::run_experiment(make_config(run_cfg, run_opts));
        if (sweep_cmd->parsed()) return filmlab::run_convergence(make_config(sweep_cfg, sweep_opts));
        if (check_cmd->parsed()) {
            const std::string out = check_opts.out.empty() ? "out" : check_opts.out;
            return filmlab::run_checks(out, check_opts.seed);
        }
        if (mesh_cmd->parsed()) return filmlab::export_mesh(make_config(mesh_cfg, mesh_opts));
    } catch (const filmlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
