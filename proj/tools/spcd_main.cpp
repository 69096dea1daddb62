// spcd: simulate SPCD trials, run bias/NPV Monte Carlo grids, tabulate
// closed-form expectations, fit the placebo-arm mixture, and cross-check
// Monte Carlo results against the closed forms.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spcd/cli.hpp"
#include "spcd/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Sequential parallel comparison design simulator"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    std::string config_path;
    long long seed_flag = -1;
    std::string out_path;
    unsigned parallelism = 0;
    std::size_t reps = 0;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed_flag, "master seed (overrides SPCD_SEED and the config)");
    app.add_option("--out", out_path, "output file path");
    app.add_option("--parallelism", parallelism, "worker thread count");
    app.add_option("--reps", reps, "Monte Carlo replicates per grid cell");

    CLI::App* simulate = app.add_subcommand("simulate", "write one participant-level trial CSV");
    CLI::App* grid = app.add_subcommand("grid", "run the Monte Carlo grid and write its CSV");
    CLI::App* analytic =
        app.add_subcommand("analytic", "write closed-form expectations over the grid");

    CLI::App* emfit = app.add_subcommand("emfit", "fit a two-component normal mixture to a CSV column");
    std::string emfit_input;
    spcd::cli::EmfitOptions emfit_options;
    emfit->add_option("input", emfit_input, "input CSV file")->required();
    emfit->add_option("--column", emfit_options.column, "column to fit (default: change)");
    emfit->add_option("--tol", emfit_options.tol, "log-likelihood convergence tolerance");
    emfit->add_option("--max-iter", emfit_options.max_iter, "maximum EM iterations");

    CLI::App* check = app.add_subcommand("check", "compare Monte Carlo means against closed forms");
    double slack = 0.02;
    check->add_option("--slack", slack,
                      "tolerance absorbing the empirical-vs-population threshold gap");

    CLI11_PARSE(app, argc, argv);

    try {
        spcd::RunConfig config =
            config_path.empty() ? spcd::default_config() : spcd::load_config(config_path);
        spcd::apply_seed_overrides(config, std::getenv("SPCD_SEED"), seed_flag);
        if (!out_path.empty()) config.out = out_path;
        if (parallelism > 0) config.parallelism = parallelism;
        if (reps > 0) config.grid.n_reps = reps;

        if (simulate->parsed()) {
            spcd::cli::cmd_simulate(config);
        } else if (grid->parsed()) {
            spcd::cli::cmd_grid(config);
        } else if (analytic->parsed()) {
            spcd::cli::cmd_analytic(config);
        } else if (emfit->parsed()) {
            return spcd::cli::cmd_emfit(emfit_input, emfit_options, std::cout);
        } else if (check->parsed()) {
            return spcd::cli::cmd_check(config, slack, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
