#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Granger-causal direction between two stationary curve time "
                 "series via expanding-window nonparametric forecasts"};
    app.require_subcommand(1);

    fgc::cli::RunConfig run;
    std::string x_path, y_path;
    std::string analyze_out = "gcgmc_report.txt";
    bool freeze = false;
    auto* analyze = app.add_subcommand(
        "analyze", "Compute both directional statistics and the decision");
    analyze->add_option("--x", x_path, "First curve series file")->required();
    analyze->add_option("--y", y_path, "Second curve series file")->required();
    analyze->add_option("--train-frac", run.train_fraction,
                        "Initial training fraction (default 0.8)");
    analyze->add_option("--deriv-order", run.derivative_order,
                        "Semi-metric derivative order 0, 1 or 2 (default 2)");
    analyze->add_option("--quantiles", run.quantile_grid,
                        "Bandwidth candidate quantiles (default 0.05..0.50)");
    analyze->add_flag("--freeze-bandwidths", freeze,
                      "Select bandwidths on the initial window only");
    analyze->add_option("--seed", run.seed, "Seed echoed into the report");
    analyze->add_option("--threads", run.n_threads,
                        "Worker threads (0 = auto, capped by FGC_THREADS)");
    analyze->add_option("--out", analyze_out,
                        "Report path; the per-step table lands next to it");

    fgc::McPlan plan;
    fgc::SimConfig tpl;
    std::string sim_out;
    int sim_threads = 0;
    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo decision counts for the built-in bivariate "
                    "generating process");
    simulate->add_option("--n", plan.n_values, "Curves per replication")
        ->required();
    simulate->add_option("--p", plan.p_values, "Grid points per curve")
        ->required();
    simulate->add_option("--reps", plan.replications, "Replications per cell")
        ->required();
    simulate->add_option("--seed", plan.master_seed, "Master seed");
    simulate->add_option("--train-frac", plan.train_fraction,
                         "Training fraction (default 0.8)");
    simulate->add_option("--burn-in", tpl.burn_in,
                         "Start-up curves to discard (default 50)");
    simulate->add_option("--ar", tpl.ar_coefficient,
                         "Response autoregressive coefficient (default 0.6)");
    simulate->add_option("--psi-scale", tpl.psi_scale,
                         "Predictor operator scale (default 0.34)");
    simulate->add_option("--noise-scale", tpl.noise_scale,
                         "Response noise scale (default 0.1)");
    simulate->add_option("--threads", sim_threads,
                         "Worker threads (0 = auto, capped by FGC_THREADS)");
    simulate->add_option("--out", sim_out, "Counts CSV path")->required();

    std::string kind, in_path, cpi_path, pre_out;
    bool midpoint = false;
    auto* preprocess = app.add_subcommand(
        "preprocess", "Transform a curve file (log-returns, cpi-normalize)");
    preprocess->add_option("kind", kind, "log-returns or cpi-normalize")
        ->required()
        ->check(CLI::IsMember({"log-returns", "cpi-normalize"}));
    preprocess->add_option("--in", in_path, "Input curve file")->required();
    preprocess->add_option("--cpi", cpi_path,
                           "CPI curve file (cpi-normalize only)");
    preprocess->add_flag("--midpoint-grid", midpoint,
                         "Relabel return grid points to interval midpoints");
    preprocess->add_option("--out", pre_out, "Output curve file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (analyze->parsed()) {
        run.refresh_bandwidths = !freeze;
        return fgc::cli::cmd_analyze(x_path, y_path, run, analyze_out,
                                     std::cout, std::cerr);
    }
    if (simulate->parsed()) {
        return fgc::cli::cmd_simulate(plan, tpl, sim_out, sim_threads,
                                      std::cout, std::cerr);
    }
    return fgc::cli::cmd_preprocess(kind, in_path, cpi_path, pre_out, midpoint,
                                    std::cout, std::cerr);
}
