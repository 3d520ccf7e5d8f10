#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <ostream>
#include <thread>

#include "fgc/gcgmc.hpp"
#include "fgc/io.hpp"
#include "fgc/report.hpp"

namespace fgc::cli {

namespace {

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += format_double(values[i]);
    }
    return out;
}

int run_guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

void validate(const RunConfig& config) {
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
        throw InputError("train_fraction must lie strictly between 0 and 1");
    }
    if (config.derivative_order < 0 || config.derivative_order > 2) {
        throw InputError("derivative_order must be 0, 1 or 2");
    }
    BandwidthSearch search;
    search.quantile_grid = config.quantile_grid;
    try {
        fgc::validate(search);
    } catch (const InputError&) {
        throw InputError("bandwidth quantile grid must be strictly increasing "
                         "probabilities in (0, 1]");
    }
    if (config.n_threads < 0) {
        throw InputError("threads must be nonnegative (0 = auto)");
    }
}

int resolve_threads(int requested) {
    int threads = requested > 0
                      ? requested
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (const char* env = std::getenv("FGC_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0 && cap < threads) threads = cap;
    }
    return threads;
}

std::string steps_csv_path(const std::string& report_path) {
    std::filesystem::path p(report_path);
    p.replace_extension(".steps.csv");
    return p.string();
}

int cmd_analyze(const std::string& x_path, const std::string& y_path,
                const RunConfig& config, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        validate(config);
        const CurveSeries x = read_curves(x_path);
        const CurveSeries y = read_curves(y_path);

        WindowPlan plan;
        plan.n_total = x.size();
        plan.n_train_initial = static_cast<std::size_t>(
            config.train_fraction * static_cast<double>(x.size()));
        EwConfig ew;
        ew.semimetric.derivative_order = config.derivative_order;
        ew.search.quantile_grid = config.quantile_grid;
        ew.refresh_bandwidths = config.refresh_bandwidths;
        ew.n_threads = resolve_threads(config.n_threads);

        const GcGmcReport report = run_expanding_window(x, y, plan, ew);

        std::vector<std::pair<std::string, std::string>> echo;
        echo.emplace_back("command", "analyze");
        echo.emplace_back("x_path", x_path);
        echo.emplace_back("y_path", y_path);
        echo.emplace_back("n_total", std::to_string(plan.n_total));
        echo.emplace_back("n_train_initial",
                          std::to_string(plan.n_train_initial));
        echo.emplace_back("train_fraction",
                          format_double(config.train_fraction));
        echo.emplace_back("derivative_order",
                          std::to_string(config.derivative_order));
        echo.emplace_back("kernel", "quadratic");
        echo.emplace_back("bandwidth_quantiles",
                          join_doubles(config.quantile_grid));
        echo.emplace_back("refresh_bandwidths",
                          config.refresh_bandwidths ? "true" : "false");
        echo.emplace_back("seed", std::to_string(config.seed));

        atomic_write_file(out_path, render_analyze_report(report, echo));
        atomic_write_file(steps_csv_path(out_path), render_steps_csv(report));
        out << decision_phrase(report) << " (gcgmc_x = "
            << (report.gcgmc_x ? format_double(*report.gcgmc_x) : "undefined")
            << ", gcgmc_y = "
            << (report.gcgmc_y ? format_double(*report.gcgmc_y) : "undefined")
            << ")\n";
        return 0;
    });
}

int cmd_simulate(const McPlan& plan, const SimConfig& config_template,
                 const std::string& out_path, int n_threads, std::ostream& out,
                 std::ostream& err) {
    return run_guarded(err, [&] {
        fgc::validate(plan);
        const McResult result =
            run_monte_carlo(plan, config_template, resolve_threads(n_threads));
        atomic_write_file(out_path, render_mc_csv(result));
        for (const McCell& c : result) {
            out << "n=" << c.n << " p=" << c.p << ": predictable "
                << c.count_predictable << "/" << c.replications << ", causal "
                << c.count_causal << "/" << c.replications;
            if (c.undefined_count > 0) {
                out << ", undefined " << c.undefined_count;
            }
            out << "\n";
        }
        return 0;
    });
}

int cmd_preprocess(const std::string& kind, const std::string& in_path,
                   const std::string& cpi_path, const std::string& out_path,
                   bool midpoint_grid, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const CurveSeries input = read_curves(in_path);
        CurveSeries result;
        if (kind == "log-returns") {
            result = log_returns(input, midpoint_grid);
        } else if (kind == "cpi-normalize") {
            if (cpi_path.empty()) {
                throw InputError("cpi-normalize requires --cpi <file>");
            }
            result = cpi_normalize(input, read_curves(cpi_path));
        } else {
            throw InputError("unknown preprocess step '" + kind +
                             "' (expected log-returns or cpi-normalize)");
        }
        write_curves(result, out_path);
        out << "wrote " << result.size() << " curves to " << out_path << "\n";
        return 0;
    });
}

} // namespace fgc::cli
