#ifndef FGC_TOOLS_COMMANDS_HPP
#define FGC_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fgc/simulate.hpp"

namespace fgc::cli {

/// Effective analysis configuration; every field is validated before any
/// computation starts and echoed into the report.
struct RunConfig {
    double train_fraction = 0.8;
    int derivative_order = 2;
    std::vector<double> quantile_grid = {0.05, 0.10, 0.15, 0.20, 0.25,
                                         0.30, 0.35, 0.40, 0.45, 0.50};
    bool refresh_bandwidths = true;
    std::uint64_t seed = 0;
    int n_threads = 0; // 0 = hardware count, always capped by FGC_THREADS
};

void validate(const RunConfig& config);

/// Worker count: `requested` when positive, otherwise the hardware
/// concurrency, in both cases capped by the FGC_THREADS environment variable.
int resolve_threads(int requested);

/// Exit statuses shared by all commands: 0 success, 2 input/validation
/// error, 1 internal error.
int cmd_analyze(const std::string& x_path, const std::string& y_path,
                const RunConfig& config, const std::string& out_path,
                std::ostream& out, std::ostream& err);

int cmd_simulate(const McPlan& plan, const SimConfig& config_template,
                 const std::string& out_path, int n_threads, std::ostream& out,
                 std::ostream& err);

int cmd_preprocess(const std::string& kind, const std::string& in_path,
                   const std::string& cpi_path, const std::string& out_path,
                   bool midpoint_grid, std::ostream& out, std::ostream& err);

/// Path of the per-step error table written next to an analysis report.
std::string steps_csv_path(const std::string& report_path);

} // namespace fgc::cli

#endif // FGC_TOOLS_COMMANDS_HPP
