#ifndef FGC_REPORT_HPP
#define FGC_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "fgc/gcgmc.hpp"
#include "fgc/simulate.hpp"

namespace fgc {

/// Stable key = value lines: the effective configuration echo first, then the
/// directional statistics, error sums and the decision. Every float uses 17
/// significant digits so the report alone reproduces the run.
std::string render_analyze_report(
    const GcGmcReport& report,
    const std::vector<std::pair<std::string, std::string>>& config_echo);

/// Per-step table, one row per test index with both directions' integrated
/// squared errors and bandwidths.
std::string render_steps_csv(const GcGmcReport& report);

/// Monte Carlo counts table: n,p,count_predictable,count_causal,replications,
/// undefined_count.
std::string render_mc_csv(const McResult& result);

/// One-line human reading of the decision with the series labels filled in.
std::string decision_phrase(const GcGmcReport& report);

std::string format_double(double v);

} // namespace fgc

#endif // FGC_REPORT_HPP
