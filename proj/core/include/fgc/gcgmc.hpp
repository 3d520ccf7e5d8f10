#ifndef FGC_GCGMC_HPP
#define FGC_GCGMC_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgc/nw.hpp"
#include "fgc/types.hpp"

namespace fgc {

/// Expanding-window split: the initial training window holds the first
/// n_train_initial curves, and one forecast is issued for each of the
/// remaining n_total - n_train_initial time points.
struct WindowPlan {
    std::size_t n_total = 0;
    std::size_t n_train_initial = 0;
};

void validate(const WindowPlan& plan);

/// One out-of-sample step: the realized curve, the forecast using the
/// series' own past only, and the forecast that adds the other series.
struct ForecastRecord {
    std::size_t time_index = 0; // 1-based index of the forecast target
    Curve realized;
    Curve auto_forecast;
    Curve cross_forecast;
    double ise_auto = 0.0;
    double ise_cross = 0.0;
    double bandwidth_auto = 0.0;
    double bandwidth_cross = 0.0;
};

enum class Decision {
    XCausesY,
    YCausesX,
    YMorePredictable,
    XMorePredictable,
    Indeterminate
};

struct EwConfig {
    SemiMetricSpec semimetric{};
    KernelSpec kernel{};
    BandwidthSearch search{};
    /// Re-select bandwidths on every expanding window (default); when false
    /// the bandwidths chosen on the initial window are reused for all steps.
    bool refresh_bandwidths = true;
    /// Worker threads for the forecast steps (they are independent given
    /// realized data); 1 keeps everything on the calling thread.
    int n_threads = 1;
};

/// The statistic per direction is 1 - (sum of cross-model integrated squared
/// errors) / (sum of auto-model integrated squared errors); at most 1, may be
/// negative, and undefined (nullopt) when the auto-error sum is zero.
struct GcGmcReport {
    std::optional<double> gcgmc_x;
    std::optional<double> gcgmc_y;
    double sum_ise_auto_x = 0.0;
    double sum_ise_cross_x = 0.0;
    double sum_ise_auto_y = 0.0;
    double sum_ise_cross_y = 0.0;
    std::vector<ForecastRecord> records_x;
    std::vector<ForecastRecord> records_y;
    Decision decision = Decision::Indeterminate;
    std::string x_label;
    std::string y_label;
};

/// 1 - sum_cross / sum_auto; nullopt when sum_auto is zero.
std::optional<double> gcgmc_from_sums(double sum_cross, double sum_auto);

/// Total, deterministic decision rule. The causal verdicts require opposite
/// signs; otherwise the larger value names the more predictable series, and
/// an exact tie (or an undefined direction) is Indeterminate.
Decision decide(std::optional<double> gcgmc_x, std::optional<double> gcgmc_y);

std::string to_string(Decision d);

/// One forecast step with training window 1..t-1 (t is 1-based, 2 <= t <= n).
/// For the Y direction the auto forecast regresses Y on its own lag and the
/// cross forecast feeds the predicted X_t (not the realized one) into the
/// regression of Y on X; the X direction swaps the roles. Returns the
/// (Y record, X record) pair for the step.
std::pair<ForecastRecord, ForecastRecord> forecast_step(const CurveSeries& x,
                                                        const CurveSeries& y,
                                                        std::size_t t,
                                                        const EwConfig& config);

/// Runs forecast_step over every test index of the plan, re-selecting
/// bandwidths per step unless frozen, and aggregates the error sums into the
/// directional statistics and the decision.
GcGmcReport run_expanding_window(const CurveSeries& x, const CurveSeries& y,
                                 const WindowPlan& plan, const EwConfig& config);

} // namespace fgc

#endif // FGC_GCGMC_HPP
