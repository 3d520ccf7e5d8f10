#include "fgc/gcgmc.hpp"

#include <string>

#include "fgc/threads.hpp"

namespace fgc {

void validate(const WindowPlan& plan) {
    if (plan.n_train_initial < 2) {
        throw InputError("initial training window must hold at least 2 curves");
    }
    if (plan.n_train_initial >= plan.n_total) {
        throw InputError("initial training window (" +
                         std::to_string(plan.n_train_initial) +
                         ") must be smaller than the series length (" +
                         std::to_string(plan.n_total) + ")");
    }
}

std::optional<double> gcgmc_from_sums(double sum_cross, double sum_auto) {
    if (sum_auto == 0.0) return std::nullopt;
    return 1.0 - sum_cross / sum_auto;
}

Decision decide(std::optional<double> gcgmc_x, std::optional<double> gcgmc_y) {
    if (!gcgmc_x.has_value() || !gcgmc_y.has_value()) {
        return Decision::Indeterminate;
    }
    const double gx = *gcgmc_x;
    const double gy = *gcgmc_y;
    if (gy > 0.0 && gx < 0.0) return Decision::XCausesY;
    if (gx > 0.0 && gy < 0.0) return Decision::YCausesX;
    if (gy > gx) return Decision::YMorePredictable;
    if (gx > gy) return Decision::XMorePredictable;
    return Decision::Indeterminate;
}

std::string to_string(Decision d) {
    switch (d) {
    case Decision::XCausesY: return "x_causes_y";
    case Decision::YCausesX: return "y_causes_x";
    case Decision::YMorePredictable: return "y_more_predictable";
    case Decision::XMorePredictable: return "x_more_predictable";
    case Decision::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

namespace {

struct StepBandwidths {
    double auto_x = 1.0;
    double auto_y = 1.0;
    double cross_x = 1.0; // predicting X from Y
    double cross_y = 1.0; // predicting Y from X
};

// Bandwidths for the four models fitted on a window of the first w curves.
// A window with a single lagged pair leaves the auto prediction forced, so
// any positive bandwidth works; 1.0 is used.
StepBandwidths select_window_bandwidths(const DistanceMatrix& dmx,
                                        const DistanceMatrix& dmy,
                                        const CurveSeries& x,
                                        const CurveSeries& y, std::size_t w,
                                        const EwConfig& config) {
    StepBandwidths bw;
    if (w >= 3) {
        bw.auto_x = nw_detail::select_bandwidth_cached(dmx, w - 1, x, 1,
                                                       config.search,
                                                       config.kernel).bandwidth;
        bw.auto_y = nw_detail::select_bandwidth_cached(dmy, w - 1, y, 1,
                                                       config.search,
                                                       config.kernel).bandwidth;
    }
    bw.cross_y = nw_detail::select_bandwidth_cached(dmx, w, y, 0, config.search,
                                                    config.kernel).bandwidth;
    bw.cross_x = nw_detail::select_bandwidth_cached(dmy, w, x, 0, config.search,
                                                    config.kernel).bandwidth;
    return bw;
}

Curve auto_forecast_cached(const DistanceMatrix& dm, const CurveSeries& s,
                           std::size_t w, double bandwidth,
                           const KernelSpec& kernel) {
    // Lagged pairs (s_i -> s_{i+1}) for i < w-1, evaluated at the last
    // window curve; its distances to the predictors are matrix entries.
    return nw_detail::predict_cached(dm.row(w - 1, w - 1), s, 1, w - 1,
                                     bandwidth, kernel);
}

std::pair<ForecastRecord, ForecastRecord> step_cached(
    const CurveSeries& x, const CurveSeries& y, const DistanceMatrix& dmx,
    const DistanceMatrix& dmy, std::size_t t, const EwConfig& config,
    const StepBandwidths* frozen) {
    const std::size_t w = t - 1; // window curves, 0-based indices [0, w)
    const StepBandwidths bw =
        frozen ? *frozen
               : select_window_bandwidths(dmx, dmy, x, y, w, config);

    const Curve xhat = auto_forecast_cached(dmx, x, w, bw.auto_x, config.kernel);
    const Curve yhat = auto_forecast_cached(dmy, y, w, bw.auto_y, config.kernel);

    const std::vector<double> dist_xhat =
        distances_to(x, w, xhat, config.semimetric);
    const std::vector<double> dist_yhat =
        distances_to(y, w, yhat, config.semimetric);
    const Curve y_cross = nw_detail::predict_cached(dist_xhat, y, 0, w,
                                                    bw.cross_y, config.kernel);
    const Curve x_cross = nw_detail::predict_cached(dist_yhat, x, 0, w,
                                                    bw.cross_x, config.kernel);

    ForecastRecord ry;
    ry.time_index = t;
    ry.realized = y[t - 1];
    ry.auto_forecast = yhat;
    ry.cross_forecast = y_cross;
    ry.ise_auto = integrated_squared_error(ry.realized, ry.auto_forecast);
    ry.ise_cross = integrated_squared_error(ry.realized, ry.cross_forecast);
    ry.bandwidth_auto = bw.auto_y;
    ry.bandwidth_cross = bw.cross_y;

    ForecastRecord rx;
    rx.time_index = t;
    rx.realized = x[t - 1];
    rx.auto_forecast = xhat;
    rx.cross_forecast = x_cross;
    rx.ise_auto = integrated_squared_error(rx.realized, rx.auto_forecast);
    rx.ise_cross = integrated_squared_error(rx.realized, rx.cross_forecast);
    rx.bandwidth_auto = bw.auto_x;
    rx.bandwidth_cross = bw.cross_x;

    return {std::move(ry), std::move(rx)};
}

void check_equal_lengths(const CurveSeries& x, const CurveSeries& y) {
    if (x.size() != y.size()) {
        throw InputError("series lengths differ: x has " +
                         std::to_string(x.size()) + " curves, y has " +
                         std::to_string(y.size()));
    }
}

} // namespace

std::pair<ForecastRecord, ForecastRecord> forecast_step(const CurveSeries& x,
                                                        const CurveSeries& y,
                                                        std::size_t t,
                                                        const EwConfig& config) {
    check_equal_lengths(x, y);
    if (t < 3 || t > x.size()) {
        throw InputError("forecast step index " + std::to_string(t) +
                         " out of range: the window 1..t-1 needs at least one "
                         "lagged pair and t cannot exceed the series length " +
                         std::to_string(x.size()));
    }
    const DistanceMatrix dmx(x, config.semimetric);
    const DistanceMatrix dmy(y, config.semimetric);
    return step_cached(x, y, dmx, dmy, t, config, nullptr);
}

GcGmcReport run_expanding_window(const CurveSeries& x, const CurveSeries& y,
                                 const WindowPlan& plan, const EwConfig& config) {
    validate(plan);
    check_equal_lengths(x, y);
    if (x.size() != plan.n_total) {
        throw InputError("plan covers " + std::to_string(plan.n_total) +
                         " curves but the series hold " +
                         std::to_string(x.size()));
    }

    const DistanceMatrix dmx(x, config.semimetric);
    const DistanceMatrix dmy(y, config.semimetric);

    StepBandwidths frozen;
    if (!config.refresh_bandwidths) {
        frozen = select_window_bandwidths(dmx, dmy, x, y, plan.n_train_initial,
                                          config);
    }

    const std::size_t steps = plan.n_total - plan.n_train_initial;
    GcGmcReport report;
    report.x_label = x.label;
    report.y_label = y.label;
    report.records_x.resize(steps);
    report.records_y.resize(steps);

    parallel_for(steps, config.n_threads, [&](std::size_t i) {
        const std::size_t t = plan.n_train_initial + 1 + i;
        auto [ry, rx] = step_cached(x, y, dmx, dmy, t, config,
                                    config.refresh_bandwidths ? nullptr
                                                              : &frozen);
        report.records_y[i] = std::move(ry);
        report.records_x[i] = std::move(rx);
    });

    for (const auto& r : report.records_y) {
        report.sum_ise_auto_y += r.ise_auto;
        report.sum_ise_cross_y += r.ise_cross;
    }
    for (const auto& r : report.records_x) {
        report.sum_ise_auto_x += r.ise_auto;
        report.sum_ise_cross_x += r.ise_cross;
    }
    report.gcgmc_y = gcgmc_from_sums(report.sum_ise_cross_y, report.sum_ise_auto_y);
    report.gcgmc_x = gcgmc_from_sums(report.sum_ise_cross_x, report.sum_ise_auto_x);
    report.decision = decide(report.gcgmc_x, report.gcgmc_y);
    return report;
}

} // namespace fgc
