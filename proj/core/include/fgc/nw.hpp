#ifndef FGC_NW_HPP
#define FGC_NW_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "fgc/numerics.hpp"
#include "fgc/types.hpp"

namespace fgc {

/// Kernel regression of a response curve series on a predictor curve series.
/// Predictors and responses may live on different grids; only curves compared
/// under the semi-metric must share one.
struct NwModel {
    CurveSeries predictors;
    CurveSeries responses;
    double bandwidth = 1.0;
    SemiMetricSpec semimetric{};
    KernelSpec kernel{};
};

/// Bandwidth candidates are quantiles of the pairwise predictor distances.
/// The q-th candidate is the sorted distance at index ceil(q * N) - 1 over the
/// N = n(n-1)/2 pairs. min_active_neighbors is the number of training points
/// the nearest-neighbor fallback must activate when a raw bandwidth leaves an
/// evaluation point with too few positive kernel weights; 1 reproduces the
/// plain nearest-neighbor inflation used by prediction.
struct BandwidthSearch {
    std::vector<double> quantile_grid = {0.05, 0.10, 0.15, 0.20, 0.25,
                                         0.30, 0.35, 0.40, 0.45, 0.50};
    int min_active_neighbors = 1;
};

void validate(const BandwidthSearch& search);

/// `degenerate` marks the all-distances-zero case, where the returned value
/// is the documented sentinel 1.0 rather than a data-driven quantile.
struct BandwidthSelection {
    double bandwidth = 1.0;
    bool degenerate = false;
};

/// Kernel-weighted average of the responses at x_new (weights nonnegative,
/// summing to one). If every raw kernel weight vanishes, the bandwidth is
/// inflated to 1.001x the nearest predictor distance so the forecast stays
/// defined at every step.
Curve nw_predict(const NwModel& model, const Curve& x_new);

/// Kernel regression of a series on its own lag: pairs (curve t, curve t+1)
/// for t = 1..n-1, evaluated at x_new. With x_new equal to the last curve
/// this is the one-step-ahead forecast of the series.
Curve nw_autopredict(const CurveSeries& series, double bandwidth,
                     const SemiMetricSpec& semimetric, const KernelSpec& kernel,
                     const Curve& x_new);

/// Leave-one-out cross-validation over the candidate quantile bandwidths:
/// returns the candidate minimizing the summed integrated squared error of
/// the held-out predictions, ties broken toward the smaller bandwidth.
BandwidthSelection select_bandwidth(const CurveSeries& predictors,
                                    const CurveSeries& responses,
                                    const BandwidthSearch& search,
                                    const SemiMetricSpec& semimetric,
                                    const KernelSpec& kernel);

namespace nw_detail {

/// Normalized kernel weights for an evaluation point with the given distances
/// to the training predictors. `exclude` (when >= 0) removes one training
/// index, which is how leave-one-out evaluations drop the held-out pair.
/// Applies the bandwidth-inflation fallback when fewer than min_active
/// distances fall inside the kernel support.
void kernel_weights(std::span<const double> distances, double bandwidth,
                    const KernelSpec& kernel, int min_active,
                    std::ptrdiff_t exclude, std::vector<double>& out);

/// out_values = sum_i weights[i] * responses[resp_first + i], on the response grid.
void combine_responses(std::span<const double> weights,
                       const CurveSeries& responses, std::size_t resp_first,
                       std::vector<double>& out_values);

/// LOOCV bandwidth selection over predictors with indices [0, m) of a
/// precomputed distance matrix; responses are aligned at resp_first.
/// This is the routine select_bandwidth delegates to, exposed so the
/// expanding-window driver can reuse one distance matrix across steps.
BandwidthSelection select_bandwidth_cached(const DistanceMatrix& dm,
                                           std::size_t m,
                                           const CurveSeries& responses,
                                           std::size_t resp_first,
                                           const BandwidthSearch& search,
                                           const KernelSpec& kernel);

/// Prediction from cached distances (no exclusion).
Curve predict_cached(std::span<const double> distances,
                     const CurveSeries& responses, std::size_t resp_first,
                     std::size_t m, double bandwidth, const KernelSpec& kernel);

} // namespace nw_detail

} // namespace fgc

#endif // FGC_NW_HPP
