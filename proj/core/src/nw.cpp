#include "fgc/nw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fgc {

void validate(const BandwidthSearch& search) {
    if (search.quantile_grid.empty()) {
        throw InputError("bandwidth search needs a nonempty quantile grid");
    }
    double prev = 0.0;
    for (double q : search.quantile_grid) {
        if (!(q > prev) || q > 1.0) {
            throw InputError("bandwidth quantiles must be strictly increasing "
                             "probabilities in (0, 1]");
        }
        prev = q;
    }
    if (search.min_active_neighbors < 1) {
        throw InputError("min_active_neighbors must be positive");
    }
}

namespace nw_detail {

void kernel_weights(std::span<const double> distances, double bandwidth,
                    const KernelSpec& kernel, int min_active,
                    std::ptrdiff_t exclude, std::vector<double>& out) {
    const std::size_t m = distances.size();
    const std::size_t m_eff = (exclude >= 0) ? m - 1 : m;
    if (m_eff == 0) throw InputError("kernel_weights: no training points");
    if (!(bandwidth > 0.0)) throw InputError("bandwidth must be positive");

    out.resize(m);
    std::size_t active = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (static_cast<std::ptrdiff_t>(i) == exclude) {
            out[i] = 0.0;
            continue;
        }
        out[i] = kernel_eval(distances[i] / bandwidth, kernel);
        if (out[i] > 0.0) ++active;
    }

    if (active < static_cast<std::size_t>(min_active)) {
        // Inflate the bandwidth just past the k-th nearest distance so the
        // forecast stays defined; k = 1 is the plain nearest-neighbor rule.
        const std::size_t k = std::min<std::size_t>(
            static_cast<std::size_t>(min_active), m_eff);
        double kth;
        if (k == 1) {
            kth = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (static_cast<std::ptrdiff_t>(i) == exclude) continue;
                kth = std::min(kth, distances[i]);
            }
        } else {
            static thread_local std::vector<double> scratch;
            scratch.clear();
            for (std::size_t i = 0; i < m; ++i) {
                if (static_cast<std::ptrdiff_t>(i) == exclude) continue;
                scratch.push_back(distances[i]);
            }
            std::nth_element(scratch.begin(), scratch.begin() + (k - 1),
                             scratch.end());
            kth = scratch[k - 1];
        }
        const double inflated = 1.001 * kth;
        for (std::size_t i = 0; i < m; ++i) {
            if (static_cast<std::ptrdiff_t>(i) == exclude) continue;
            out[i] = kernel_eval(distances[i] / inflated, kernel);
        }
    }

    double sum = 0.0;
    for (double w : out) sum += w;
    for (double& w : out) w /= sum;
}

void combine_responses(std::span<const double> weights,
                       const CurveSeries& responses, std::size_t resp_first,
                       std::vector<double>& out_values) {
    const std::size_t p = responses.grid->size();
    // Anchored form sum = y_ref + sum_i w_i (y_i - y_ref): identical responses
    // reproduce bitwise even though the normalized weights do not sum to one
    // exactly, so a perfectly self-predictable series really gets a zero
    // integrated squared error.
    std::size_t ref = 0;
    for (std::size_t i = 1; i < weights.size(); ++i) {
        if (weights[i] > weights[ref]) ref = i;
    }
    out_values = responses[resp_first + ref].values;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = weights[i];
        if (w == 0.0 || i == ref) continue;
        const auto& y = responses[resp_first + i].values;
        const auto& yr = responses[resp_first + ref].values;
        for (std::size_t j = 0; j < p; ++j) {
            out_values[j] += w * (y[j] - yr[j]);
        }
    }
}

Curve predict_cached(std::span<const double> distances,
                     const CurveSeries& responses, std::size_t resp_first,
                     std::size_t m, double bandwidth, const KernelSpec& kernel) {
    std::vector<double> w;
    kernel_weights(distances.subspan(0, m), bandwidth, kernel, 1, -1, w);
    Curve out;
    out.grid = responses.grid;
    combine_responses(w, responses, resp_first, out.values);
    return out;
}

namespace {

double ise_values(std::span<const double> a, std::span<const double> b,
                  const Grid& grid) {
    const auto& x = grid.points;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        const double d0 = a[i] - b[i];
        const double d1 = a[i + 1] - b[i + 1];
        acc += 0.5 * (x[i + 1] - x[i]) * (d0 * d0 + d1 * d1);
    }
    return acc;
}

std::vector<double> quantile_candidates(std::vector<double>& sorted_dists,
                                        const std::vector<double>& probs) {
    std::sort(sorted_dists.begin(), sorted_dists.end());
    const std::size_t n = sorted_dists.size();
    std::vector<double> cands;
    cands.reserve(probs.size());
    for (double q : probs) {
        auto idx = static_cast<std::size_t>(
            std::ceil(q * static_cast<double>(n)));
        if (idx > 0) --idx;
        if (idx >= n) idx = n - 1;
        const double v = sorted_dists[idx];
        if (v > 0.0) cands.push_back(v);
    }
    if (cands.empty()) {
        // Every selected quantile sits on a zero distance but positive
        // distances exist; fall back to the smallest positive one.
        for (double v : sorted_dists) {
            if (v > 0.0) {
                cands.push_back(v);
                break;
            }
        }
    }
    return cands;
}

} // namespace

BandwidthSelection select_bandwidth_cached(const DistanceMatrix& dm,
                                           std::size_t m,
                                           const CurveSeries& responses,
                                           std::size_t resp_first,
                                           const BandwidthSearch& search,
                                           const KernelSpec& kernel) {
    validate(search);
    if (m < 2) {
        throw InputError("bandwidth selection needs at least 2 training pairs");
    }
    if (resp_first + m > responses.size()) {
        throw InputError("bandwidth selection: response range out of bounds");
    }

    std::vector<double> pair_dists;
    pair_dists.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) pair_dists.push_back(dm(i, j));
    }
    const std::vector<double> cands =
        quantile_candidates(pair_dists, search.quantile_grid);
    if (cands.empty()) return {1.0, true};

    const Grid& rgrid = *responses.grid;
    std::vector<double> w, pred;
    double best_score = std::numeric_limits<double>::infinity();
    double best = cands.front();
    for (const double h : cands) {
        double score = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
            kernel_weights(dm.row(t, m), h, kernel, search.min_active_neighbors,
                           static_cast<std::ptrdiff_t>(t), w);
            combine_responses(w, responses, resp_first, pred);
            score += ise_values(pred, responses[resp_first + t].values, rgrid);
            if (score > best_score) break;
        }
        if (score < best_score) {
            best_score = score;
            best = h;
        }
    }
    return {best, false};
}

} // namespace nw_detail

Curve nw_predict(const NwModel& model, const Curve& x_new) {
    if (model.predictors.size() != model.responses.size()) {
        throw InputError("nw_predict: predictor/response length mismatch");
    }
    if (model.predictors.size() == 0) {
        throw InputError("nw_predict: empty training set");
    }
    const std::vector<double> dists = distances_to(
        model.predictors, model.predictors.size(), x_new, model.semimetric);
    return nw_detail::predict_cached(dists, model.responses, 0, dists.size(),
                                     model.bandwidth, model.kernel);
}

Curve nw_autopredict(const CurveSeries& series, double bandwidth,
                     const SemiMetricSpec& semimetric, const KernelSpec& kernel,
                     const Curve& x_new) {
    if (series.size() < 2) {
        throw InputError("nw_autopredict needs a series of length >= 2");
    }
    const std::size_t m = series.size() - 1;
    const std::vector<double> dists = distances_to(series, m, x_new, semimetric);
    return nw_detail::predict_cached(dists, series, 1, m, bandwidth, kernel);
}

BandwidthSelection select_bandwidth(const CurveSeries& predictors,
                                    const CurveSeries& responses,
                                    const BandwidthSearch& search,
                                    const SemiMetricSpec& semimetric,
                                    const KernelSpec& kernel) {
    if (predictors.size() != responses.size()) {
        throw InputError("select_bandwidth: predictor/response length mismatch");
    }
    const DistanceMatrix dm(predictors, semimetric);
    return nw_detail::select_bandwidth_cached(dm, predictors.size(), responses,
                                              0, search, kernel);
}

} // namespace fgc
