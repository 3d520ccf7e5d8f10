// Straight-line reference implementations used to check the library against
// the defining formulas. Everything here is written directly from the
// definitions (polynomial fits solved by Gaussian elimination, explicit
// leave-one-out loops) and shares no code with the library path it checks.
#ifndef FGC_TESTS_ORACLE_HPP
#define FGC_TESTS_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline double trapz(const Vec& f, const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        s += (x[i + 1] - x[i]) * (f[i] + f[i + 1]) / 2.0;
    }
    return s;
}

// Solves A c = b by Gaussian elimination with partial pivoting.
inline Vec solve(Mat a, Vec b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::fabs(a[r][k]) > std::fabs(a[piv][k])) piv = r;
        }
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double m = a[r][k] / a[k][k];
            for (std::size_t c = k; c < n; ++c) a[r][c] -= m * a[k][c];
            b[r] -= m * b[k];
        }
    }
    Vec c(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * c[j];
        c[k] = s / a[k][k];
    }
    return c;
}

// Derivative of order q at x[i] from the polynomial through the given nodes,
// expanded in powers of (x - x[i]).
inline double poly_deriv_at(const Vec& f, const Vec& x,
                            const std::vector<std::size_t>& nodes,
                            std::size_t i, int q) {
    const std::size_t m = nodes.size();
    Mat a(m, Vec(m));
    Vec b(m);
    for (std::size_t r = 0; r < m; ++r) {
        const double dx = x[nodes[r]] - x[i];
        double pw = 1.0;
        for (std::size_t c = 0; c < m; ++c) {
            a[r][c] = pw;
            pw *= dx;
        }
        b[r] = f[nodes[r]];
    }
    const Vec coeff = solve(std::move(a), std::move(b));
    if (q == 0) return coeff[0];
    if (q == 1) return coeff[1];
    return 2.0 * coeff[2];
}

inline Vec derivative(const Vec& f, const Vec& x, int q) {
    const std::size_t n = f.size();
    Vec out(n);
    if (q == 0) return f;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> nodes;
        if (i == 0) {
            nodes = n >= 4 ? std::vector<std::size_t>{0, 1, 2, 3}
                           : std::vector<std::size_t>{0, 1, 2};
            if (q == 1) nodes = {0, 1, 2};
        } else if (i == n - 1) {
            nodes = n >= 4 ? std::vector<std::size_t>{n - 4, n - 3, n - 2, n - 1}
                           : std::vector<std::size_t>{n - 3, n - 2, n - 1};
            if (q == 1) nodes = {n - 3, n - 2, n - 1};
        } else {
            nodes = {i - 1, i, i + 1};
        }
        out[i] = poly_deriv_at(f, x, nodes, i, q);
    }
    return out;
}

inline double semi_metric(const Vec& f1, const Vec& f2, const Vec& x, int q) {
    const Vec d1 = derivative(f1, x, q);
    const Vec d2 = derivative(f2, x, q);
    Vec sq(f1.size());
    for (std::size_t i = 0; i < f1.size(); ++i) {
        const double d = d1[i] - d2[i];
        sq[i] = d * d;
    }
    return std::sqrt(trapz(sq, x));
}

inline double kernel(double t) {
    if (t < 0.0 || t > 1.0) return 0.0;
    return 1.5 * (1.0 - t * t);
}

// Kernel weights with the documented nearest-neighbor bandwidth inflation.
inline Vec weights(const Vec& dist, double h) {
    Vec w(dist.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        w[i] = kernel(dist[i] / h);
        sum += w[i];
    }
    if (sum == 0.0) {
        const double nearest = *std::min_element(dist.begin(), dist.end());
        sum = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            w[i] = kernel(dist[i] / (1.001 * nearest));
            sum += w[i];
        }
    }
    for (double& v : w) v /= sum;
    return w;
}

// Nadaraya-Watson prediction: predictors and responses as rows, distances
// under the derivative semi-metric on predictor_grid.
inline Vec nw_predict(const Mat& predictors, const Mat& responses,
                      const Vec& predictor_grid, int q, double h,
                      const Vec& x_new) {
    Vec dist(predictors.size());
    for (std::size_t i = 0; i < predictors.size(); ++i) {
        dist[i] = semi_metric(predictors[i], x_new, predictor_grid, q);
    }
    const Vec w = weights(dist, h);
    Vec out(responses[0].size(), 0.0);
    for (std::size_t i = 0; i < responses.size(); ++i) {
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] += w[i] * responses[i][j];
        }
    }
    return out;
}

inline Vec nw_autopredict(const Mat& series, const Vec& grid, int q, double h,
                          const Vec& x_new) {
    Mat predictors(series.begin(), series.end() - 1);
    Mat responses(series.begin() + 1, series.end());
    return nw_predict(predictors, responses, grid, q, h, x_new);
}

struct BandwidthPick {
    double bandwidth = 1.0;
    std::ptrdiff_t candidate_index = -1; // -1 marks the degenerate sentinel
    bool degenerate = false;
};

// Exhaustive leave-one-out cross-validation over the quantile candidates:
// candidate q is the sorted pairwise distance at index ceil(q*N)-1; zero
// candidates are dropped; ties go to the smaller bandwidth.
inline BandwidthPick select_bandwidth(const Mat& predictors,
                                      const Mat& responses,
                                      const Vec& predictor_grid,
                                      const Vec& response_grid, int q,
                                      const Vec& probs) {
    const std::size_t n = predictors.size();
    Vec pair_dists;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pair_dists.push_back(
                semi_metric(predictors[i], predictors[j], predictor_grid, q));
        }
    }
    std::sort(pair_dists.begin(), pair_dists.end());
    Vec cands;
    for (double prob : probs) {
        std::size_t idx = static_cast<std::size_t>(
            std::ceil(prob * static_cast<double>(pair_dists.size())));
        if (idx > 0) --idx;
        if (idx >= pair_dists.size()) idx = pair_dists.size() - 1;
        if (pair_dists[idx] > 0.0) cands.push_back(pair_dists[idx]);
    }
    if (cands.empty()) {
        for (double v : pair_dists) {
            if (v > 0.0) {
                cands.push_back(v);
                break;
            }
        }
    }
    if (cands.empty()) return {1.0, -1, true};

    BandwidthPick pick;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cands.size(); ++c) {
        double score = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            Mat ptrain, rtrain;
            for (std::size_t s = 0; s < n; ++s) {
                if (s == t) continue;
                ptrain.push_back(predictors[s]);
                rtrain.push_back(responses[s]);
            }
            const Vec pred = nw_predict(ptrain, rtrain, predictor_grid, q,
                                        cands[c], predictors[t]);
            Vec sq(pred.size());
            for (std::size_t j = 0; j < pred.size(); ++j) {
                const double d = pred[j] - responses[t][j];
                sq[j] = d * d;
            }
            score += trapz(sq, response_grid);
        }
        if (score < best) {
            best = score;
            pick.bandwidth = cands[c];
            pick.candidate_index = static_cast<std::ptrdiff_t>(c);
        }
    }
    return pick;
}

} // namespace oracle

#endif // FGC_TESTS_ORACLE_HPP
