#ifndef FGC_SIMULATE_HPP
#define FGC_SIMULATE_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "fgc/gcgmc.hpp"
#include "fgc/types.hpp"

namespace fgc {

/// Bivariate generating process on p equally spaced points of [0, 1]:
///   X_t(v) = psi_scale * Int exp((v^2+s^2)/2) X_{t-1}(s) ds + B_t(v)
///   Z_t(u) = ar_coefficient * Z_{t-1}(u) + Int sqrt(u v) X_t(v) dv
///   Y_t(u) = Z_t(u) + eps_t(u)
/// with B_t standard Brownian paths and eps_t iid Brownian paths scaled by
/// noise_scale. The noise enters as observation error on the response signal
/// Z rather than inside the recursion; accumulated recursion noise would be
/// predictable from Y's own past and drown the cross-series signal the
/// process is meant to carry. psi_scale must keep the operator's
/// Hilbert-Schmidt norm below 1 so X stays stationary (0.34 gives ~0.497).
struct SimConfig {
    std::size_t n = 250;
    std::size_t p = 50;
    std::size_t burn_in = 50;
    double ar_coefficient = 0.6;
    double psi_scale = 0.34;
    double noise_scale = 1.25;
    std::uint64_t seed = 0;
};

void validate(const SimConfig& config);

/// Hilbert-Schmidt norm of the X operator kernel, psi_scale * exp((v^2+s^2)/2)
/// over the unit square, evaluated by high-resolution quadrature.
double psi_hilbert_schmidt_norm(double psi_scale);

/// Standard Brownian path on the uniform p-point grid over [0, 1]:
/// B(0) = 0, increments sqrt(dv) * N(0,1).
Curve brownian_path(std::size_t p, std::mt19937_64& rng);

/// n curves of the X process after discarding burn_in start-up curves;
/// X_0 is a Brownian path.
CurveSeries simulate_far1_x(const SimConfig& config, std::mt19937_64& rng);

/// Builds the response recursion from given driver and noise series (no
/// burn-in discard): Y_0 = eps_0, then
/// Y_t = ar_coefficient * Y_{t-1} + Int sqrt(u v) X_t(v) dv + eps_t.
CurveSeries response_from(const CurveSeries& x_full, const CurveSeries& eps_full,
                          double ar_coefficient);

/// The full bivariate draw, deterministic in config.seed; the X recursion and
/// the observation noise consume independent substreams derived from it.
std::pair<CurveSeries, CurveSeries> simulate_pair(const SimConfig& config);

/// Monte Carlo design over sample sizes and grid resolutions.
struct McPlan {
    std::vector<std::size_t> n_values = {250, 500, 1000};
    std::vector<std::size_t> p_values = {50, 100, 200, 400};
    std::size_t replications = 100;
    double train_fraction = 0.8;
    std::uint64_t master_seed = 0;
};

void validate(const McPlan& plan);

/// Per-cell decision counts. count_predictable tallies GcGMC(Y) > GcGMC(X),
/// count_causal tallies GcGMC(Y) > 0 with GcGMC(X) < 0. Replications with an
/// undefined statistic in either direction count toward neither tally.
struct McCell {
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t count_predictable = 0;
    std::size_t count_causal = 0;
    std::size_t undefined_count = 0;
    std::size_t replications = 0;
};

using McResult = std::vector<McCell>;

/// Stable per-replication seed: the master seed mixed (splitmix64) with the
/// cell's n, then p, then the replication index, so every replication is
/// reproducible in isolation and cells may run in any order.
std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t n,
                               std::size_t p, std::size_t replication);

/// Simulates and analyzes every cell of the plan; replications run in
/// parallel across at most n_threads workers with order-independent tallies.
/// Fields of config_template other than n, p and seed apply to every cell.
McResult run_monte_carlo(const McPlan& plan, const SimConfig& config_template,
                         int n_threads = 1);

} // namespace fgc

#endif // FGC_SIMULATE_HPP
