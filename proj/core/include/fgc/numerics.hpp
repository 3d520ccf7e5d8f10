#ifndef FGC_NUMERICS_HPP
#define FGC_NUMERICS_HPP

#include <span>
#include <vector>

#include "fgc/types.hpp"

namespace fgc {

/// Trapezoidal approximation of the integral of f over the grid span.
/// Exact for affine integrands on any grid.
double trapezoid_integral(std::span<const double> values, const Grid& grid);

/// Pointwise derivative estimate of the given order (0, 1 or 2) on the
/// observation grid. Interior points use the central three-point stencil,
/// the two boundary points a one-sided four-point stencil (three-point when
/// the grid has exactly three nodes), all in divided-difference form so the
/// stencil is exact for quadratics and annihilates affine data. Supports
/// non-uniform grids.
std::vector<double> derivative_values(std::span<const double> values,
                                      const Grid& grid, int order);

/// f'' on the same grid as the input.
Curve second_derivative(const Curve& curve);

/// sqrt of the integrated squared difference between the q-th derivatives
/// of the two curves, q = spec.derivative_order. Evaluated as the stencil
/// applied to the pointwise difference of the curves (the stencil is linear
/// in its data), so curves differing by an affine function have distance 0
/// at q = 2. Symmetric, nonnegative, zero on identical inputs.
double semi_metric(const Curve& x1, const Curve& x2, const SemiMetricSpec& spec);

/// Quadratic kernel K(t) = (3/2)(1 - t^2) on [0, 1], zero elsewhere.
/// Integrates to one over its support; the argument is a nonnegative
/// distance ratio, hence the one-sided support.
inline double kernel_eval(double t, const KernelSpec& spec) {
    switch (spec.kind) {
    case KernelSpec::Kind::Quadratic:
        if (t < 0.0 || t > 1.0) return 0.0;
        return 1.5 * (1.0 - t * t);
    }
    return 0.0;
}

/// Trapezoid-integrated squared difference between two curves on a shared grid.
double integrated_squared_error(const Curve& a, const Curve& b);

/// Full pairwise semi-metric table over one series, row-major.
/// Built once and reused across expanding-window steps.
class DistanceMatrix {
public:
    DistanceMatrix(const CurveSeries& series, const SemiMetricSpec& spec);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

    /// Distances from curve i to curves [0, count).
    std::span<const double> row(std::size_t i, std::size_t count) const {
        return {d_.data() + i * n_, count};
    }

private:
    std::size_t n_;
    std::vector<double> d_;
};

/// Distances from one evaluation curve to the first `count` curves of a series.
std::vector<double> distances_to(const CurveSeries& series, std::size_t count,
                                 const Curve& x_new, const SemiMetricSpec& spec);

} // namespace fgc

#endif // FGC_NUMERICS_HPP
