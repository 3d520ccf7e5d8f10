#include "fgc/numerics.hpp"

#include <cmath>
#include <string>

namespace fgc {

double trapezoid_integral(std::span<const double> values, const Grid& grid) {
    if (values.size() != grid.size()) {
        throw InputError("trapezoid_integral: " + std::to_string(values.size()) +
                         " values vs " + std::to_string(grid.size()) +
                         " grid points");
    }
    const auto& x = grid.points;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        acc += 0.5 * (x[i + 1] - x[i]) * (values[i] + values[i + 1]);
    }
    return acc;
}

namespace {

// Newton divided differences over two/three/four nodes.
inline double dd2(double xa, double xb, double fa, double fb) {
    return (fb - fa) / (xb - xa);
}

inline double dd3(double xa, double xb, double xc, double fa, double fb, double fc) {
    return (dd2(xb, xc, fb, fc) - dd2(xa, xb, fa, fb)) / (xc - xa);
}

inline double dd4(double xa, double xb, double xc, double xd,
                  double fa, double fb, double fc, double fd) {
    return (dd3(xb, xc, xd, fb, fc, fd) - dd3(xa, xb, xc, fa, fb, fc)) / (xd - xa);
}

// Second derivative of the cubic through (xa..xd, fa..fd) evaluated at xe.
inline double cubic_second_deriv_at(double xa, double xb, double xc, double xd,
                                    double fa, double fb, double fc, double fd,
                                    double xe) {
    const double c2 = dd3(xa, xb, xc, fa, fb, fc);
    const double c3 = dd4(xa, xb, xc, xd, fa, fb, fc, fd);
    return 2.0 * c2 + c3 * (6.0 * xe - 2.0 * (xa + xb + xc));
}

void first_derivative_into(std::span<const double> f, const Grid& grid,
                           std::span<double> out) {
    const auto& x = grid.points;
    const std::size_t n = f.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double s01 = dd2(x[i - 1], x[i], f[i - 1], f[i]);
        const double s012 = dd3(x[i - 1], x[i], x[i + 1], f[i - 1], f[i], f[i + 1]);
        out[i] = s01 + s012 * (x[i] - x[i - 1]);
    }
    out[0] = dd2(x[0], x[1], f[0], f[1]) +
             dd3(x[0], x[1], x[2], f[0], f[1], f[2]) * (x[0] - x[1]);
    const std::size_t m = n - 1;
    out[m] = dd2(x[m - 1], x[m], f[m - 1], f[m]) +
             dd3(x[m - 2], x[m - 1], x[m], f[m - 2], f[m - 1], f[m]) *
                 (x[m] - x[m - 1]);
}

void second_derivative_into(std::span<const double> f, const Grid& grid,
                            std::span<double> out) {
    const auto& x = grid.points;
    const std::size_t n = f.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = 2.0 * dd3(x[i - 1], x[i], x[i + 1], f[i - 1], f[i], f[i + 1]);
    }
    if (n == 3) {
        out[0] = out[1];
        out[2] = out[1];
        return;
    }
    out[0] = cubic_second_deriv_at(x[0], x[1], x[2], x[3],
                                   f[0], f[1], f[2], f[3], x[0]);
    const std::size_t m = n - 1;
    out[m] = cubic_second_deriv_at(x[m - 3], x[m - 2], x[m - 1], x[m],
                                   f[m - 3], f[m - 2], f[m - 1], f[m], x[m]);
}

void derivative_into(std::span<const double> f, const Grid& grid, int order,
                     std::span<double> out) {
    switch (order) {
    case 0:
        for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
        return;
    case 1:
        first_derivative_into(f, grid, out);
        return;
    case 2:
        second_derivative_into(f, grid, out);
        return;
    default:
        throw InputError("derivative order must be 0, 1 or 2");
    }
}

double trapezoid_of_squares(std::span<const double> v, const Grid& grid) {
    const auto& x = grid.points;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        acc += 0.5 * (x[i + 1] - x[i]) * (v[i] * v[i] + v[i + 1] * v[i + 1]);
    }
    return acc;
}

// Difference curve first, then the stencil; scratch reused by the matrix builder.
double semi_metric_values(std::span<const double> a, std::span<const double> b,
                          const Grid& grid, int order,
                          std::vector<double>& diff, std::vector<double>& deriv) {
    const std::size_t n = a.size();
    diff.resize(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
    if (order == 0) return std::sqrt(trapezoid_of_squares(diff, grid));
    deriv.resize(n);
    derivative_into(diff, grid, order, deriv);
    return std::sqrt(trapezoid_of_squares(deriv, grid));
}

} // namespace

std::vector<double> derivative_values(std::span<const double> values,
                                      const Grid& grid, int order) {
    if (values.size() != grid.size()) {
        throw InputError("derivative_values: value/grid length mismatch");
    }
    if (grid.size() < 3) {
        throw InputError("derivative estimation needs a grid of length >= 3");
    }
    std::vector<double> out(values.size());
    derivative_into(values, grid, order, out);
    return out;
}

Curve second_derivative(const Curve& curve) {
    Curve out;
    out.grid = curve.grid;
    out.values = derivative_values(curve.values, *curve.grid, 2);
    return out;
}

double semi_metric(const Curve& x1, const Curve& x2, const SemiMetricSpec& spec) {
    validate(spec);
    if (!same_grid(x1.grid, x2.grid)) {
        throw InputError("semi_metric: curves live on different grids");
    }
    std::vector<double> diff, deriv;
    return semi_metric_values(x1.values, x2.values, *x1.grid,
                              spec.derivative_order, diff, deriv);
}

double integrated_squared_error(const Curve& a, const Curve& b) {
    if (!same_grid(a.grid, b.grid)) {
        throw InputError("integrated_squared_error: curves live on different grids");
    }
    const auto& x = a.grid->points;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < a.values.size(); ++i) {
        const double d0 = a.values[i] - b.values[i];
        const double d1 = a.values[i + 1] - b.values[i + 1];
        acc += 0.5 * (x[i + 1] - x[i]) * (d0 * d0 + d1 * d1);
    }
    return acc;
}

DistanceMatrix::DistanceMatrix(const CurveSeries& series, const SemiMetricSpec& spec)
    : n_(series.size()), d_(series.size() * series.size(), 0.0) {
    validate(spec);
    std::vector<double> diff, deriv;
    const Grid& grid = *series.grid;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double v = semi_metric_values(series[i].values, series[j].values,
                                                grid, spec.derivative_order,
                                                diff, deriv);
            d_[i * n_ + j] = v;
            d_[j * n_ + i] = v;
        }
    }
}

std::vector<double> distances_to(const CurveSeries& series, std::size_t count,
                                 const Curve& x_new, const SemiMetricSpec& spec) {
    validate(spec);
    if (count > series.size()) {
        throw InputError("distances_to: count exceeds series length");
    }
    if (!same_grid(series.grid, x_new.grid)) {
        throw InputError("distances_to: evaluation curve is on a different grid");
    }
    std::vector<double> out(count);
    std::vector<double> diff, deriv;
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = semi_metric_values(series[i].values, x_new.values, *series.grid,
                                    spec.derivative_order, diff, deriv);
    }
    return out;
}

} // namespace fgc
