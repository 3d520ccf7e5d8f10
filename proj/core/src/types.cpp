#include "fgc/types.hpp"

#include <algorithm>

namespace fgc {

GridPtr make_grid(std::vector<double> points) {
    if (points.size() < 3) {
        throw InputError("grid needs at least 3 points, got " +
                         std::to_string(points.size()));
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i])) {
            throw InputError("grid point " + std::to_string(i + 1) +
                             " is not finite");
        }
        if (i > 0 && points[i] <= points[i - 1]) {
            throw InputError("grid points must be strictly increasing "
                             "(violated at point " + std::to_string(i + 1) + ")");
        }
    }
    return std::make_shared<Grid>(Grid{std::move(points)});
}

GridPtr make_uniform_grid(std::size_t p, double a, double b) {
    if (p < 3) throw InputError("uniform grid needs at least 3 points");
    if (!(a < b)) throw InputError("uniform grid needs a < b");
    std::vector<double> pts(p);
    for (std::size_t i = 0; i < p; ++i) {
        pts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(p - 1);
    }
    pts.back() = b;
    return make_grid(std::move(pts));
}

bool same_grid(const GridPtr& a, const GridPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->points == b->points;
}

Curve make_curve(GridPtr grid, std::vector<double> values) {
    if (!grid) throw InputError("curve requires a grid");
    if (values.size() != grid->size()) {
        throw InputError("curve has " + std::to_string(values.size()) +
                         " values but grid has " + std::to_string(grid->size()) +
                         " points");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw InputError("curve value " + std::to_string(i + 1) +
                             " is not finite");
        }
    }
    return Curve{std::move(grid), std::move(values)};
}

CurveSeries make_series(GridPtr grid, std::vector<std::vector<double>> rows,
                        std::string label) {
    if (!grid) throw InputError("series requires a grid");
    if (rows.empty()) throw InputError("series requires at least one curve");
    CurveSeries s;
    s.grid = grid;
    s.label = std::move(label);
    s.curves.reserve(rows.size());
    for (auto& r : rows) s.curves.push_back(make_curve(grid, std::move(r)));
    return s;
}

void validate(const SemiMetricSpec& spec) {
    if (spec.derivative_order < 0 || spec.derivative_order > 2) {
        throw InputError("derivative_order must be 0, 1 or 2, got " +
                         std::to_string(spec.derivative_order));
    }
}

} // namespace fgc
