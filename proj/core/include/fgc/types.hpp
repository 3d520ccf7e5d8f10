#ifndef FGC_TYPES_HPP
#define FGC_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgc {

/// Thrown for invalid user input: malformed files, inconsistent shapes,
/// out-of-range configuration. The CLI maps it to exit status 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ordered sample locations of a function support [a, b].
struct Grid {
    std::vector<double> points;

    std::size_t size() const { return points.size(); }
    double span() const { return points.back() - points.front(); }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validates and wraps grid points: strictly increasing, finite, length >= 3.
GridPtr make_grid(std::vector<double> points);

/// p equally spaced points covering [a, b].
GridPtr make_uniform_grid(std::size_t p, double a = 0.0, double b = 1.0);

/// True when both handles refer to the same sample locations (pointer
/// identity short-circuits the element comparison).
bool same_grid(const GridPtr& a, const GridPtr& b);

/// One functional observation: values sampled on a grid.
struct Curve {
    GridPtr grid;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

Curve make_curve(GridPtr grid, std::vector<double> values);

/// A time-ordered collection of curves on one common grid.
///
/// Construction requires at least one curve; analysis entry points impose
/// their own stricter length preconditions (e.g. the expanding-window
/// driver needs enough curves for a training window plus a test point).
struct CurveSeries {
    GridPtr grid;
    std::vector<Curve> curves;
    std::string label;

    std::size_t size() const { return curves.size(); }
    const Curve& operator[](std::size_t i) const { return curves[i]; }
};

CurveSeries make_series(GridPtr grid, std::vector<std::vector<double>> rows,
                        std::string label = "");

/// Distance configuration: L2 between q-th derivatives, q in {0, 1, 2}.
/// q = 2 is blind to affine differences (a semi-metric, not a metric).
struct SemiMetricSpec {
    int derivative_order = 2;
};

void validate(const SemiMetricSpec& spec);

/// Kernel weighting function for distance ratios.
struct KernelSpec {
    enum class Kind { Quadratic };
    Kind kind = Kind::Quadratic;
};

} // namespace fgc

#endif // FGC_TYPES_HPP
