#include "fgc/simulate.hpp"

#include <cmath>
#include <string>

#include "fgc/threads.hpp"

namespace fgc {

namespace {

// Composite Simpson on [0, 1] with an even number of panels.
double simpson_unit(double (*f)(double), std::size_t panels) {
    const double h = 1.0 / static_cast<double>(panels);
    double acc = f(0.0) + f(1.0);
    for (std::size_t i = 1; i < panels; ++i) {
        acc += f(i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

double exp_v_squared(double v) { return std::exp(v * v); }

double unit_exp_integral() {
    static const double value = simpson_unit(exp_v_squared, 20000);
    return value;
}

// Trapezoid quadrature weights of a grid.
std::vector<double> quad_weights(const Grid& grid) {
    const auto& x = grid.points;
    const std::size_t p = x.size();
    std::vector<double> w(p, 0.0);
    for (std::size_t i = 0; i + 1 < p; ++i) {
        const double half = 0.5 * (x[i + 1] - x[i]);
        w[i] += half;
        w[i + 1] += half;
    }
    return w;
}

void brownian_values(std::size_t p, double dv, std::mt19937_64& rng,
                     std::vector<double>& out) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double step = std::sqrt(dv);
    out.resize(p);
    out[0] = 0.0;
    for (std::size_t i = 1; i < p; ++i) {
        out[i] = out[i - 1] + step * gauss(rng);
    }
}

std::vector<Curve> far1_full(const SimConfig& config, const GridPtr& grid,
                             std::mt19937_64& rng) {
    const std::size_t p = config.p;
    const std::size_t total = config.burn_in + config.n;
    const double dv = 1.0 / static_cast<double>(p - 1);
    const std::vector<double> tw = quad_weights(*grid);
    std::vector<double> e_half(p);
    for (std::size_t j = 0; j < p; ++j) {
        const double v = grid->points[j];
        e_half[j] = std::exp(0.5 * v * v);
    }

    std::vector<Curve> xs;
    xs.reserve(total);
    std::vector<double> b;
    brownian_values(p, dv, rng, b);
    xs.push_back(Curve{grid, b});
    for (std::size_t t = 1; t < total; ++t) {
        const auto& prev = xs.back().values;
        // The operator kernel is separable, so the integral reduces to one
        // trapezoid sum scaled pointwise.
        double a = 0.0;
        for (std::size_t j = 0; j < p; ++j) a += tw[j] * e_half[j] * prev[j];
        brownian_values(p, dv, rng, b);
        Curve next{grid, std::vector<double>(p)};
        for (std::size_t j = 0; j < p; ++j) {
            next.values[j] = config.psi_scale * e_half[j] * a + b[j];
        }
        xs.push_back(std::move(next));
    }
    return xs;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CurveSeries tail_series(std::vector<Curve>&& full, const GridPtr& grid,
                        std::size_t n, std::string label) {
    CurveSeries s;
    s.grid = grid;
    s.label = std::move(label);
    s.curves.assign(std::make_move_iterator(full.end() - static_cast<std::ptrdiff_t>(n)),
                    std::make_move_iterator(full.end()));
    return s;
}

} // namespace

double psi_hilbert_schmidt_norm(double psi_scale) {
    return std::abs(psi_scale) * unit_exp_integral();
}

void validate(const SimConfig& config) {
    if (config.n < 10) throw InputError("simulation needs n >= 10 curves");
    if (config.p < 3) throw InputError("simulation needs p >= 3 grid points");
    const double hs = psi_hilbert_schmidt_norm(config.psi_scale);
    if (hs >= 1.0) {
        throw InputError("psi_scale " + std::to_string(config.psi_scale) +
                         " gives operator Hilbert-Schmidt norm " +
                         std::to_string(hs) + " >= 1; the X process would not "
                         "be stationary");
    }
    if (std::abs(config.ar_coefficient) >= 1.0) {
        throw InputError("ar_coefficient must lie in (-1, 1)");
    }
    if (config.noise_scale < 0.0) {
        throw InputError("noise_scale must be nonnegative");
    }
}

Curve brownian_path(std::size_t p, std::mt19937_64& rng) {
    if (p < 3) throw InputError("brownian_path needs p >= 3");
    const GridPtr grid = make_uniform_grid(p);
    std::vector<double> v;
    brownian_values(p, 1.0 / static_cast<double>(p - 1), rng, v);
    return Curve{grid, std::move(v)};
}

CurveSeries simulate_far1_x(const SimConfig& config, std::mt19937_64& rng) {
    validate(config);
    const GridPtr grid = make_uniform_grid(config.p);
    auto full = far1_full(config, grid, rng);
    return tail_series(std::move(full), grid, config.n, "x");
}

CurveSeries response_from(const CurveSeries& x_full, const CurveSeries& eps_full,
                          double ar_coefficient) {
    if (x_full.size() != eps_full.size()) {
        throw InputError("response_from: driver and noise series lengths differ");
    }
    if (!same_grid(x_full.grid, eps_full.grid)) {
        throw InputError("response_from: driver and noise grids differ");
    }
    const GridPtr grid = x_full.grid;
    const std::size_t p = grid->size();
    const std::vector<double> tw = quad_weights(*grid);
    std::vector<double> sqrt_u(p);
    for (std::size_t j = 0; j < p; ++j) sqrt_u[j] = std::sqrt(grid->points[j]);

    CurveSeries y;
    y.grid = grid;
    y.label = "y";
    y.curves.reserve(x_full.size());
    y.curves.push_back(eps_full[0]);
    for (std::size_t t = 1; t < x_full.size(); ++t) {
        const auto& xt = x_full[t].values;
        double c = 0.0;
        for (std::size_t j = 0; j < p; ++j) c += tw[j] * sqrt_u[j] * xt[j];
        const auto& prev = y.curves.back().values;
        const auto& eps = eps_full[t].values;
        Curve next{grid, std::vector<double>(p)};
        for (std::size_t j = 0; j < p; ++j) {
            next.values[j] = ar_coefficient * prev[j] + sqrt_u[j] * c + eps[j];
        }
        y.curves.push_back(std::move(next));
    }
    return y;
}

std::pair<CurveSeries, CurveSeries> simulate_pair(const SimConfig& config) {
    validate(config);
    std::mt19937_64 rng_x(splitmix64(config.seed ^ 0x9e3779b97f4a7c15ULL));
    std::mt19937_64 rng_e(splitmix64(config.seed ^ 0x7f4a7c159e3779b9ULL));

    const GridPtr grid = make_uniform_grid(config.p);
    auto x_full_curves = far1_full(config, grid, rng_x);
    CurveSeries x_full;
    x_full.grid = grid;
    x_full.label = "x";
    x_full.curves = std::move(x_full_curves);

    const std::size_t total = config.burn_in + config.n;
    const double dv = 1.0 / static_cast<double>(config.p - 1);
    CurveSeries zero_forcing;
    zero_forcing.grid = grid;
    zero_forcing.curves.assign(total,
                               Curve{grid, std::vector<double>(config.p, 0.0)});

    // Signal recursion with zero forcing, then iid observation noise on top:
    // Y_t = Z_t + noise_scale * W_t with W_t a standard Brownian path. The
    // noise must not feed back into the recursion, otherwise it accumulates
    // into a self-predictable component that masks the cross-series signal.
    CurveSeries y_full =
        response_from(x_full, zero_forcing, config.ar_coefficient);
    std::vector<double> b;
    for (std::size_t t = 0; t < total; ++t) {
        brownian_values(config.p, dv, rng_e, b);
        auto& v = y_full.curves[t].values;
        for (std::size_t j = 0; j < config.p; ++j) {
            v[j] += config.noise_scale * b[j];
        }
    }

    CurveSeries x = tail_series(std::move(x_full.curves), grid, config.n, "x");
    CurveSeries y = tail_series(std::move(y_full.curves), grid, config.n, "y");
    return {std::move(x), std::move(y)};
}

void validate(const McPlan& plan) {
    if (plan.n_values.empty() || plan.p_values.empty()) {
        throw InputError("monte carlo plan needs at least one n and one p");
    }
    if (plan.replications < 1) {
        throw InputError("replications must be at least 1");
    }
    if (!(plan.train_fraction > 0.0 && plan.train_fraction < 1.0)) {
        throw InputError("train_fraction must lie strictly between 0 and 1");
    }
}

std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t n,
                               std::size_t p, std::size_t replication) {
    std::uint64_t s = splitmix64(master_seed);
    s = splitmix64(s ^ static_cast<std::uint64_t>(n));
    s = splitmix64(s ^ static_cast<std::uint64_t>(p));
    s = splitmix64(s ^ static_cast<std::uint64_t>(replication));
    return s;
}

McResult run_monte_carlo(const McPlan& plan, const SimConfig& config_template,
                         int n_threads) {
    validate(plan);

    struct Task {
        std::size_t cell;
        std::size_t rep;
    };
    std::vector<McCell> cells;
    std::vector<Task> tasks;
    for (std::size_t n : plan.n_values) {
        for (std::size_t p : plan.p_values) {
            SimConfig probe = config_template;
            probe.n = n;
            probe.p = p;
            validate(probe);
            const std::size_t cell = cells.size();
            cells.push_back(McCell{n, p, 0, 0, 0, plan.replications});
            for (std::size_t r = 0; r < plan.replications; ++r) {
                tasks.push_back(Task{cell, r});
            }
        }
    }

    enum : unsigned char { kPredictable = 1, kCausal = 2, kUndefined = 4 };
    std::vector<unsigned char> outcomes(tasks.size(), 0);

    parallel_for(tasks.size(), n_threads, [&](std::size_t i) {
        const Task& task = tasks[i];
        const McCell& cell = cells[task.cell];
        SimConfig cfg = config_template;
        cfg.n = cell.n;
        cfg.p = cell.p;
        cfg.seed = replication_seed(plan.master_seed, cell.n, cell.p, task.rep);
        auto [x, y] = simulate_pair(cfg);

        WindowPlan window;
        window.n_total = cell.n;
        window.n_train_initial = static_cast<std::size_t>(
            plan.train_fraction * static_cast<double>(cell.n));
        if (window.n_train_initial < 2) window.n_train_initial = 2;
        if (window.n_train_initial >= cell.n) window.n_train_initial = cell.n - 1;

        EwConfig ew;
        ew.n_threads = 1;
        // Plain L2 distances: the generated curves are Brownian-driven, so
        // finite-difference derivatives of them are noise amplification, not
        // signal.
        ew.semimetric.derivative_order = 0;
        const GcGmcReport report = run_expanding_window(x, y, window, ew);

        unsigned char out = 0;
        if (!report.gcgmc_x.has_value() || !report.gcgmc_y.has_value()) {
            out = kUndefined;
        } else {
            if (*report.gcgmc_y > *report.gcgmc_x) out |= kPredictable;
            if (*report.gcgmc_y > 0.0 && *report.gcgmc_x < 0.0) out |= kCausal;
        }
        outcomes[i] = out;
    });

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        McCell& cell = cells[tasks[i].cell];
        if (outcomes[i] & kUndefined) {
            ++cell.undefined_count;
        } else {
            if (outcomes[i] & kPredictable) ++cell.count_predictable;
            if (outcomes[i] & kCausal) ++cell.count_causal;
        }
    }
    return cells;
}

} // namespace fgc
