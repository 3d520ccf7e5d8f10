#include <doctest.h>

#include <cmath>
#include <random>

#include "fgc/gcgmc.hpp"
#include "fgc/simulate.hpp"
#include "oracle.hpp"

using namespace fgc;

namespace {

Curve const_curve(const GridPtr& g, double v) {
    return Curve{g, std::vector<double>(g->size(), v)};
}

CurveSeries random_series(const GridPtr& g, std::size_t n, std::mt19937_64& rng,
                          double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, scale);
    CurveSeries s;
    s.grid = g;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v(g->size());
        for (auto& x : v) x = gauss(rng);
        s.curves.push_back(Curve{g, std::move(v)});
    }
    return s;
}

// Re-implements one full forecast step from the formulas: lagged-pair
// regression for the two auto forecasts, plug-in of the predicted X into the
// contemporaneous regression for the cross forecasts, all on oracle code.
struct StepRef {
    oracle::Vec y_auto, y_cross, x_auto, x_cross;
    double bw_auto_x, bw_auto_y, bw_cross_x, bw_cross_y;
};

StepRef reference_step(const CurveSeries& x, const CurveSeries& y,
                       std::size_t t, int q, const std::vector<double>& probs) {
    const std::size_t w = t - 1;
    oracle::Mat xw, yw;
    for (std::size_t i = 0; i < w; ++i) {
        xw.push_back(x[i].values);
        yw.push_back(y[i].values);
    }
    const oracle::Vec& gx = x.grid->points;
    const oracle::Vec& gy = y.grid->points;

    oracle::Mat x_lag(xw.begin(), xw.end() - 1);
    oracle::Mat x_lead(xw.begin() + 1, xw.end());
    oracle::Mat y_lag(yw.begin(), yw.end() - 1);
    oracle::Mat y_lead(yw.begin() + 1, yw.end());

    StepRef ref;
    ref.bw_auto_x =
        oracle::select_bandwidth(x_lag, x_lead, gx, gx, q, probs).bandwidth;
    ref.bw_auto_y =
        oracle::select_bandwidth(y_lag, y_lead, gy, gy, q, probs).bandwidth;
    ref.bw_cross_y = oracle::select_bandwidth(xw, yw, gx, gy, q, probs).bandwidth;
    ref.bw_cross_x = oracle::select_bandwidth(yw, xw, gy, gx, q, probs).bandwidth;

    ref.x_auto = oracle::nw_predict(x_lag, x_lead, gx, q, ref.bw_auto_x,
                                    xw.back());
    ref.y_auto = oracle::nw_predict(y_lag, y_lead, gy, q, ref.bw_auto_y,
                                    yw.back());
    ref.y_cross = oracle::nw_predict(xw, yw, gx, q, ref.bw_cross_y, ref.x_auto);
    ref.x_cross = oracle::nw_predict(yw, xw, gy, q, ref.bw_cross_x, ref.y_auto);
    return ref;
}

} // namespace

TEST_CASE("gcgmc value from error sums") {
    CHECK(*gcgmc_from_sums(1.0, 1.0) == 0.0);        // equal sums
    CHECK(*gcgmc_from_sums(0.0, 3.0) == 1.0);        // perfect cross model
    CHECK(*gcgmc_from_sums(2.0, 1.0) == -1.0);       // doubled cross error
    CHECK(!gcgmc_from_sums(1.0, 0.0).has_value());   // undefined direction
    CHECK(*gcgmc_from_sums(0.5, 2.0) == 0.75);
}

TEST_CASE("decision rule is total and deterministic") {
    CHECK(decide(-0.1, 0.2) == Decision::XCausesY);
    CHECK(decide(0.2, -0.1) == Decision::YCausesX);
    CHECK(decide(0.1, 0.2) == Decision::YMorePredictable);
    CHECK(decide(0.2, 0.1) == Decision::XMorePredictable);
    CHECK(decide(-0.3, -0.1) == Decision::YMorePredictable);
    CHECK(decide(0.1, 0.1) == Decision::Indeterminate);
    CHECK(decide(std::nullopt, 0.4) == Decision::Indeterminate);
    CHECK(decide(0.4, std::nullopt) == Decision::Indeterminate);

    std::mt19937_64 rng(71);
    std::normal_distribution<double> gauss;
    for (int rep = 0; rep < 300; ++rep) {
        const double gx = gauss(rng), gy = gauss(rng);
        int hits = 0;
        const Decision d = decide(gx, gy);
        for (Decision cand : {Decision::XCausesY, Decision::YCausesX,
                              Decision::YMorePredictable,
                              Decision::XMorePredictable,
                              Decision::Indeterminate}) {
            if (d == cand) ++hits;
        }
        CHECK(hits == 1);
        CHECK(decide(gx, gy) == d);
    }
}

TEST_CASE("constant response window gives a zero auto error") {
    auto g = make_uniform_grid(9);
    std::mt19937_64 rng(73);
    const CurveSeries x = random_series(g, 8, rng);
    CurveSeries y;
    y.grid = g;
    for (int i = 0; i < 8; ++i) y.curves.push_back(const_curve(g, 4.0));
    EwConfig cfg;
    cfg.semimetric.derivative_order = 0;
    auto [ry, rx] = forecast_step(x, y, 6, cfg);
    CHECK(ry.ise_auto == 0.0);
    for (double v : ry.auto_forecast.values) CHECK(v == 4.0);
}

TEST_CASE("window of length 2 forces single-pair forecasts") {
    auto g = make_uniform_grid(9);
    std::mt19937_64 rng(79);
    const CurveSeries x = random_series(g, 4, rng);
    const CurveSeries y = random_series(g, 4, rng);
    EwConfig cfg;
    cfg.semimetric.derivative_order = 0;
    auto [ry, rx] = forecast_step(x, y, 3, cfg);
    // auto forecasts have a single lagged pair: the response is curve 2
    for (std::size_t j = 0; j < g->size(); ++j) {
        CHECK(ry.auto_forecast.values[j] == y[1].values[j]);
        CHECK(rx.auto_forecast.values[j] == x[1].values[j]);
    }
    CHECK(ry.ise_auto ==
          doctest::Approx(integrated_squared_error(y[2], y[1])).epsilon(1e-14));
}

TEST_CASE("forecast step matches an independent reference implementation") {
    auto g = make_uniform_grid(7);
    std::mt19937_64 rng(20240303);
    const CurveSeries x = random_series(g, 6, rng);
    const CurveSeries y = random_series(g, 6, rng);
    EwConfig cfg;
    cfg.semimetric.derivative_order = 0;
    for (std::size_t t = 4; t <= 6; ++t) {
        auto [ry, rx] = forecast_step(x, y, t, cfg);
        const StepRef ref =
            reference_step(x, y, t, 0, cfg.search.quantile_grid);
        CHECK(ry.bandwidth_auto == doctest::Approx(ref.bw_auto_y).epsilon(1e-10));
        CHECK(rx.bandwidth_auto == doctest::Approx(ref.bw_auto_x).epsilon(1e-10));
        CHECK(ry.bandwidth_cross ==
              doctest::Approx(ref.bw_cross_y).epsilon(1e-10));
        CHECK(rx.bandwidth_cross ==
              doctest::Approx(ref.bw_cross_x).epsilon(1e-10));
        for (std::size_t j = 0; j < g->size(); ++j) {
            CHECK(ry.auto_forecast.values[j] ==
                  doctest::Approx(ref.y_auto[j]).epsilon(1e-10));
            CHECK(ry.cross_forecast.values[j] ==
                  doctest::Approx(ref.y_cross[j]).epsilon(1e-10));
            CHECK(rx.auto_forecast.values[j] ==
                  doctest::Approx(ref.x_auto[j]).epsilon(1e-10));
            CHECK(rx.cross_forecast.values[j] ==
                  doctest::Approx(ref.x_cross[j]).epsilon(1e-10));
        }
    }
}

TEST_CASE("forecast step rejects out-of-range indices") {
    auto g = make_uniform_grid(7);
    std::mt19937_64 rng(83);
    const CurveSeries x = random_series(g, 5, rng);
    const CurveSeries y = random_series(g, 5, rng);
    CHECK_THROWS_AS(forecast_step(x, y, 2, EwConfig{}), InputError);
    CHECK_THROWS_AS(forecast_step(x, y, 6, EwConfig{}), InputError);
}

TEST_CASE("stored record errors are recomputable from the stored curves") {
    SimConfig sim;
    sim.n = 14;
    sim.p = 9;
    sim.seed = 12;
    auto [x, y] = simulate_pair(sim);
    EwConfig cfg;
    cfg.semimetric.derivative_order = 0;
    const GcGmcReport rep = run_expanding_window(x, y, WindowPlan{14, 10}, cfg);
    REQUIRE(rep.records_y.size() == 4);
    for (const auto& recs : {rep.records_x, rep.records_y}) {
        for (const auto& r : recs) {
            CHECK(std::fabs(r.ise_auto - integrated_squared_error(
                                             r.realized, r.auto_forecast)) <
                  1e-10);
            CHECK(std::fabs(r.ise_cross - integrated_squared_error(
                                              r.realized, r.cross_forecast)) <
                  1e-10);
        }
    }
    // sums and statistics agree with the records
    double sa = 0.0, sc = 0.0;
    for (const auto& r : rep.records_y) {
        sa += r.ise_auto;
        sc += r.ise_cross;
    }
    CHECK(rep.sum_ise_auto_y == sa);
    CHECK(rep.sum_ise_cross_y == sc);
    CHECK(*rep.gcgmc_y == 1.0 - sc / sa);
}

TEST_CASE("perfectly self-predictable series yields an undefined direction") {
    auto g = make_uniform_grid(9);
    std::mt19937_64 rng(89);
    const CurveSeries x = random_series(g, 10, rng);
    CurveSeries y;
    y.grid = g;
    for (int i = 0; i < 10; ++i) y.curves.push_back(const_curve(g, 1.0));
    EwConfig cfg;
    cfg.semimetric.derivative_order = 0;
    const GcGmcReport rep = run_expanding_window(x, y, WindowPlan{10, 6}, cfg);
    CHECK(!rep.gcgmc_y.has_value());
    CHECK(rep.decision == Decision::Indeterminate);
}

TEST_CASE("swapping the inputs swaps the directional results exactly") {
    SimConfig sim;
    sim.n = 16;
    sim.p = 11;
    sim.seed = 77;
    auto [x, y] = simulate_pair(sim);
    EwConfig cfg;
    cfg.semimetric.derivative_order = 0;
    const WindowPlan plan{16, 12};
    const GcGmcReport ab = run_expanding_window(x, y, plan, cfg);
    const GcGmcReport ba = run_expanding_window(y, x, plan, cfg);
    CHECK(*ab.gcgmc_x == *ba.gcgmc_y);
    CHECK(*ab.gcgmc_y == *ba.gcgmc_x);
    CHECK(ab.sum_ise_auto_x == ba.sum_ise_auto_y);
    CHECK(ab.sum_ise_cross_y == ba.sum_ise_cross_x);
    const Decision d = ab.decision;
    const Decision s = ba.decision;
    if (d == Decision::XCausesY) CHECK(s == Decision::YCausesX);
    if (d == Decision::YCausesX) CHECK(s == Decision::XCausesY);
    if (d == Decision::YMorePredictable) CHECK(s == Decision::XMorePredictable);
    if (d == Decision::XMorePredictable) CHECK(s == Decision::YMorePredictable);
    if (d == Decision::Indeterminate) CHECK(s == Decision::Indeterminate);
}

TEST_CASE("rescaling both series by a common factor leaves the statistics unchanged") {
    SimConfig sim;
    sim.n = 14;
    sim.p = 9;
    sim.seed = 5;
    auto [x, y] = simulate_pair(sim);
    EwConfig cfg;
    cfg.semimetric.derivative_order = 2;
    const WindowPlan plan{14, 10};
    const GcGmcReport base = run_expanding_window(x, y, plan, cfg);
    for (double c : {2.0, 3.0, 0.5}) {
        CurveSeries xs = x, ys = y;
        for (auto& cset : {&xs, &ys}) {
            for (auto& curve : cset->curves) {
                for (auto& v : curve.values) v *= c;
            }
        }
        const GcGmcReport scaled = run_expanding_window(xs, ys, plan, cfg);
        CHECK(*scaled.gcgmc_x == doctest::Approx(*base.gcgmc_x).epsilon(1e-10));
        CHECK(*scaled.gcgmc_y == doctest::Approx(*base.gcgmc_y).epsilon(1e-10));
        CHECK(scaled.decision == base.decision);
    }
}

TEST_CASE("expanding window covers every test index and is thread invariant") {
    SimConfig sim;
    sim.n = 18;
    sim.p = 9;
    sim.seed = 31;
    auto [x, y] = simulate_pair(sim);
    EwConfig cfg;
    cfg.semimetric.derivative_order = 0;
    const WindowPlan plan{18, 12};
    const GcGmcReport serial = run_expanding_window(x, y, plan, cfg);
    REQUIRE(serial.records_y.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(serial.records_y[i].time_index == 13 + i);
    }
    EwConfig par = cfg;
    par.n_threads = 3;
    const GcGmcReport threaded = run_expanding_window(x, y, plan, par);
    CHECK(*serial.gcgmc_x == *threaded.gcgmc_x);
    CHECK(*serial.gcgmc_y == *threaded.gcgmc_y);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(serial.records_y[i].ise_cross == threaded.records_y[i].ise_cross);
    }
}

TEST_CASE("frozen bandwidths reuse the initial-window selection at every step") {
    SimConfig sim;
    sim.n = 15;
    sim.p = 9;
    sim.seed = 44;
    auto [x, y] = simulate_pair(sim);
    EwConfig cfg;
    cfg.semimetric.derivative_order = 0;
    cfg.refresh_bandwidths = false;
    const GcGmcReport rep = run_expanding_window(x, y, WindowPlan{15, 10}, cfg);
    for (const auto& r : rep.records_y) {
        CHECK(r.bandwidth_auto == rep.records_y.front().bandwidth_auto);
        CHECK(r.bandwidth_cross == rep.records_y.front().bandwidth_cross);
    }
}

TEST_CASE("plan validation rejects inconsistent windows") {
    CHECK_THROWS_AS(validate(WindowPlan{10, 1}), InputError);
    CHECK_THROWS_AS(validate(WindowPlan{10, 10}), InputError);
    SimConfig sim;
    sim.n = 12;
    sim.p = 9;
    auto [x, y] = simulate_pair(sim);
    CHECK_THROWS_AS(run_expanding_window(x, y, WindowPlan{13, 10}, EwConfig{}),
                    InputError);
}

TEST_CASE("mismatched series lengths name both lengths") {
    auto g = make_uniform_grid(9);
    std::mt19937_64 rng(97);
    const CurveSeries x = random_series(g, 8, rng);
    const CurveSeries y = random_series(g, 7, rng);
    try {
        run_expanding_window(x, y, WindowPlan{8, 5}, EwConfig{});
        FAIL("expected InputError");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find('8') != std::string::npos);
        CHECK(msg.find('7') != std::string::npos);
    }
}
