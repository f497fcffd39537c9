#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "shearlab/functionals.hpp"
#include "shearlab/ratelab.hpp"

using namespace shearlab;
constexpr double pi = std::numbers::pi;

TEST_CASE("fit_power_law on exact power laws") {
    DecayCurve c;
    for (double t : log_spaced(1.0, 100.0, 20)) c.push(t, 1.0 / t);
    auto fit = fit_power_law(c, {1.0, 100.0});
    CHECK(fit.exponent == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    DecayCurve c2;
    for (double t : log_spaced(0.1, 1000.0, 30)) c2.push(t, 3.0 * std::pow(t, -0.5));
    auto fit2 = fit_power_law(c2, {0.1, 1000.0});
    CHECK(fit2.exponent == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit2.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
}

TEST_CASE("fit_power_law on an oscillating power law") {
    DecayCurve c;
    for (double t : log_spaced(1.0, 100.0, 40))
        c.push(t, (1.0 / t) * (1.0 + 0.2 * std::sin(std::log(t))));
    auto fit = fit_power_law(c, {1.0, 100.0});
    CHECK(fit.exponent >= -1.1);
    CHECK(fit.exponent <= -0.9);
}

TEST_CASE("fit_power_law guards") {
    DecayCurve c;
    c.push(1.0, 1.0);
    c.push(2.0, 0.5);
    c.push(3.0, 0.0);
    CHECK_THROWS_AS(fit_power_law(c, {1.0, 3.0}), NonPositiveOrdinate);
    DecayCurve c2;
    for (double t : {1.0, 2.0, 3.0, 4.0}) c2.push(t, 1.0 / t);
    CHECK_THROWS_AS(fit_power_law(c2, {1.0, 4.0}), TooFewPoints);
}

TEST_CASE("dissipation_time") {
    DecayCurve c;
    const double nu = 1e-2;
    c.push(1e-6, 1.0);
    for (double t : log_spaced(1.0, 1000.0, 64)) c.push(t, std::exp(-nu * t));
    auto cr = dissipation_time(c, std::exp(-1.0));
    CHECK(cr.crossed);
    CHECK(cr.tau == doctest::Approx(1.0 / nu).epsilon(1e-9));
    CHECK(dissipation_time(c, 1.0).tau == 0.0);

    DecayCurve flat;
    for (double t : {1.0, 2.0, 3.0}) flat.push(t, 1.0);
    auto nc = dissipation_time(flat, 0.5);
    CHECK(!nc.crossed);
    CHECK(nc.tau == 3.0);  // t_end as the lower bound
}

TEST_CASE("mixing_experiment: constant flow is flat") {
    Grid1D g = Grid1D::torus(1 << 10);
    auto c = analytic_flow({AnalyticKind::Constant, 1.0, 1, {}}, g);
    auto g0 = ComplexField::mode(g, 1);
    auto res = mixing_experiment(c, 0.5, 1, log_spaced(10.0, 1000.0, 20), g0);
    CHECK(std::abs(res.fit.exponent) < 1e-6);
    CHECK(res.predicted_exponent == doctest::Approx(-1.0));
}

TEST_CASE("mixing_experiment truncates at the resolution cap") {
    auto u = symmetrize(sample_fbm(0.5, Grid1D::interval(1 << 12), {42, 0}));
    auto g0 = ComplexField::mode(u.grid(), 1);
    auto times = log_spaced(1.0, 1e5, 40);
    auto res = mixing_experiment(u, 0.5, 1, times, g0);
    CHECK(!res.dropped_times.empty());
    CHECK(res.curve.abscissae.back() <= res.max_usable_time);
    CHECK(res.fit.n_points >= 5);
}

TEST_CASE("dissipation_experiment: heat baseline recovers slope -1") {
    Grid1D g = Grid1D::torus(1 << 10);
    auto zero = analytic_flow({AnalyticKind::Constant, 0.0, 1, {}}, g);
    auto g0 = ComplexField::mode(g, 1);
    DissipationExperimentOptions o;
    o.tau_exponent = 1.0;  // pure-diffusion time scale
    auto res = dissipation_experiment(zero, 0.5, 1, log_spaced(1e-4, 1e-2, 5), g0, o);
    CHECK(res.fit.exponent == doctest::Approx(-1.0).epsilon(1e-3));
    for (const auto& row : res.table.rows) CHECK(row.valid);
    // monotone: tau non-increasing in nu
    for (std::size_t i = 1; i < res.table.rows.size(); ++i)
        CHECK(res.table.rows[i].value <= res.table.rows[i - 1].value * 1.05);
}

TEST_CASE("dissipation_experiment records no-crossing cells and refuses thin fits") {
    Grid1D g = Grid1D::torus(1 << 10);
    auto zero = analytic_flow({AnalyticKind::Constant, 0.0, 1, {}}, g);
    auto g0 = ComplexField::mode(g, 1);
    DissipationExperimentOptions o;
    o.tau_exponent = 0.0;
    o.t_end_scale = 10.0;  // t_end = 10 < tau = 1/nu for every nu below 0.1
    CHECK_THROWS_AS(
        dissipation_experiment(zero, 0.5, 1, log_spaced(1e-4, 1e-2, 5), g0, o),
        TooFewPoints);
}

TEST_CASE("fbm dissipation sweep lands on the predicted slope band" *
          doctest::timeout(600)) {
    // nominal alpha = H = 0.5: predicted slope -0.2
    std::vector<double> slopes;
    for (int s = 0; s < 4; ++s) {
        auto u = symmetrize(sample_fbm(0.5, Grid1D::interval(1 << 12), {500u + s, 0}));
        auto g0 = ComplexField::mode(u.grid(), 1);
        auto res = dissipation_experiment(u, 0.5, 1, log_spaced(1e-6, 1e-3, 7), g0);
        slopes.push_back(res.fit.exponent);
    }
    const double med = oracles::median(slopes);
    CHECK(med >= -0.27);
    CHECK(med <= -0.13);
}

TEST_CASE("wei_bound_experiment") {
    Grid1D g = Grid1D::torus(1 << 12);
    auto c = analytic_flow({AnalyticKind::Constant, 1.0, 1, {}}, g);
    std::vector<ComplexField> probes{ComplexField::mode(g, 1)};
    auto cells = wei_bound_experiment(c, 1e-2, log_spaced(1.0, 50.0, 6), 0.3, probes);
    for (const auto& cell : cells) {
        CHECK(cell.ok);
        CHECK(cell.bound == doctest::Approx(std::exp(pi / 2)).epsilon(1e-12));
        CHECK(cell.measured <= 1.0 + 1e-12);
    }

    auto sinf = analytic_flow({AnalyticKind::Sine, 0.0, 1, {}}, g);
    for (double delta : {0.1, 0.2, 0.4}) {
        auto sc = wei_bound_experiment(sinf, 1e-2, log_spaced(1.0, 200.0, 8), delta, probes);
        for (const auto& cell : sc) CHECK(cell.ok);
    }
}

TEST_CASE("interpolation_check closed forms and ensemble stability") {
    Grid1D g = Grid1D::torus(256);
    const double s1 = 0.5, s2 = 0.5, eps = 0.01;
    for (int eta : {1, 5, 37}) {
        const double expect =
            std::pow(1.0 + eta * eta, -s1 * eps / (2.0 * (s1 + s2)));
        CHECK(interpolation_check(ComplexField::mode(g, eta), s1, s2) ==
              doctest::Approx(expect).epsilon(1e-12));
        CHECK(expect <= 1.0);
    }
    CHECK(interpolation_check(ComplexField::mode(g, 0), s1, s2) ==
          doctest::Approx(1.0).epsilon(1e-12));

    GaussianStream rng({77, 0});
    double max64 = 0.0, max128 = 0.0;
    for (int i = 0; i < 128; ++i) {
        const double r = interpolation_check(oracles::random_field(g, rng), s1, s2);
        if (i < 64) max64 = std::max(max64, r);
        max128 = std::max(max128, r);
    }
    CHECK(std::isfinite(max128));
    CHECK((max128 - max64) / max64 < 0.05);  // stable under ensemble doubling

    std::vector<std::complex<double>> z(g.size(), {0.0, 0.0});
    CHECK_THROWS_AS(interpolation_check(ComplexField(g, z), s1, s2), ZeroField);
}

TEST_CASE("log_spaced endpoints") {
    auto v = log_spaced(0.1, 1000.0, 9);
    CHECK(v.front() == 0.1);
    CHECK(v.back() == 1000.0);
    CHECK(v.size() == 9);
    for (std::size_t i = 1; i < v.size(); ++i)
        CHECK(v[i] / v[i - 1] == doctest::Approx(v[1] / v[0]).epsilon(1e-9));
}
