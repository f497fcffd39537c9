#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "shearlab/functionals.hpp"
#include "shearlab/stochastic.hpp"

using namespace shearlab;
constexpr double pi = std::numbers::pi;

TEST_CASE("bundle: reproducible, right moments") {
    BrownianBundle a(500, 64, 0.01, {10, 1});
    BrownianBundle b(500, 64, 0.01, {10, 1});
    BrownianBundle c(500, 64, 0.01, {10, 2});
    CHECK(a.raw() == b.raw());
    CHECK(a.raw() != c.raw());
    CHECK(a.horizon() == doctest::Approx(0.64));

    double mean = 0.0, var = 0.0;
    for (double x : a.raw()) mean += x;
    mean /= a.raw().size();
    for (double x : a.raw()) var += (x - mean) * (x - mean);
    var /= (a.raw().size() - 1.0);
    const std::size_t n = a.raw().size();
    CHECK(std::abs(mean) < 4.0 * std::sqrt(0.01 / n));
    CHECK(std::abs(var - 0.01) < 4.0 * 0.01 * std::sqrt(2.0 / n));
}

TEST_CASE("feynman_kac: xi = 0 with constant g0 is exact") {
    Grid1D g = Grid1D::torus(64);
    auto u = analytic_flow({AnalyticKind::Sine, 0.0, 1, {}}, g);
    auto g0 = ComplexField::mode(g, 0);  // g0 == 1
    BrownianBundle b(200, 32, 0.01, {5, 0});
    auto fk = feynman_kac_field(u, g0, 0.0, 1e-2, 0.32, b);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(std::abs(fk.estimate.values()[j] - 1.0) < 1e-14);
        CHECK(fk.variance[j] < 1e-14);
    }
}

TEST_CASE("feynman_kac: heat closed form at xi = 0" * doctest::timeout(120)) {
    Grid1D g = Grid1D::torus(64);
    auto u = analytic_flow({AnalyticKind::Sine, 0.0, 1, {}}, g);
    auto g0 = ComplexField::mode(g, 1);
    const double nu = 1e-2, t = 1.0;
    const std::size_t m = 10000;
    BrownianBundle b(m, 100, t / 100, {6, 0});
    auto fk = feynman_kac_field(u, g0, 0.0, nu, t, b);
    // E[Z^y] = e^{iy} e^{-nu t}; per-point tolerance 3 sqrt(var/m)
    int violations = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const auto expect = std::polar(std::exp(-nu * t), g.point(j));
        const double tol =
            3.0 * std::sqrt(std::max(fk.variance[j], 1e-12) / static_cast<double>(m));
        if (std::abs(fk.estimate.values()[j] - expect) > tol) ++violations;
    }
    CHECK(violations <= 2);  // 64 cells at ~3 sigma
}

TEST_CASE("feynman_kac: constant flow factors out of the expectation" *
          doctest::timeout(120)) {
    Grid1D g = Grid1D::torus(64);
    auto c = analytic_flow({AnalyticKind::Constant, 0.7, 1, {}}, g);
    auto g0 = ComplexField::mode(g, 1);
    const double nu = 1e-2, t = 1.0, xi = 1.0;
    const std::size_t m = 10000;
    BrownianBundle b(m, 100, t / 100, {7, 0});
    auto fk = feynman_kac_field(c, g0, xi, nu, t, b);
    int violations = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const auto expect =
            std::polar(std::exp(-nu * t), g.point(j) - xi * 0.7 * t);
        const double tol =
            3.0 * std::sqrt(std::max(fk.variance[j], 1e-12) / static_cast<double>(m));
        if (std::abs(fk.estimate.values()[j] - expect) > tol) ++violations;
    }
    CHECK(violations <= 2);
}

TEST_CASE("feynman_kac with a zero bundle reproduces the inviscid phase") {
    auto u = symmetrize(sample_fbm(0.5, Grid1D::interval(256), {8, 0}));
    auto g0 = ComplexField::mode(u.grid(), 1);
    const double t = 2.0;
    auto bundle = BrownianBundle::zero(16, 32, t / 32);
    // frozen paths: Z^y = e^{-i xi t u(y)} g0(y), the inviscid phase at k = xi
    auto fk = feynman_kac_field(u, g0, 3.0, 0.0, t, bundle);
    auto exact = inviscid_apply(u, g0, 3, t);
    for (std::size_t j = 0; j < u.grid().size(); ++j)
        CHECK(std::abs(fk.estimate.values()[j] - exact.values()[j]) < 1e-12);
    for (double v : fk.variance) CHECK(v < 1e-12);
}

TEST_CASE("fdr: both sides vanish at t = 0 and match the heat closed form" *
          doctest::timeout(120)) {
    Grid1D g = Grid1D::torus(128);
    auto sinf = analytic_flow({AnalyticKind::Sine, 0.0, 1, {}}, g);
    auto g0 = ComplexField::mode(g, 1);
    const double nu = 1e-2, t = 2.0;

    // xi = 0: the identity reduces to 1 - e^{-2 nu t} on both sides
    BrownianBundle b(8000, 200, t / 200, {11, 0});
    auto rep = fdr_check(sinf, g0, 0.0, nu, t, b);
    const double expect = 1.0 - std::exp(-2.0 * nu * t);
    CHECK(rep.lhs == doctest::Approx(expect).epsilon(1e-6));
    CHECK(std::abs(rep.rhs - expect) <= 3.0 * rep.mc_stderr);
    CHECK(rep.rhs >= -rep.mc_stderr);
}

TEST_CASE("fdr grid: sin and weierstrass flows, both nus and xis" *
          doctest::timeout(300)) {
    Grid1D g = Grid1D::torus(128);
    auto sinf = analytic_flow({AnalyticKind::Sine, 0.0, 1, {}}, g);
    auto wei = weierstrass(0.5, 2, 5, g);
    auto g0 = ComplexField::mode(g, 1);
    const double t = 5.0;
    for (const FlowSample* fl : {&sinf, &wei}) {
        for (double nu : {1e-2, 1e-3}) {
            for (double xi : {1.0, 4.0}) {
                BrownianBundle b(4000, 400, t / 400, {55, 7});
                auto rep = fdr_check(*fl, g0, xi, nu, t, b);
                const double tol =
                    std::max(0.05, 3.0 * rep.mc_stderr / std::max(rep.lhs, 1e-12));
                CHECK(rep.rel_err <= tol);
                CHECK(rep.rhs >= -rep.mc_stderr);
            }
        }
    }
}

TEST_CASE("fdr stderr scales like 1/sqrt(m)" * doctest::timeout(300)) {
    Grid1D g = Grid1D::torus(64);
    auto sinf = analytic_flow({AnalyticKind::Sine, 0.0, 1, {}}, g);
    auto g0 = ComplexField::mode(g, 1);
    const double t = 3.0, nu = 1e-2;
    const auto stderr_at = [&](std::size_t m, std::uint64_t seed) {
        BrownianBundle b(m, 150, t / 150, {seed, 0});
        return fdr_check(sinf, g0, 1.0, nu, t, b).mc_stderr;
    };
    const double s1 = stderr_at(2000, 21);
    const double s2 = stderr_at(4000, 22);
    const double s4 = stderr_at(8000, 23);
    // CLT: doubling m scales stderr by 1/sqrt(2), quadrupling halves it
    CHECK(s2 / s1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.30));
    CHECK(s4 / s1 == doctest::Approx(0.5).epsilon(0.30));
}

TEST_CASE("bundle mismatch is rejected") {
    Grid1D g = Grid1D::torus(64);
    auto sinf = analytic_flow({AnalyticKind::Sine, 0.0, 1, {}}, g);
    auto g0 = ComplexField::mode(g, 1);
    BrownianBundle b(100, 50, 0.01, {1, 0});  // horizon 0.5
    CHECK_THROWS_AS(feynman_kac_field(sinf, g0, 1.0, 1e-2, 1.0, b), BundleMismatch);
}

TEST_CASE("variance bound: pure-heat cell and the frozen calibration") {
    Grid1D g = Grid1D::torus(1 << 12);
    auto sinf = analytic_flow({AnalyticKind::Sine, 0.0, 1, {}}, g);
    auto g0 = ComplexField::mode(g, 1);
    const double alpha = 0.45;
    const double bes = besov_seminorm(sinf, alpha, 1.0);

    // xi = 0 reduces to 1 - e^{-2 nu t} <= 2 C nu t, true for any C >= 1
    auto vb0 = variance_bound_check(sinf, g0, 0.0, 1e-2, 5.0, alpha, bes);
    CHECK(vb0.deficit == doctest::Approx(1.0 - std::exp(-0.1)).epsilon(1e-6));
    CHECK(vb0.deficit <= variance_bound_constant() * 2.0 * 1e-2 * 5.0);
    CHECK(vb0.ok);

    // calibration cells the frozen constant was set on
    for (double nu : {1e-1, 1e-2})
        for (double t : {1.0, 10.0})
            CHECK(variance_bound_check(sinf, g0, 1.0, nu, t, alpha, bes).ok);

    auto vbt0 = variance_bound_check(sinf, g0, 1.0, 1e-2, 0.0, alpha, bes);
    CHECK(vbt0.ok);
    CHECK(vbt0.deficit == 0.0);
}

TEST_CASE("variance bound holds on rough flows with the frozen constant" *
          doctest::timeout(300)) {
    const double alpha = 0.45;
    for (std::uint64_t s : {600, 601}) {
        auto u = symmetrize(sample_fbm(0.5, Grid1D::interval(1 << 11), {s, 0}));
        auto g0 = ComplexField::mode(u.grid(), 1);
        const double bes = besov_seminorm(u, alpha, 1.0);
        for (double nu : {1e-2, 1e-3})
            for (double t : {1.0, 10.0}) {
                auto vb = variance_bound_check(u, g0, 1.0, nu, t, alpha, bes);
                CHECK(vb.ok);
            }
    }
}

TEST_CASE("inverse moment: closed form, scaling, mean sweep" * doctest::timeout(300)) {
    const double theta = 0.5;
    const std::size_t m = 1000000;
    auto r = inverse_moment_check(theta, 1.0, 0.0, m, {99, 0});
    const double expect = oracles::gaussian_inverse_moment(theta);
    CHECK(expect == doctest::Approx(1.72008).epsilon(1e-4));
    CHECK(std::abs(r.estimate - expect) <= 3.0 * r.stderr_est);

    // scale equivariance: Z = sigma N
    auto r2 = inverse_moment_check(theta, 2.0, 0.0, m, {100, 0});
    const double combined =
        3.0 * std::sqrt(std::pow(r2.stderr_est, 2) +
                        std::pow(std::pow(2.0, -theta) * r.stderr_est, 2));
    CHECK(std::abs(r2.estimate - std::pow(2.0, -theta) * r.estimate) <= combined);

    // the sup over the mean is at mean = 0
    for (double mean : {1.0, 5.0, 20.0}) {
        auto rm = inverse_moment_check(theta, 1.0, mean, 200000, {101, 0});
        CHECK(rm.reference_ratio <= r.estimate + 3.0 * (r.stderr_est + rm.stderr_est));
    }

    CHECK_THROWS_AS(inverse_moment_check(1.5, 1.0, 0.0, 100, {1, 0}), BadParameter);
}
