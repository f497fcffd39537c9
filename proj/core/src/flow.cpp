#include "shearlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shearlab {

FlowSample::FlowSample(Grid1D grid, std::vector<double> values, FlowMeta meta)
    : grid_(grid), values_(std::move(values)), meta_(std::move(meta)) {
    if (values_.size() != grid_.size())
        throw BadParameter("FlowSample: values length does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw BadParameter("FlowSample: non-finite value");
}

double FlowSample::operator()(double y) const {
    const std::size_t n = grid_.size();
    const double h = grid_.spacing();
    if (grid_.domain() == Domain::Torus) {
        const double len = grid_.length();
        double yr = y - grid_.left();
        yr -= std::floor(yr / len) * len;  // [0, 2 pi)
        const double s = yr / h;
        std::size_t j = static_cast<std::size_t>(std::floor(s));
        if (j >= n) j = n - 1;
        const double t = s - static_cast<double>(j);
        const double v0 = values_[j];
        const double v1 = values_[(j + 1) % n];
        return v0 + t * (v1 - v0);
    }
    const double tol = 1e-9;
    if (y < grid_.left() - tol || y > grid_.right() + tol)
        throw DomainExceeded("flow evaluated outside [0, pi]");
    const double s = std::clamp(y - grid_.left(), 0.0, grid_.length()) / h;
    std::size_t j = static_cast<std::size_t>(std::floor(s));
    if (j >= n - 1) j = n - 2;  // last chord extends to y = pi
    const double t = s - static_cast<double>(j);
    return values_[j] + t * (values_[j + 1] - values_[j]);
}

double FlowSample::max_adjacent_increment() const {
    double m = 0.0;
    for (std::size_t j = 0; j + 1 < values_.size(); ++j)
        m = std::max(m, std::abs(values_[j + 1] - values_[j]));
    if (grid_.domain() == Domain::Torus)
        m = std::max(m, std::abs(values_.front() - values_.back()));
    return m;
}

double FlowSample::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

FlowSample weierstrass(double alpha, int lambda, int n_terms, const Grid1D& grid) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw BadParameter("weierstrass: alpha must lie in (0,1)");
    if (lambda < 2) throw BadParameter("weierstrass: lambda must be an integer >= 2");
    if (n_terms < 1) throw BadParameter("weierstrass: n_terms must be positive");
    if (grid.domain() != Domain::Torus)
        throw BadParameter("weierstrass: needs a torus grid");
    const double top_freq = std::pow(static_cast<double>(lambda), n_terms - 1);
    if (top_freq > static_cast<double>(grid.size()) / 4.0)
        throw NyquistViolation("weierstrass: lambda^(n_terms-1) exceeds n/4");

    std::vector<double> v(grid.size(), 0.0);
    double freq = 1.0, amp = 1.0;
    const double decay = std::pow(static_cast<double>(lambda), -alpha);
    for (int m = 0; m < n_terms; ++m) {
        for (std::size_t j = 0; j < grid.size(); ++j)
            v[j] += amp * std::cos(freq * grid.point(j));
        freq *= static_cast<double>(lambda);
        amp *= decay;
    }
    FlowMeta meta{"weierstrass",
                  {{"alpha", alpha},
                   {"lambda", static_cast<double>(lambda)},
                   {"n_terms", static_cast<double>(n_terms)}},
                  std::nullopt};
    return FlowSample(grid, std::move(v), std::move(meta));
}

FlowSample symmetrize(const FlowSample& flow) {
    if (flow.grid().domain() != Domain::Interval)
        throw BadParameter("symmetrize: input must live on Interval(0, pi)");
    const std::size_t n = flow.grid().size();
    Grid1D out(2 * n, Domain::Torus);
    std::vector<double> v(2 * n);
    // y_j = -pi + j h with h = pi/n; value is flow(|y_j|)
    const auto& src = flow.values();
    const double u_pi = 2.0 * src[n - 1] - src[n - 2];  // chord extended to pi
    v[0] = u_pi;
    for (std::size_t j = 1; j < n; ++j) v[j] = src[n - j];
    for (std::size_t j = 0; j < n; ++j) v[n + j] = src[j];
    FlowMeta meta = flow.meta();
    meta.generator = "symmetrized_" + meta.generator;
    return FlowSample(out, std::move(v), std::move(meta));
}

FlowSample analytic_flow(const AnalyticSpec& spec, const Grid1D& grid) {
    std::vector<double> v(grid.size());
    FlowMeta meta;
    switch (spec.kind) {
        case AnalyticKind::Constant:
            std::fill(v.begin(), v.end(), spec.c);
            meta = {"constant", {{"c", spec.c}}, std::nullopt};
            break;
        case AnalyticKind::Linear:
            for (std::size_t j = 0; j < grid.size(); ++j) v[j] = grid.point(j);
            meta = {"linear", {}, std::nullopt};
            break;
        case AnalyticKind::Sine: {
            if (grid.domain() == Domain::Torus &&
                spec.k0 > static_cast<int>(grid.size() / 4))
                throw NyquistViolation("analytic_flow: sine frequency exceeds n/4");
            for (std::size_t j = 0; j < grid.size(); ++j)
                v[j] = std::sin(spec.k0 * grid.point(j));
            meta = {"sine", {{"k0", static_cast<double>(spec.k0)}}, std::nullopt};
            break;
        }
        case AnalyticKind::CustomTrig: {
            // coefficients interleaved [a1, b1, a2, b2, ...]:
            // u(y) = sum_m a_m cos(m y) + b_m sin(m y)
            const std::size_t modes = (spec.trig_coeffs.size() + 1) / 2;
            if (grid.domain() == Domain::Torus && modes > grid.size() / 4)
                throw NyquistViolation("analytic_flow: custom_trig frequency exceeds n/4");
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const double y = grid.point(j);
                double s = 0.0;
                for (std::size_t m = 0; m < modes; ++m) {
                    const double a = spec.trig_coeffs[2 * m];
                    const double b =
                        2 * m + 1 < spec.trig_coeffs.size() ? spec.trig_coeffs[2 * m + 1] : 0.0;
                    s += a * std::cos(static_cast<double>(m + 1) * y) +
                         b * std::sin(static_cast<double>(m + 1) * y);
                }
                v[j] = s;
            }
            meta = {"custom_trig", {{"modes", static_cast<double>(modes)}}, std::nullopt};
            break;
        }
    }
    return FlowSample(grid, std::move(v), std::move(meta));
}

FlowSample primitive(const FlowSample& flow) {
    const auto& g = flow.grid();
    const auto& v = flow.values();
    std::vector<double> psi(g.size());
    psi[0] = 0.0;
    for (std::size_t j = 0; j + 1 < g.size(); ++j)
        psi[j + 1] = psi[j] + 0.5 * g.spacing() * (v[j] + v[j + 1]);
    FlowMeta meta = flow.meta();
    meta.generator = "primitive_of_" + meta.generator;
    return FlowSample(g, std::move(psi), std::move(meta));
}

}  // namespace shearlab
