#include "shearlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "shearlab/fft.hpp"

namespace shearlab {

namespace {

// values -> coeffs: ghat(eta) = (-1)^eta DFT[g](eta mod n) / n, the sign
// twist coming from the grid offset y_j = -pi + 2 pi j / n.
std::vector<std::complex<double>> values_to_coeffs(
    const std::vector<std::complex<double>>& values) {
    const std::size_t n = values.size();
    std::vector<std::complex<double>> work = values;
    dft_forward(work);
    std::vector<std::complex<double>> coeffs(n);
    const long half = static_cast<long>(n / 2);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long eta = static_cast<long>(i) - half;
        const std::size_t src = static_cast<std::size_t>((eta + static_cast<long>(n)) %
                                                         static_cast<long>(n));
        const double sign = (eta & 1L) ? -1.0 : 1.0;
        coeffs[i] = sign * inv_n * work[src];
    }
    return coeffs;
}

std::vector<std::complex<double>> coeffs_to_values(
    const std::vector<std::complex<double>>& coeffs) {
    const std::size_t n = coeffs.size();
    std::vector<std::complex<double>> work(n);
    const long half = static_cast<long>(n / 2);
    for (std::size_t i = 0; i < n; ++i) {
        const long eta = static_cast<long>(i) - half;
        const std::size_t dst = static_cast<std::size_t>((eta + static_cast<long>(n)) %
                                                         static_cast<long>(n));
        const double sign = (eta & 1L) ? -1.0 : 1.0;
        work[dst] = sign * coeffs[i];
    }
    dft_backward(work);
    return work;
}

double l2_norm_physical(const std::vector<std::complex<double>>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s / static_cast<double>(v.size()));
}

// One Strang interval: m equal steps covering span, phases cached.
void strang_steps(std::vector<std::complex<double>>& g, const std::vector<double>& u,
                  int k, double nu, double dt, std::size_t m) {
    const std::size_t n = g.size();
    std::vector<std::complex<double>> half_phase(n);
    const double c = -0.5 * dt * static_cast<double>(k);
    for (std::size_t j = 0; j < n; ++j)
        half_phase[j] = std::polar(1.0, c * u[j]);

    std::vector<double> heat(n);
    for (std::size_t i = 0; i < n; ++i) {
        // standard DFT frequency layout
        const long eta = (i <= n / 2) ? static_cast<long>(i)
                                      : static_cast<long>(i) - static_cast<long>(n);
        heat[i] = std::exp(-nu * static_cast<double>(eta * eta) * dt);
    }
    const double inv_n = 1.0 / static_cast<double>(n);

    for (std::size_t step = 0; step < m; ++step) {
        for (std::size_t j = 0; j < n; ++j) g[j] *= half_phase[j];
        dft_forward(g);
        for (std::size_t i = 0; i < n; ++i) g[i] *= heat[i] * inv_n;
        dft_backward(g);
        for (std::size_t j = 0; j < n; ++j) g[j] *= half_phase[j];
    }
}

}  // namespace

ComplexField::ComplexField(Grid1D grid, std::vector<std::complex<double>> values)
    : grid_(grid), values_(std::move(values)) {
    if (grid_.domain() != Domain::Torus)
        throw BadParameter("ComplexField: needs a torus grid");
    if (values_.size() != grid_.size())
        throw BadParameter("ComplexField: values length does not match grid");
    coeffs_ = values_to_coeffs(values_);
}

std::complex<double> ComplexField::coeff(long eta) const {
    const long half = static_cast<long>(grid_.size() / 2);
    if (eta < -half || eta >= half) return {0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(eta + half)];
}

ComplexField ComplexField::from_coeffs(Grid1D grid,
                                       std::vector<std::complex<double>> coeffs) {
    if (coeffs.size() != grid.size())
        throw BadParameter("ComplexField: coeffs length does not match grid");
    auto values = coeffs_to_values(coeffs);
    return ComplexField(grid, std::move(values), std::move(coeffs));
}

ComplexField ComplexField::mode(const Grid1D& grid, int eta) {
    std::vector<std::complex<double>> v(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        v[j] = std::polar(1.0, static_cast<double>(eta) * grid.point(j));
    return ComplexField(grid, std::move(v));
}

double NormConvention::weight(long eta, double s) {
    return std::pow(1.0 + static_cast<double>(eta) * static_cast<double>(eta), s);
}

double sobolev_norm(const ComplexField& field, double s) {
    const auto& c = field.coeffs();
    double sum = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        sum += NormConvention::weight(field.eta_of_index(i), s) * std::norm(c[i]);
    return std::sqrt(sum);
}

void DecayCurve::push(double x, double y) {
    if (!abscissae.empty() && x <= abscissae.back())
        throw BadParameter("DecayCurve: abscissae must be strictly increasing");
    if (!std::isfinite(y)) throw BadParameter("DecayCurve: non-finite ordinate");
    abscissae.push_back(x);
    ordinates.push_back(y);
}

double max_resolved_time(const FlowSample& flow, int k) {
    const double du = flow.max_adjacent_increment();
    if (du == 0.0 || k == 0) return std::numeric_limits<double>::infinity();
    return std::numbers::pi / (std::abs(static_cast<double>(k)) * du);
}

ComplexField inviscid_apply(const FlowSample& flow, const ComplexField& g0, int k,
                            double t) {
    if (!(flow.grid() == g0.grid()))
        throw BadParameter("inviscid_apply: flow and field grids differ");
    const double tmax = max_resolved_time(flow, k);
    if (std::abs(t) > tmax) {
        const double need = std::abs(t * k) * flow.max_adjacent_increment() /
                            std::numbers::pi * static_cast<double>(flow.grid().size());
        throw UnderResolved("inviscid_apply: |t k| max|du| > pi at t = " +
                            std::to_string(t) + "; max usable t = " + std::to_string(tmax) +
                            ", need n >= " + std::to_string(static_cast<long long>(need)));
    }
    const auto& u = flow.values();
    std::vector<std::complex<double>> v = g0.values();
    const double c = -static_cast<double>(k) * t;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= std::polar(1.0, c * u[j]);
    return ComplexField(flow.grid(), std::move(v));
}

EvolveResult viscous_evolve(const FlowSample& flow, const ComplexField& g0, int k,
                            double nu, const std::vector<double>& record_times,
                            const EvolveOptions& opts) {
    if (!(flow.grid() == g0.grid()))
        throw BadParameter("viscous_evolve: flow and field grids differ");
    if (k == 0) throw BadParameter("viscous_evolve: k must be nonzero");
    if (nu < 0.0) throw BadParameter("viscous_evolve: nu must be >= 0");
    if (record_times.empty() || record_times.front() < 0.0)
        throw BadParameter("viscous_evolve: record times must be positive and sorted");

    // phase-rotation policy: one step may rotate the fastest phase by at
    // most max_phase_step radians
    const double umax = flow.max_abs();
    const double dt_policy = umax > 0.0
        ? opts.max_phase_step / (std::abs(static_cast<double>(k)) * umax)
        : std::numeric_limits<double>::infinity();
    double dt = opts.dt > 0.0 ? opts.dt : dt_policy;
    if (dt > dt_policy * (1.0 + 1e-12))
        throw StepTooLarge("viscous_evolve: dt rotates the fastest phase by more than " +
                           std::to_string(opts.max_phase_step) + " rad");

    std::vector<std::complex<double>> g = g0.values();
    DecayCurve curve;
    curve.label = "L2";
    double t = 0.0;
    double prev_norm = l2_norm_physical(g);
    for (double tr : record_times) {
        if (tr < t) throw BadParameter("viscous_evolve: record times must be sorted");
        const double span = tr - t;
        if (span > 0.0) {
            std::size_t m = 1;
            double dt_eff = span;
            if (std::isfinite(dt) && span > dt) {
                m = static_cast<std::size_t>(std::ceil(span / dt));
                dt_eff = span / static_cast<double>(m);
            }
            strang_steps(g, flow.values(), k, nu, dt_eff, m);
            t = tr;
        }
        const double nrm = l2_norm_physical(g);
        if (nrm > prev_norm * (1.0 + 1e-10))
            throw Error("viscous_evolve: L2 norm increased beyond roundoff");
        prev_norm = std::min(prev_norm, nrm);
        curve.push(tr, nrm);
    }
    return EvolveResult{std::move(curve), ComplexField(flow.grid(), std::move(g))};
}

double rescale_check(const FlowSample& flow, const ComplexField& g0, int k, double nu,
                     double t, double dt) {
    if (k == 0) throw BadParameter("rescale_check: k must be nonzero");
    const double ak = std::abs(static_cast<double>(k));

    EvolveOptions direct_opts;
    direct_opts.dt = dt;
    auto direct = viscous_evolve(flow, g0, k, nu, {t}, direct_opts);
    if (k == 1) return 0.0;

    // rescaled run: k' = 1, nu' = nu/|k|, t' = t |k|; k < 0 handled by
    // conjugation symmetry
    const bool conj = k < 0;
    std::vector<std::complex<double>> v0 = g0.values();
    if (conj)
        for (auto& z : v0) z = std::conj(z);
    ComplexField h0(g0.grid(), std::move(v0));

    EvolveOptions rs_opts;
    rs_opts.dt = dt > 0.0 ? dt * ak : 0.0;
    auto rescaled = viscous_evolve(flow, h0, 1, nu / ak, {t * ak}, rs_opts);

    double s = 0.0;
    const auto& a = direct.final_field.values();
    const auto& b = rescaled.final_field.values();
    for (std::size_t j = 0; j < a.size(); ++j) {
        const std::complex<double> bj = conj ? std::conj(b[j]) : b[j];
        s += std::norm(a[j] - bj);
    }
    return std::sqrt(s / static_cast<double>(a.size()));
}

Shear2DResult shear2d_evolve(const FlowSample& flow, const std::vector<Mode2D>& modes,
                             double nu, const std::vector<double>& record_times, double s,
                             const Shear2DOptions& opts) {
    for (const auto& m : modes)
        if (m.k == 0)
            throw ZeroModePresent("shear2d_evolve: k = 0 mode solves the plain heat "
                                  "equation and is excluded");

    Shear2DResult result;
    std::vector<std::vector<double>> mode_norms;  // [mode][time]

    for (const auto& m : modes) {
        result.wavenumbers.push_back(m.k);
        DecayCurve curve;
        curve.label = "H^" + std::to_string(s) + " k=" + std::to_string(m.k);
        std::vector<double> norms;
        if (nu == 0.0) {
            for (double t : record_times) {
                auto field = inviscid_apply(flow, m.field, m.k, t);
                norms.push_back(sobolev_norm(field, s));
            }
        } else {
            // conjugation symmetry for k < 0, matching viscous_evolve
            auto ev = viscous_evolve(flow, m.field, m.k, nu, record_times, opts.evolve);
            // re-evaluate in H^s (the returned curve is L^2); re-run the
            // evolution recording fields would double the cost, so step
            // through record times incrementally instead
            if (s == 0.0) {
                norms = ev.curve.ordinates;
            } else {
                std::vector<std::complex<double>> g = m.field.values();
                double t = 0.0;
                for (double tr : record_times) {
                    ComplexField cur(flow.grid(), g);
                    auto one = viscous_evolve(flow, cur, m.k, nu, {tr - t}, opts.evolve);
                    g = one.final_field.values();
                    t = tr;
                    norms.push_back(sobolev_norm(one.final_field, s));
                }
            }
        }
        if (opts.full_laplacian) {
            for (std::size_t i = 0; i < record_times.size(); ++i)
                norms[i] *= std::exp(-nu * static_cast<double>(m.k) *
                                     static_cast<double>(m.k) * record_times[i]);
        }
        for (std::size_t i = 0; i < record_times.size(); ++i)
            curve.push(record_times[i], norms[i]);
        mode_norms.push_back(std::move(norms));
        result.per_mode.push_back(std::move(curve));
    }

    result.combined.label = "L2_x H^" + std::to_string(s) + "_y";
    for (std::size_t i = 0; i < record_times.size(); ++i) {
        double sq = 0.0;
        for (const auto& nv : mode_norms) sq += nv[i] * nv[i];
        result.combined.push(record_times[i], std::sqrt(sq));
    }
    return result;
}

}  // namespace shearlab
