#include "shearlab/ratelab.hpp"

#include <algorithm>
#include <cmath>

#include "shearlab/functionals.hpp"

namespace shearlab {

namespace {

FitResult ols_loglog(const std::vector<double>& lx, const std::vector<double>& ly,
                     double lo, double hi) {
    const std::size_t n = lx.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    FitResult fit;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.window_min = lo;
    fit.window_max = hi;
    fit.n_points = n;
    return fit;
}

}  // namespace

std::vector<double> log_spaced(double a, double b, std::size_t count) {
    if (!(a > 0.0) || !(b > a) || count < 2)
        throw BadParameter("log_spaced: need 0 < a < b and count >= 2");
    std::vector<double> out(count);
    const double la = std::log(a), lb = std::log(b);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = std::exp(la + (lb - la) * static_cast<double>(i) /
                                   static_cast<double>(count - 1));
    out.front() = a;
    out.back() = b;
    return out;
}

FitResult fit_power_law(const DecayCurve& curve, const Window& window) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < curve.abscissae.size(); ++i) {
        const double x = curve.abscissae[i];
        if (x < window.lo || x > window.hi) continue;
        const double y = curve.ordinates[i];
        if (!(y > 0.0))
            throw NonPositiveOrdinate("fit_power_law: ordinate <= 0 at x = " +
                                      std::to_string(x));
        lx.push_back(std::log(x));
        ly.push_back(std::log(y));
    }
    if (lx.size() < 5) throw TooFewPoints("fit_power_law: fewer than 5 points in window");
    return ols_loglog(lx, ly, window.lo, window.hi);
}

CrossingTime dissipation_time(const DecayCurve& curve, double q) {
    if (curve.ordinates.empty()) throw BadParameter("dissipation_time: empty curve");
    if (!(q > 0.0 && q <= 1.0)) throw BadParameter("dissipation_time: q must be in (0,1]");
    const double target = q * curve.ordinates.front();
    if (q == 1.0) return {0.0, true};
    double prev_t = 0.0;
    double prev_v = curve.ordinates.front();
    for (std::size_t i = 0; i < curve.abscissae.size(); ++i) {
        const double t = curve.abscissae[i];
        const double v = curve.ordinates[i];
        if (v <= target) {
            if (v <= 0.0 || prev_v <= 0.0) return {t, true};
            const double l0 = std::log(prev_v), l1 = std::log(v), lq = std::log(target);
            const double tau = prev_t + (t - prev_t) * (l0 - lq) / (l0 - l1);
            return {tau, true};
        }
        prev_t = t;
        prev_v = v;
    }
    return {curve.abscissae.back(), false};
}

MixingExperimentResult mixing_experiment(const FlowSample& flow, double alpha_nominal, int k,
                                         const std::vector<double>& times,
                                         const ComplexField& g0, double s) {
    if (times.empty()) throw BadParameter("mixing_experiment: no record times");
    MixingExperimentResult res;
    res.predicted_exponent = -1.0 / (2.0 * alpha_nominal);
    res.max_usable_time = max_resolved_time(flow, k);

    res.curve.label = "H^-" + std::to_string(s);
    for (double t : times) {
        if (t > res.max_usable_time) {
            res.dropped_times.push_back(t);
            continue;
        }
        auto field = inviscid_apply(flow, g0, k, t);
        res.curve.push(t, sobolev_norm(field, -s));
    }
    if (res.curve.abscissae.empty())
        throw UnderResolved("mixing_experiment: no record time passes the resolution check");

    // transient: skip the first half decade of the requested range
    Window w;
    w.lo = times.front() * std::sqrt(10.0);
    w.hi = res.curve.abscissae.back();
    res.fit = fit_power_law(res.curve, w);
    return res;
}

DissipationExperimentResult dissipation_experiment(const FlowSample& flow,
                                                   double alpha_nominal, int k,
                                                   const std::vector<double>& nu_list,
                                                   const ComplexField& g0,
                                                   const DissipationExperimentOptions& opts) {
    if (nu_list.empty()) throw BadParameter("dissipation_experiment: empty nu list");
    DissipationExperimentResult res;
    const double tau_exp = opts.tau_exponent
                               ? *opts.tau_exponent
                               : alpha_nominal / (alpha_nominal + 2.0);
    res.predicted_slope = -alpha_nominal / (alpha_nominal + 2.0);
    res.table.axis = "nu";

    for (double nu : nu_list) {
        const double t_end = opts.t_end_scale * std::pow(nu, -tau_exp);
        auto recs = log_spaced(t_end / 300.0, t_end, opts.record_points);
        EvolveOptions eopts;
        eopts.dt = opts.dt;
        auto ev = viscous_evolve(flow, g0, k, nu, recs, eopts);
        // prepend the exact initial norm so the threshold is q * ||g0||
        DecayCurve curve;
        curve.label = ev.curve.label;
        curve.push(0.0, sobolev_norm(g0, 0.0));
        for (std::size_t i = 0; i < ev.curve.abscissae.size(); ++i)
            curve.push(ev.curve.abscissae[i], ev.curve.ordinates[i]);
        auto cross = dissipation_time(curve, opts.q);
        SweepTable::Row row;
        row.parameter = nu;
        row.value = cross.tau;
        row.valid = cross.crossed;
        if (!cross.crossed) row.note = "no crossing within t_end";
        res.table.rows.push_back(row);
    }

    DecayCurve tau_curve;
    tau_curve.label = "tau(nu)";
    for (const auto& row : res.table.rows)
        if (row.valid) tau_curve.push(row.parameter, row.value);
    if (tau_curve.abscissae.size() < 4)
        throw TooFewPoints("dissipation_experiment: fewer than 4 valid cells");
    // all valid cells enter the tau fit, no transient trimming
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < tau_curve.abscissae.size(); ++i) {
        lx.push_back(std::log(tau_curve.abscissae[i]));
        ly.push_back(std::log(tau_curve.ordinates[i]));
    }
    res.fit = ols_loglog(lx, ly, tau_curve.abscissae.front(), tau_curve.abscissae.back());
    return res;
}

std::vector<WeiBoundCell> wei_bound_experiment(const FlowSample& flow, double nu,
                                               const std::vector<double>& t_grid,
                                               double delta,
                                               const std::vector<ComplexField>& probes,
                                               double dt) {
    if (probes.empty()) throw BadParameter("wei_bound_experiment: need probe fields");
    std::vector<WeiBoundCell> cells;
    cells.reserve(t_grid.size());

    // one evolution per probe, all record times at once
    std::vector<DecayCurve> curves;
    for (const auto& p : probes) {
        EvolveOptions opts;
        opts.dt = dt;
        curves.push_back(viscous_evolve(flow, p, 1, nu, t_grid, opts).curve);
    }
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        WeiBoundCell cell;
        cell.t = t_grid[i];
        double worst = 0.0;
        for (std::size_t pidx = 0; pidx < probes.size(); ++pidx) {
            const double n0 = sobolev_norm(probes[pidx], 0.0);
            worst = std::max(worst, curves[pidx].ordinates[i] / n0);
        }
        cell.measured = worst;
        cell.bound = wei_upper_bound(flow, nu, t_grid[i], delta);
        cell.ok = cell.measured <= cell.bound + 1e-8;
        cells.push_back(cell);
    }
    return cells;
}

double interpolation_check(const ComplexField& field, double s1, double s2) {
    if (!(s1 > 0.0 && s2 > 0.0)) throw BadParameter("interpolation_check: s1, s2 > 0");
    const double l2 = sobolev_norm(field, 0.0);
    if (l2 == 0.0) throw ZeroField("interpolation_check: zero field");
    const double eps = 0.01;
    const double a = sobolev_norm(field, -s1);
    const double b = sobolev_norm(field, s2 + eps);
    const double w = s1 + s2;
    return l2 / (std::pow(a, s2 / w) * std::pow(b, s1 / w));
}

}  // namespace shearlab
