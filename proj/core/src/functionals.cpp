#include "shearlab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include "shearlab/piecewise.hpp"

namespace shearlab {

namespace {

constexpr double kDegenerateFloor = 1e-14;

// u(y) on the extended domain; exact within one lattice cell.
double eval_flow(const FlowSample& flow, double y) {
    return flow(y);
}

// integral of e^{i xi u} over one linear segment of u
std::complex<double> segment_phase_integral(double xi, double y0, double y1, double u0,
                                            double u1) {
    const double ls = y1 - y0;
    const double slope = (u1 - u0) / ls;
    if (std::abs(xi * slope) > 1e-8) {
        const std::complex<double> num =
            std::polar(1.0, xi * u1) - std::polar(1.0, xi * u0);
        return num / std::complex<double>(0.0, xi * slope);
    }
    return ls * std::polar(1.0, xi * 0.5 * (u0 + u1));
}

void check_phase_resolved(const FlowSample& flow, double xi) {
    const double du = flow.max_adjacent_increment();
    if (std::abs(xi) * du > std::numbers::pi)
        throw UnderResolved("oscillatory integral: |xi| max|du| = " +
                            std::to_string(std::abs(xi) * du) +
                            " > pi; refine the grid");
}

std::complex<double> phase_integral(const FlowSample& flow, double xi, double a, double b) {
    const double h = flow.grid().spacing();
    const double left = flow.grid().left();
    // Kahan-compensated accumulation: the dyadic scans chain thousands of
    // these, and the scan maxima get compared against 1e-6-level bands
    std::complex<double> acc{0.0, 0.0}, comp{0.0, 0.0};
    const auto add = [&](std::complex<double> v) {
        const std::complex<double> y = v - comp;
        const std::complex<double> t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    };
    double y_next = std::ceil((a - left) / h) * h + left;
    if (y_next <= a + 1e-14 * h) y_next += h;
    double s0 = a;
    double u0 = eval_flow(flow, s0);
    while (true) {
        const double s1 = std::min(y_next, b);
        const double u1 = eval_flow(flow, s1);
        if (s1 > s0) add(segment_phase_integral(xi, s0, s1, u0, u1));
        if (s1 >= b) break;
        s0 = s1;
        u0 = u1;
        y_next += h;
    }
    return acc;
}

void validate_interval(const FlowSample& flow, const Interval& iv) {
    if (!(iv.b > iv.a)) throw BadParameter("Interval: b must exceed a");
    if (flow.grid().domain() == Domain::Interval) {
        const double tol = 1e-9;
        if (iv.a < -tol || iv.b > std::numbers::pi + tol)
            throw DomainExceeded("interval outside [0, pi]");
    } else if (iv.length() > 2.0 * std::numbers::pi * (1.0 + 1e-12)) {
        throw BadParameter("torus interval longer than one period");
    }
}

double lp_norm_of_diff(const std::vector<double>& u, std::size_t shift, double p, double h) {
    const std::size_t n = u.size();
    if (p == std::numeric_limits<double>::infinity()) {
        double m = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            m = std::max(m, std::abs(u[(j + shift) % n] - u[j]));
        return m;
    }
    double s = 0.0;
    if (p == 1.0) {
        for (std::size_t j = 0; j < n; ++j) s += std::abs(u[(j + shift) % n] - u[j]);
        return s * h;
    }
    if (p == 2.0) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = u[(j + shift) % n] - u[j];
            s += d * d;
        }
        return std::sqrt(s * h);
    }
    throw BadParameter("besov_seminorm: p must be 1, 2 or inf");
}

// local-extrema subsequence (first and last points always kept)
std::vector<double> extrema_chain(const std::vector<double>& v) {
    std::vector<double> e;
    e.push_back(v.front());
    for (std::size_t j = 1; j + 1 < v.size(); ++j) {
        const double d0 = v[j] - e.back();
        const double d1 = v[j + 1] - v[j];
        if (d0 == 0.0) continue;
        if ((d0 > 0 && d1 < 0) || (d0 < 0 && d1 > 0)) e.push_back(v[j]);
    }
    e.push_back(v.back());
    return e;
}

}  // namespace

std::vector<double> make_xi_grid(double xi_min, double xi_max, int per_decade,
                                 bool both_signs) {
    if (!(xi_min > 0.0) || !(xi_max >= xi_min) || per_decade < 1)
        throw BadParameter("make_xi_grid: need 0 < xi_min <= xi_max, per_decade >= 1");
    std::vector<double> grid;
    const long k0 = std::lround(std::log10(xi_min) * per_decade);
    const long k1 = std::lround(std::log10(xi_max) * per_decade);
    for (long k = k0; k <= k1; ++k) {
        const double xi = std::pow(10.0, static_cast<double>(k) / per_decade);
        grid.push_back(xi);
        if (both_signs) grid.push_back(-xi);
    }
    return grid;
}

std::complex<double> osc_integral(const FlowSample& flow, double xi, const Interval& iv) {
    validate_interval(flow, iv);
    check_phase_resolved(flow, xi);
    if (xi == 0.0) return {iv.length(), 0.0};
    return phase_integral(flow, xi, iv.a, iv.b);
}

IrregularityEstimate rho_irregularity_norm(const FlowSample& flow, double gamma, double rho,
                                           const std::vector<double>& xi_grid, int depth) {
    // gamma = 1 is allowed as a degenerate scan weight (|I|^0 per unit length)
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw BadParameter("rho norm: gamma must be in [0,1]");
    if (!(rho > 0.0)) throw BadParameter("rho norm: rho must be positive");
    if (depth < 0 || xi_grid.empty()) throw BadParameter("rho norm: empty scan");
    double xi_max = 0.0;
    for (double xi : xi_grid) {
        check_phase_resolved(flow, xi);
        xi_max = std::max(xi_max, std::abs(xi));
    }

    const double left = flow.grid().domain() == Domain::Interval ? 0.0 : -std::numbers::pi;
    const double len = flow.grid().domain() == Domain::Interval ? std::numbers::pi
                                                                : 2.0 * std::numbers::pi;
    const std::size_t cells = std::size_t{1} << depth;
    const double cell = len / static_cast<double>(cells);

    std::vector<double> partial(xi_grid.size(), 0.0);
    parallel_for(xi_grid.size(), [&](std::size_t b, std::size_t e) {
        std::vector<std::complex<double>> prefix(cells + 1);
        for (std::size_t q = b; q < e; ++q) {
            const double xi = xi_grid[q];
            prefix[0] = {0.0, 0.0};
            std::complex<double> run{0.0, 0.0}, comp{0.0, 0.0};
            for (std::size_t i = 0; i < cells; ++i) {
                const double a = left + static_cast<double>(i) * cell;
                const std::complex<double> v = phase_integral(flow, xi, a, a + cell) - comp;
                const std::complex<double> t = run + v;
                comp = (t - run) - v;
                run = t;
                prefix[i + 1] = run;
            }
            double best = 0.0;
            for (int l = 0; l <= depth; ++l) {
                const std::size_t stride = cells >> l;
                const double ilen = len / static_cast<double>(std::size_t{1} << l);
                const double w = std::pow(ilen, -gamma) * std::pow(std::abs(xi), rho);
                for (std::size_t i = 0; i + stride <= cells; i += stride)
                    best = std::max(best, std::abs(prefix[i + stride] - prefix[i]) * w);
            }
            partial[q] = best;
        }
    });

    IrregularityEstimate est;
    est.gamma = gamma;
    est.rho = rho;
    est.depth = depth;
    est.xi_max = xi_max;
    est.value = *std::max_element(partial.begin(), partial.end());
    return est;
}

double affine_fit_residual(const FlowSample& psi, const Interval& iv) {
    validate_interval(psi, iv);
    const double h = psi.grid().spacing();
    const double left = psi.grid().left();
    const long first = static_cast<long>(std::ceil((iv.a - left) / h * (1.0 - 1e-14)));
    const long last = static_cast<long>(std::floor((iv.b - left) / h * (1.0 + 1e-14)));
    if (last - first + 1 < 4)
        throw TooFewPoints("affine_fit_residual: iv needs >= 4 grid points");
    return pl_affine_residual(left, h, [&psi](double y) { return psi(y); }, iv.a, iv.b);
}

WeiEstimate gamma_wei(const FlowSample& flow, double alpha, const GammaWeiOptions& opts) {
    if (!(alpha > 0.0)) throw BadParameter("gamma_wei: alpha must be positive");
    if (opts.delta_levels < 1 || !(opts.ybar_stride > 0.0))
        throw BadParameter("gamma_wei: bad scan options");
    const double h = flow.grid().spacing();
    const double delta_min = std::pow(2.0, -opts.delta_levels);
    if (delta_min < 8.0 * h)
        throw ResolutionExceeded("gamma_wei: smallest delta " + std::to_string(delta_min) +
                                 " < 8 spacing");

    PrimitivePL psi(flow);
    const bool torus = flow.grid().domain() == Domain::Torus;
    const double lo = torus ? -std::numbers::pi : 0.0;
    const double hi = torus ? std::numbers::pi : std::numbers::pi;

    WeiEstimate best;
    best.alpha = alpha;
    best.value = std::numeric_limits<double>::infinity();
    std::mutex mu;

    for (int j = 1; j <= opts.delta_levels; ++j) {
        const double delta = std::pow(2.0, -j);
        const double stride = opts.ybar_stride * delta;
        // torus windows may overhang the right end (periodic extension);
        // interval windows must fit
        const double last = torus ? hi - 1e-12 : hi - delta;
        const std::size_t count =
            static_cast<std::size_t>(std::floor((last - lo) / stride)) + 1;
        const double weight = std::pow(delta, -2.0 * alpha - 3.0);

        parallel_for(count, [&](std::size_t b, std::size_t e) {
            double loc_val = std::numeric_limits<double>::infinity();
            double loc_y = 0.0;
            for (std::size_t i = b; i < e; ++i) {
                const double ybar = lo + static_cast<double>(i) * stride;
                const double r2 = psi.affine_residual(ybar, ybar + delta);
                const double val = weight * r2;
                if (val < loc_val) {
                    loc_val = val;
                    loc_y = ybar;
                }
            }
            std::lock_guard<std::mutex> lock(mu);
            if (loc_val < best.value) {
                best.value = loc_val;
                best.argmin_ybar = loc_y;
                best.argmin_delta = delta;
            }
        });
    }
    best.value = std::sqrt(std::max(0.0, best.value));
    return best;
}

ClampedScalar g_alpha(const FlowSample& flow, double alpha, double ybar, double delta) {
    if (!(alpha > 0.0) || !(delta > 0.0)) throw BadParameter("g_alpha: bad parameters");
    if (flow.grid().domain() == Domain::Interval &&
        (ybar < -1e-12 || ybar + 3.0 * delta > std::numbers::pi + 1e-12))
        throw DomainExceeded("g_alpha: [ybar, ybar + 3 delta] leaves [0, pi]");

    PrimitivePL psi(flow);
    const double h = flow.grid().spacing();
    const double left = flow.grid().left();
    const double expo = -1.0 / (1.0 + alpha);
    const double floor_val = std::pow(kDegenerateFloor, expo);

    ClampedScalar out;
    const auto integrand = [&](double y) {
        const double d2 = std::abs(psi.second_difference(y, delta));
        if (d2 < kDegenerateFloor) {
            out.clamped = true;
            return floor_val;
        }
        return std::pow(d2, expo);
    };

    // trapezoid over the grid points inside the window plus its endpoints
    const double a = ybar, b = ybar + delta;
    double y_next = std::ceil((a - left) / h) * h + left;
    if (y_next <= a + 1e-14 * h) y_next += h;
    double s0 = a, f0 = integrand(a), acc = 0.0;
    while (true) {
        const double s1 = std::min(y_next, b);
        const double f1 = integrand(s1);
        if (s1 > s0) acc += 0.5 * (s1 - s0) * (f0 + f1);
        if (s1 >= b) break;
        s0 = s1;
        f0 = f1;
        y_next += h;
    }
    out.value = acc;
    return out;
}

ClampedScalar k_alpha_eps(const FlowSample& flow, double alpha, double eps, int max_level) {
    if (!(alpha > 0.0) || !(eps > 0.0) || max_level < 1)
        throw BadParameter("k_alpha_eps: bad parameters");
    const double h = flow.grid().spacing();
    const double delta_min = std::numbers::pi * std::pow(2.0, -max_level - 1);
    if (delta_min < 8.0 * h)
        throw ResolutionExceeded("k_alpha_eps: pi 2^-(max_level+1) < 8 spacing");

    const bool interval = flow.grid().domain() == Domain::Interval;
    ClampedScalar out;
    for (int n = 1; n <= max_level; ++n) {
        const double delta = std::numbers::pi * std::pow(2.0, -n - 1);
        const double scale = std::pow(2.0, -n * eps);
        for (long k = 1; k < (1L << n); ++k) {
            double ybar = std::numbers::pi * static_cast<double>(k) * std::pow(2.0, -n);
            if (interval)
                ybar = std::min(ybar, std::numbers::pi - 3.0 * delta);
            auto g = g_alpha(flow, alpha, ybar, delta);
            out.clamped = out.clamped || g.clamped;
            out.value = std::max(out.value, scale * g.value);
        }
    }
    return out;
}

double besov_seminorm(const FlowSample& flow, double alpha, double p) {
    if (flow.grid().domain() != Domain::Torus)
        throw BadParameter("besov_seminorm: torus flows only");
    // alpha = 1 is the Lipschitz endpoint of the finite-difference scale
    if (!(alpha > 0.0 && alpha <= 1.0)) throw BadParameter("besov_seminorm: alpha in (0,1]");
    if (p != 1.0 && p != 2.0 && p != std::numeric_limits<double>::infinity())
        throw BadParameter("besov_seminorm: p must be 1, 2 or inf");
    const auto& u = flow.values();
    const std::size_t n = u.size();
    const double h = flow.grid().spacing();

    std::vector<double> vals(n / 2, 0.0);
    parallel_for(n / 2, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const std::size_t shift = i + 1;
            const double dist = static_cast<double>(shift) * h;  // <= pi
            vals[i] = lp_norm_of_diff(u, shift, p, h) / std::pow(dist, alpha);
        }
    });
    return *std::max_element(vals.begin(), vals.end());
}

double holder_roughness(const FlowSample& flow, double alpha, int delta_levels) {
    if (flow.grid().domain() != Domain::Torus)
        throw BadParameter("holder_roughness: torus flows only");
    if (delta_levels < 1) throw BadParameter("holder_roughness: delta_levels >= 1");
    const auto& u = flow.values();
    const std::size_t n = u.size();
    const double h = flow.grid().spacing();

    // dyadic scales anchored at the finest resolved one: the roughness
    // modulus is a small-delta quantity, so refining the grid must extend
    // the scan downward (this is what makes L_alpha = +inf show up as
    // growth under refinement)
    double inf = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= delta_levels; ++j) {
        const double delta = 8.0 * h * std::pow(2.0, j);
        if (delta > std::numbers::pi / 2.0) break;
        const std::size_t w = static_cast<std::size_t>(std::floor(delta / h));
        const double denom = std::pow(delta, alpha);
        // v[i] = u at circular index i - w; the window of center c is
        // v[c .. c + 2w], so one monotone-deque pass gives all centers
        const std::size_t win = 2 * w + 1;
        std::vector<double> v(n + 2 * w);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = u[(i + n - (w % n)) % n];
        std::vector<std::size_t> qmax, qmin;
        std::size_t hmax = 0, hmin = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            while (qmax.size() > hmax && v[qmax.back()] <= v[i]) qmax.pop_back();
            qmax.push_back(i);
            while (qmin.size() > hmin && v[qmin.back()] >= v[i]) qmin.pop_back();
            qmin.push_back(i);
            if (i + 1 >= win) {
                const std::size_t c = i + 1 - win;  // window start == center index
                while (qmax[hmax] + win <= i) ++hmax;
                while (qmin[hmin] + win <= i) ++hmin;
                const double sup = std::max(v[qmax[hmax]] - u[c], u[c] - v[qmin[hmin]]);
                inf = std::min(inf, sup / denom);
            }
        }
    }
    return inf;
}

double p_variation(const FlowSample& flow, double p) {
    if (!(p >= 1.0)) throw BadParameter("p_variation: p must be >= 1");
    const auto& u = flow.values();
    std::vector<double> seq(u.begin(), u.end());
    if (flow.grid().domain() == Domain::Torus) {
        seq.push_back(u.front());  // close the loop at f(pi) = f(-pi)
    } else {
        // the grid excludes y = pi; append the extrapolated last chord so
        // the partition covers the full interval
        seq.push_back(2.0 * u.back() - u[u.size() - 2]);
    }

    double var_p;
    if (p == 1.0) {
        double s = 0.0;
        for (std::size_t j = 0; j + 1 < seq.size(); ++j) s += std::abs(seq[j + 1] - seq[j]);
        var_p = s;
    } else {
        const std::vector<double> e = extrema_chain(seq);
        const std::size_t m = e.size();
        std::vector<double> best(m, 0.0);
        for (std::size_t i = 1; i < m; ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < i; ++j)
                v = std::max(v, best[j] + std::pow(std::abs(e[i] - e[j]), p));
            best[i] = v;
        }
        var_p = std::pow(best[m - 1], 1.0 / p);
    }

    // |u(0)|: y = 0 is the left endpoint on the interval, the mid grid
    // point on the torus
    const double u0 = flow.grid().domain() == Domain::Torus ? u[u.size() / 2] : u[0];
    return std::abs(u0) + var_p;
}

double omega1(const FlowSample& flow, double delta) {
    if (!(delta > 0.0)) throw BadParameter("omega1: delta must be positive");
    const double h = flow.grid().spacing();
    if (2.0 * delta < 8.0 * h)
        throw ResolutionExceeded("omega1: window 2 delta < 8 spacing");

    PrimitivePL psi(flow);
    const bool torus = flow.grid().domain() == Domain::Torus;
    const double lo = torus ? -std::numbers::pi : delta;
    const double hi = torus ? std::numbers::pi : std::numbers::pi - delta;
    if (hi <= lo) throw BadParameter("omega1: delta too large for the interval");
    const double stride = delta / 4.0;

    const std::size_t count = static_cast<std::size_t>(std::floor((hi - lo) / stride)) + 1;
    std::vector<double> vals(count, std::numeric_limits<double>::infinity());
    parallel_for(count, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const double x = lo + static_cast<double>(i) * stride;
            if (!torus && x + delta > std::numbers::pi + 1e-12) continue;
            vals[i] = psi.affine_residual(x - delta, x + delta);
        }
    });
    return *std::min_element(vals.begin(), vals.end());
}

double wei_F(double x) {
    if (x < 0.0) throw BadParameter("wei_F: x must be >= 0");
    if (x == 0.0) return 0.0;
    double lo = 0.0;
    double hi = std::numbers::pi / 2.0;
    // g(y) = 36 y tan y - x, increasing on [0, pi/2). Bisect to float
    // convergence: near pi/2 the map is so steep that 1e-12 in y is not
    // enough for 1e-9 relative accuracy in x.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double g = 36.0 * mid * std::tan(mid) - x;
        if (g < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double wei_upper_bound(const FlowSample& flow, double nu, double t, double delta) {
    if (!(nu > 0.0)) throw BadParameter("wei_upper_bound: nu must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw BadParameter("wei_upper_bound: delta in (0,1)");
    if (t < 0.0) throw BadParameter("wei_upper_bound: t must be >= 0");
    const double w = omega1(flow, delta);
    const double f = wei_F(delta * w / (nu * nu));
    return std::exp(std::numbers::pi / 2.0 - t * nu * f * f / (delta * delta));
}

}  // namespace shearlab
