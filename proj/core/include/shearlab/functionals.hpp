#pragma once

#include <complex>
#include <vector>

#include "shearlab/flow.hpp"

namespace shearlab {

/// Subinterval of the flow's (extended, for torus flows) domain.
struct Interval {
    double a = 0.0;
    double b = 0.0;
    double length() const { return b - a; }
};

/// Discretized estimate of the irregularity norm ||Phi^u||_{gamma,rho}.
/// The scan maximum over a finite (xi, dyadic interval) set is a lower
/// bound for the true supremum; it never decreases when the scan grows.
struct IrregularityEstimate {
    double gamma = 0.0;
    double rho = 0.0;
    double value = 0.0;
    double xi_max = 0.0;
    int depth = 0;
};

/// Discretized estimate of Gamma_alpha(u); the minimum over a finite
/// (ybar, delta) set is an upper bound for the true infimum.
struct WeiEstimate {
    double alpha = 0.0;
    double value = 0.0;
    double argmin_ybar = 0.0;
    double argmin_delta = 0.0;
};

/// log-spaced frequency magnitudes over [xi_min, xi_max], both signs.
std::vector<double> make_xi_grid(double xi_min, double xi_max, int per_decade,
                                 bool both_signs = true);

/// Phi^u over iv: integral of e^{i xi u(z)} dz with u piecewise linear,
/// exact per-segment antiderivative (midpoint rule on flat segments).
/// Refuses when |xi| max|du| > pi: the grid cannot resolve the phase.
std::complex<double> osc_integral(const FlowSample& flow, double xi, const Interval& iv);

/// Scan max of |Phi^u_I(xi)| |I|^{-gamma} |xi|^{rho} over the xi grid and
/// all dyadic subintervals of the domain down to `depth` levels.
IrregularityEstimate rho_irregularity_norm(const FlowSample& flow, double gamma, double rho,
                                           const std::vector<double>& xi_grid, int depth);

/// Exact L^2(iv) distance squared of the piecewise-linear psi from
/// span{1, y}. psi is passed as a sampled flow (e.g. the output of
/// primitive()); iv needs at least 4 grid points.
double affine_fit_residual(const FlowSample& psi, const Interval& iv);

struct GammaWeiOptions {
    int delta_levels = 8;       ///< delta = 2^-1 .. 2^-levels
    double ybar_stride = 0.25;  ///< window start stride as a fraction of delta
};

/// Wei's functional: min over dyadic delta and sliding ybar of
/// [delta^{-2 alpha - 3} * affine-fit residual of psi on [ybar, ybar+delta]]^{1/2}.
/// Torus flows are identified with their 2 pi-periodic extension.
WeiEstimate gamma_wei(const FlowSample& flow, double alpha,
                      const GammaWeiOptions& opts = {});

struct ClampedScalar {
    double value = 0.0;
    bool clamped = false;  ///< an integrand hit the |D2 psi| < 1e-14 floor
};

/// G_alpha(ybar, delta) = int_ybar^{ybar+delta} |D2_delta psi|^{-1/(1+alpha)} dy
/// by trapezoid on the grid points; degenerate second differences are
/// clamped and flagged rather than returning infinity.
ClampedScalar g_alpha(const FlowSample& flow, double alpha, double ybar, double delta);

/// K_{alpha,eps} = sup over dyadic cells (n <= max_level, 1 <= k < 2^n) of
/// 2^{-n eps} G_alpha(pi k 2^{-n}, pi 2^{-n-1}). On interval flows the
/// window start is clamped so [ybar, ybar + 3 delta] stays inside [0, pi].
ClampedScalar k_alpha_eps(const FlowSample& flow, double alpha, double eps, int max_level);

/// Nikolskii seminorm sup_h ||u(.+h) - u||_{L^p(T)} / h^alpha over grid
/// shifts h <= pi; plain (unnormalized) dy measure, p in {1, 2, inf}.
double besov_seminorm(const FlowSample& flow, double alpha, double p);

/// Discrete Hoelder roughness L_alpha(u): inf over grid ybar and dyadic
/// delta of sup_{d_T(z, ybar) <= delta} |u(z) - u(ybar)| / delta^alpha.
double holder_roughness(const FlowSample& flow, double alpha, int delta_levels);

/// ||u||_{V^p} over the grid restriction: |u(0)| plus the maximum of
/// (sum |u(t_{i+1}) - u(t_i)|^p)^{1/p} over partitions of grid points
/// (a lower bound for the true p-variation when p > 1).
double p_variation(const FlowSample& flow, double p);

/// omega_1(delta, u): min over sliding centers x (stride delta/4) of the
/// affine-fit residual of psi over [x - delta, x + delta].
double omega1(const FlowSample& flow, double delta);

/// Inverse of x -> 36 x tan x on [0, pi/2), by bisection to 1e-12.
double wei_F(double x);

/// Closed-form decay bound exp(pi/2 - t nu delta^-2 F(delta omega1 / nu^2)^2)
/// for the semigroup of d_t g + i u g = nu d_yy g.
double wei_upper_bound(const FlowSample& flow, double nu, double t, double delta);

}  // namespace shearlab
