#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shearlab/common.hpp"
#include "shearlab/grid.hpp"

namespace shearlab {

/// Generator provenance: enough to regenerate the sample bit-identically.
struct FlowMeta {
    std::string generator;                  ///< "weierstrass", "fbm", "constant", ...
    std::map<std::string, double> params;
    std::optional<RandomSeed> seed;
};

/// Real velocity profile sampled on a Grid1D. Torus samples are read as
/// their 2pi-periodic extension when evaluated outside the base domain;
/// interval samples extend the last segment linearly up to y = pi.
class FlowSample {
public:
    FlowSample(Grid1D grid, std::vector<double> values, FlowMeta meta);

    const Grid1D& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const FlowMeta& meta() const { return meta_; }

    /// Piecewise-linear evaluation (periodic extension on the torus).
    double operator()(double y) const;

    /// Largest |u(y_{j+1}) - u(y_j)| over adjacent samples, wrap segment
    /// included on the torus. Drives the phase-resolution checks.
    double max_adjacent_increment() const;

    double max_abs() const;

private:
    Grid1D grid_;
    std::vector<double> values_;
    FlowMeta meta_;
};

enum class AnalyticKind { Constant, Linear, Sine, CustomTrig };

struct AnalyticSpec {
    AnalyticKind kind = AnalyticKind::Constant;
    double c = 0.0;                         ///< constant value
    int k0 = 1;                             ///< sine frequency
    std::vector<double> trig_coeffs;        ///< custom_trig: sum a_m cos(m y), m = 1..
};

/// Truncated Weierstrass sum W(y) = sum_{m<n_terms} lambda^{-m alpha} cos(lambda^m y)
/// on a torus grid. Highest frequency must satisfy lambda^{n_terms-1} <= n/4.
FlowSample weierstrass(double alpha, int lambda, int n_terms, const Grid1D& grid);

/// One fractional Brownian motion path with Hurst parameter `hurst` on an
/// interval grid, X(0) = 0, exact in law via circulant embedding of the
/// fractional Gaussian noise covariance (Cholesky fallback for n <= 4096).
FlowSample sample_fbm(double hurst, const Grid1D& grid, RandomSeed seed);

/// Even reflection (T phi)(y) = phi(|y|) mapping an interval sample to a
/// torus sample on 2n points.
FlowSample symmetrize(const FlowSample& flow);

FlowSample analytic_flow(const AnalyticSpec& spec, const Grid1D& grid);

/// psi(y) = int_0^y u(z) dz by cumulative trapezoid on the samples,
/// psi(left endpoint) = 0; same grid as the input.
FlowSample primitive(const FlowSample& flow);

}  // namespace shearlab
