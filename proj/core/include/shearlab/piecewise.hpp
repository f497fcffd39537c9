#pragma once

#include <functional>
#include <vector>

#include "shearlab/flow.hpp"

namespace shearlab {

/// Exact L^2 distance squared from span{1, y} on [a, b] of a
/// piecewise-linear function with breakpoints on the lattice
/// left + j * spacing, read through `eval`. The endpoint chord is
/// subtracted first so affine inputs give 0 up to roundoff.
double pl_affine_residual(double left, double spacing,
                          const std::function<double(double)>& eval, double a, double b);

/// Piecewise-linear view of the primitive psi(y) = int (u - mean u) of a
/// flow, with node values on the grid plus the right endpoint. The mean is
/// removed for conditioning only: all consumers (affine-fit residuals,
/// second differences) are exactly invariant under affine additions to
/// psi. Torus primitives are not periodic: evaluation outside the base
/// domain adds the winding increment psi(y + 2 pi m) = psi(y) + m *
/// total_integral.
class PrimitivePL {
public:
    explicit PrimitivePL(const FlowSample& flow);

    double operator()(double y) const;

    /// Integral of u over one full period (torus) / the base interval.
    double total_integral() const { return nodes_.back(); }

    double base_left() const { return left_; }
    double base_right() const { return left_ + length_; }
    bool periodic() const { return periodic_; }

    /// Exact L^2 distance squared of the piecewise-linear psi from
    /// span{1, y} on [a, b], via the orthonormal Legendre pair on [a, b].
    /// Segment integrals are closed-form, so affine psi gives 0 up to
    /// roundoff. [a, b] may overhang the base domain only for torus flows.
    double affine_residual(double a, double b) const;

    /// Second difference psi(y + 2 delta) - 2 psi(y + delta) + psi(y).
    double second_difference(double y, double delta) const;

private:
    double eval_base(double yr) const;

    std::vector<double> nodes_;  ///< psi at left + j h, j = 0..n (includes right endpoint)
    double left_;
    double length_;
    double spacing_;
    bool periodic_;
};

}  // namespace shearlab
