#include "shearlab/piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace shearlab {

double pl_affine_residual(double left, double spacing,
                          const std::function<double(double)>& eval, double a, double b) {
    const double len = b - a;
    if (!(len > 0.0)) throw BadParameter("pl_affine_residual: empty interval");
    // chord through the window endpoints; subtracting it leaves the
    // residual unchanged and kills the cancellation between the raw
    // moment integrals
    const double pa = eval(a);
    const double pb = eval(b);
    const double slope = (pb - pa) / len;
    const auto phi = [&](double y) { return eval(y) - pa - slope * (y - a); };

    const double mid = 0.5 * (a + b);
    double int_ff = 0.0, int_f = 0.0, int_ft = 0.0;

    double y_next = std::ceil((a - left) / spacing) * spacing + left;
    if (y_next <= a + 1e-14 * spacing) y_next += spacing;
    double s0 = a;
    double v0 = 0.0;  // phi(a) = 0 by construction
    while (true) {
        const double s1 = std::min(y_next, b);
        const double v1 = (s1 == b) ? 0.0 : phi(s1);
        const double ls = s1 - s0;
        if (ls > 0) {
            int_ff += ls * (v0 * v0 + v0 * v1 + v1 * v1) / 3.0;
            int_f += ls * (v0 + v1) * 0.5;
            int_ft += ls * ls * (v0 + 2.0 * v1) / 6.0 + (s0 - mid) * ls * (v0 + v1) * 0.5;
        }
        if (s1 >= b) break;
        s0 = s1;
        v0 = v1;
        y_next += spacing;
    }

    const double c0 = int_f / std::sqrt(len);
    const double c1 = int_ft * std::sqrt(12.0 / (len * len * len));
    return std::max(0.0, int_ff - c0 * c0 - c1 * c1);
}

PrimitivePL::PrimitivePL(const FlowSample& flow) {
    const auto& g = flow.grid();
    const auto& v = flow.values();
    const std::size_t n = g.size();
    left_ = g.left();
    length_ = g.length();
    spacing_ = g.spacing();
    periodic_ = g.domain() == Domain::Torus;

    // Build the primitive of u minus its grid mean. Every consumer of
    // this evaluator (affine-fit residuals, second differences) is exactly
    // invariant under affine additions to psi, and the demeaning keeps the
    // node magnitudes O(||u||_inf) so window chords subtract without
    // cancellation; constant shifts of u then cost no precision.
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);

    nodes_.resize(n + 1);
    nodes_[0] = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j)
        nodes_[j + 1] = nodes_[j] + 0.5 * spacing_ * (v[j] - mean + v[j + 1] - mean);
    // closing segment: wraps to v[0] on the torus, extrapolates the last
    // chord on the interval
    const double u_end = periodic_ ? v[0] : 2.0 * v[n - 1] - v[n - 2];
    nodes_[n] = nodes_[n - 1] + 0.5 * spacing_ * (v[n - 1] - mean + u_end - mean);
}

double PrimitivePL::eval_base(double yr) const {
    const double s = (yr - left_) / spacing_;
    std::size_t j = static_cast<std::size_t>(std::max(0.0, std::floor(s)));
    if (j >= nodes_.size() - 1) j = nodes_.size() - 2;
    const double y0 = left_ + static_cast<double>(j) * spacing_;
    const double t = (yr - y0) / spacing_;
    return nodes_[j] + t * (nodes_[j + 1] - nodes_[j]);
}

double PrimitivePL::operator()(double y) const {
    if (!periodic_) {
        const double tol = 1e-9 * length_;
        if (y < left_ - tol || y > left_ + length_ + tol)
            throw DomainExceeded("primitive evaluated outside [0, pi] for interval flow");
        return eval_base(std::clamp(y, left_, left_ + length_));
    }
    const double m = std::floor((y - left_) / length_);
    const double yr = y - m * length_;
    return eval_base(std::clamp(yr, left_, left_ + length_)) + m * total_integral();
}

double PrimitivePL::second_difference(double y, double delta) const {
    return (*this)(y + 2.0 * delta) - 2.0 * (*this)(y + delta) + (*this)(y);
}

double PrimitivePL::affine_residual(double a, double b) const {
    return pl_affine_residual(left_, spacing_, [this](double y) { return (*this)(y); }, a, b);
}

}  // namespace shearlab
