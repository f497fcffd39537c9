#pragma once

#include <complex>
#include <string>
#include <vector>

#include "shearlab/flow.hpp"
#include "shearlab/grid.hpp"

namespace shearlab {

/// Complex scalar on a torus grid with its Fourier side cached.
/// Convention: ghat(eta) = (1/n) sum_j g(y_j) e^{-i eta y_j} for
/// eta = -n/2 .. n/2 - 1, so Parseval reads (1/n) sum |g|^2 = sum |ghat|^2
/// (L^2 with normalized measure dy / 2 pi).
class ComplexField {
public:
    ComplexField(Grid1D grid, std::vector<std::complex<double>> values);

    const Grid1D& grid() const { return grid_; }
    const std::vector<std::complex<double>>& values() const { return values_; }
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

    /// Fourier coefficient at integer frequency eta in [-n/2, n/2).
    std::complex<double> coeff(long eta) const;

    int eta_of_index(std::size_t i) const {
        return static_cast<int>(i) - static_cast<int>(grid_.size() / 2);
    }

    static ComplexField from_coeffs(Grid1D grid, std::vector<std::complex<double>> coeffs);

    /// Single Fourier mode e^{i eta y}.
    static ComplexField mode(const Grid1D& grid, int eta);

private:
    ComplexField(Grid1D grid, std::vector<std::complex<double>> values,
                 std::vector<std::complex<double>> coeffs)
        : grid_(grid), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

    Grid1D grid_;
    std::vector<std::complex<double>> values_;
    std::vector<std::complex<double>> coeffs_;  ///< indexed eta = -n/2 .. n/2-1
};

/// ||g||_{H^s} = (sum_eta (1 + eta^2)^s |ghat(eta)|^2)^{1/2}; s = 0 is the
/// (normalized-measure) L^2 norm.
double sobolev_norm(const ComplexField& field, double s);

struct NormConvention {
    static double weight(long eta, double s);
};

/// Monotone series of norms against time or viscosity; the unit of every
/// rate experiment.
struct DecayCurve {
    std::vector<double> abscissae;
    std::vector<double> ordinates;
    std::string label;

    void push(double x, double y);
};

/// f^k_t(y) = e^{-i k t u(y)} f^k_0(y). Refuses when the grid cannot
/// resolve the phase: |t k| max|du| must stay below pi.
ComplexField inviscid_apply(const FlowSample& flow, const ComplexField& g0, int k, double t);

/// Largest |t| accepted by inviscid_apply for this flow and k.
double max_resolved_time(const FlowSample& flow, int k);

struct EvolveResult {
    DecayCurve curve;  ///< ||g_t||_{L^2} at the record times
    ComplexField final_field;
};

struct EvolveOptions {
    double dt = 0.0;             ///< 0 = auto from the phase-rotation policy
    double max_phase_step = 0.2; ///< max radians one splitting step may rotate
};

/// Strang splitting for d_t g + i k u g = nu d_yy g: half phase step in
/// physical space, exact heat multiplier in Fourier space, half phase step.
/// Record times are hit exactly; the L^2 curve is non-increasing.
EvolveResult viscous_evolve(const FlowSample& flow, const ComplexField& g0, int k,
                            double nu, const std::vector<double>& record_times,
                            const EvolveOptions& opts = {});

/// || evolve(k, nu, t) - conj-adjusted evolve(sign k, nu/|k|, t |k|) ||_{L^2};
/// the rescaling is exact so this measures only splitting/roundoff drift.
double rescale_check(const FlowSample& flow, const ComplexField& g0, int k, double nu,
                     double t, double dt = 0.0);

struct Mode2D {
    int k = 1;
    ComplexField field;
};

struct Shear2DOptions {
    bool full_laplacian = false;  ///< extra e^{-nu k^2 t} factor per mode
    EvolveOptions evolve;
};

struct Shear2DResult {
    std::vector<int> wavenumbers;
    std::vector<DecayCurve> per_mode;   ///< ||P_k f_t||_{H^s}
    DecayCurve combined;                ///< (sum_k ||P_k f_t||_{H^s}^2)^{1/2}
};

/// Evolves each x-mode independently (inviscid when nu = 0) and assembles
/// the L^2_x H^s_y norms. k = 0 is rejected.
Shear2DResult shear2d_evolve(const FlowSample& flow, const std::vector<Mode2D>& modes,
                             double nu, const std::vector<double>& record_times, double s,
                             const Shear2DOptions& opts = {});

}  // namespace shearlab
