#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shearlab/flow.hpp"
#include "shearlab/spectral.hpp"

namespace shearlab {

/// Fitted log-log slope with residual and the window it was taken on.
struct FitResult {
    double exponent = 0.0;
    double intercept = 0.0;  ///< log prefactor
    double r_squared = 0.0;
    double window_min = 0.0;
    double window_max = 0.0;
    std::size_t n_points = 0;
};

/// Rows of (parameter value, measured quantity) plus free-form metadata.
struct SweepTable {
    std::string axis;  ///< "t", "nu", "xi", "seed"
    struct Row {
        double parameter = 0.0;
        double value = 0.0;
        bool valid = true;
        std::string note;
    };
    std::vector<Row> rows;
    std::string provenance;  ///< config hash of the emitting run
};

struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

/// Ordinary least squares of log(ordinate) against log(abscissa) inside
/// the window. Ordinates must be positive there; >= 5 points required.
FitResult fit_power_law(const DecayCurve& curve, const Window& window);

/// First time the curve crosses q * ordinate(0), interpolating linearly
/// in log-ordinate. `crossed` is false when the curve never reaches the
/// threshold; tau then reports the lower bound t_end.
struct CrossingTime {
    double tau = 0.0;
    bool crossed = false;
};
CrossingTime dissipation_time(const DecayCurve& curve, double q);

struct MixingExperimentResult {
    DecayCurve curve;           ///< ||e^{-i t k u} g0||_{H^{-1/2}}
    FitResult fit;
    double predicted_exponent;  ///< -1/(2 alpha_nominal)
    double max_usable_time;     ///< phase-resolution cap for this flow
    std::vector<double> dropped_times;  ///< requested times beyond the cap
};

/// Inviscid mixing rate experiment: apply e^{-i t k u}, record the
/// H^{-1/2} norm on log-spaced times, fit the tail beyond the first half
/// decade and below the resolution cap.
MixingExperimentResult mixing_experiment(const FlowSample& flow, double alpha_nominal, int k,
                                         const std::vector<double>& times,
                                         const ComplexField& g0, double s = 0.5);

struct DissipationExperimentOptions {
    double q = 0.36787944117144233;  ///< e^{-1}
    double t_end_scale = 50.0;       ///< t_end = scale * nu^{-tau_exponent}
    std::optional<double> tau_exponent;  ///< default alpha/(alpha+2)
    std::size_t record_points = 96;
    double dt = 0.0;                 ///< 0 = phase-rotation policy
};

struct DissipationExperimentResult {
    SweepTable table;  ///< (nu, tau)
    FitResult fit;     ///< log tau vs log nu over the valid cells
    double predicted_slope;  ///< -alpha/(alpha+2)
};

/// Enhanced-dissipation rate experiment: viscous evolution per nu, the
/// dissipation time tau(nu), and the log-log slope across the sweep.
/// Cells that never cross are recorded invalid and excluded from the fit;
/// the fit refuses with fewer than 4 valid cells.
DissipationExperimentResult dissipation_experiment(const FlowSample& flow,
                                                   double alpha_nominal, int k,
                                                   const std::vector<double>& nu_list,
                                                   const ComplexField& g0,
                                                   const DissipationExperimentOptions& opts = {});

struct WeiBoundCell {
    double t = 0.0;
    double measured = 0.0;  ///< ||g_t|| / ||g0|| maximized over the probe ensemble
    double bound = 0.0;     ///< closed-form Appendix bound at (nu, t, delta)
    bool ok = false;        ///< measured <= bound + 1e-8
};

/// Compares the measured decay of the viscous semigroup against the
/// closed-form exp(pi/2 - t nu delta^-2 F(...)^2) bound across a time grid.
std::vector<WeiBoundCell> wei_bound_experiment(const FlowSample& flow, double nu,
                                               const std::vector<double>& t_grid,
                                               double delta,
                                               const std::vector<ComplexField>& probes,
                                               double dt = 0.0);

/// ||f||_{L^2} / (||f||_{H^{-s1}}^{s2/(s1+s2)} ||f||_{H^{s2+eps}}^{s1/(s1+s2)})
/// with eps = 0.01; H^{s2+eps} is an upper surrogate for B^{s2}_{2,inf},
/// so bounded ratios are evidence in the inequality's valid direction.
double interpolation_check(const ComplexField& field, double s1, double s2);

/// log-spaced grid helper: count points from a to b inclusive.
std::vector<double> log_spaced(double a, double b, std::size_t count);

}  // namespace shearlab
