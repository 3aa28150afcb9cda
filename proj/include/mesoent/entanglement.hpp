#pragma once

// Two-mode Gaussian entanglement: symplectic invariants, the separability
// score, logarithmic negativity, time curves, sudden birth/death, asymptotic
// plateau and the critical temperature at lambda = 1.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mesoent/gaussian_states.hpp"
#include "mesoent/meso_dynamics.hpp"
#include "mesoent/micro_chain.hpp"

namespace mesoent {

struct Invariants {
    double i1 = 0.0;  // det Sigma1
    double i2 = 0.0;  // det Sigma2
    double i3 = 0.0;  // det Sigmac
    double i4 = 0.0;  // tr(Sigma1 J Sigmac J Sigma2 J Sigmac^T J)
};

struct Separability {
    double score;
    bool separable;
};

struct EntanglementReport {
    double i1 = 0.0, i2 = 0.0, i3 = 0.0, i4 = 0.0;
    double s = 0.0;
    double idet = 0.0;
    double e = 0.0;
    bool separable = true;
};

Invariants invariants(const TwoModeCovariance& cov);
Separability separability(const TwoModeCovariance& cov);
/// Throws ConsistencyError when the smaller-root discriminant is below -1e-9.
EntanglementReport log_negativity(const TwoModeCovariance& cov);

struct CurveParams {
    double temperature;
    double omega;
    double lambda;
    double k;
};

struct CurveSample {
    double t;
    EntanglementReport report;
    Eigen::Matrix4d sigma;  // reduced covariance at t
};

struct EntanglementCurve {
    CurveParams params;
    std::vector<CurveSample> samples;
};

/// Evaluates the covariance pipeline at arbitrary times for one parameter set.
class CurveEvaluator {
public:
    CurveEvaluator(const BathParams& bath, double k);

    CurveSample sample(double t) const;
    EntanglementReport report(double t) const { return sample(t).report; }

    const BathParams& bath() const noexcept { return bath_; }
    double k() const noexcept { return k_; }

private:
    BathParams bath_;
    double k_;
    MesoGenerator gen_;
    RealMatrix sigma_beta_;
    CovarianceMatrix sigma0_;
};

/// 0, dt, 2 dt, ..., t_max (endpoint included when it falls on the grid).
std::vector<double> uniform_grid(double t_max, double dt);

/// OpenMP-parallel over samples; results are identical to serial::entanglement_curve.
EntanglementCurve entanglement_curve(const BathParams& bath, double k, std::span<const double> t_grid);

struct SuddenTimes {
    std::optional<double> birth;
    std::optional<double> death;
};

/// Brackets sign changes of S on the sampled curve and bisects to 1e-4.
/// Throws ResolutionError when a crossing cannot be bracketed.
SuddenTimes sudden_times(const EntanglementCurve& curve, double tol = kTol.time_root);

struct PeakE {
    double t;
    double e;
};

/// Largest E on the grid, refined by golden-section search around the best sample.
PeakE peak_entanglement(const BathParams& bath, double k, std::span<const double> t_grid);

/// Large-time plateau of E: t doubles from 1 until |E(2t) - E(t)| < 1e-8 and
/// the invariants drift by less than 1e-9 (relative). ConvergenceError past 1e4.
double asymptotic_E(const BathParams& bath, double k);

struct CriticalTemperature {
    double bisection;    // midpoint of the final bracket
    double margin;       // half-width of the final bracket
    double closed_form;  // root of (3 + e^{-4k}) (1 + eta^2)^2 = 16 eta^2 (NaN unless lambda = 1)
};

/// Bisection on T in [0.01, 5] for the sign of asymptotic_E. BracketError if
/// there is no sign change.
CriticalTemperature critical_temperature(double k, double lambda = 1.0, double omega = 1.0,
                                         double tol = kTol.temperature_root);

/// Closed-form T_c at lambda = 1; BracketError if no root exists (k <= 0).
double critical_temperature_closed_form(double k, double omega = 1.0);

/// The printed polynomial-exponential expression for the time profile;
/// numerically equal to Idet of the squeezed evolved state.
double script_E_reference(const BathParams& bath, double k, double t);

struct BoundaryRow {
    double k;
    double t_c;
    double margin;
    double closed_form;
    bool ok;
    std::string message;
};

/// OpenMP-parallel over k; rows come back in input order.
std::vector<BoundaryRow> phase_boundary(std::span<const double> k_values, double lambda = 1.0,
                                        double omega = 1.0);

namespace serial {
EntanglementCurve entanglement_curve(const BathParams& bath, double k, std::span<const double> t_grid);
std::vector<BoundaryRow> phase_boundary(std::span<const double> k_values, double lambda = 1.0,
                                        double omega = 1.0);
}  // namespace serial

}  // namespace mesoent
