#pragma once

// Small dense kernel shared by every other module: matrix exponential,
// Hermitian spectra, symplectic forms, covariance validity, fixed-step RK4.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

#include "mesoent/errors.hpp"
#include "mesoent/tolerances.hpp"

namespace mesoent {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Complex matrix with entry(i,j) == conj(entry(j,i)). Construction rejects
/// inputs further than `tol` from Hermitian, then symmetrizes exactly.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const ComplexMatrix& m, double tol = kTol.hermitian);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    ComplexMatrix m_;
};

/// Real antisymmetric form with sigma^2 = -1: block-diagonal 2x2 units
/// [[0, 1], [-1, 0]], one per canonical pair.
class SymplecticForm {
public:
    static SymplecticForm standard(int modes);

    const RealMatrix& matrix() const noexcept { return j_; }
    Eigen::Index dim() const noexcept { return j_.rows(); }
    int modes() const noexcept { return static_cast<int>(j_.rows() / 2); }

private:
    explicit SymplecticForm(RealMatrix j) : j_(std::move(j)) {}
    RealMatrix j_;
};

/// Real symmetric covariance with its symplectic form. Only structure
/// (dimensions, symmetry, finiteness) is enforced here; bona-fidelity is a
/// separate query so that invalid covariances can still be inspected.
class CovarianceMatrix {
public:
    CovarianceMatrix(const RealMatrix& sigma, SymplecticForm form);

    const RealMatrix& matrix() const noexcept { return sigma_; }
    const SymplecticForm& form() const noexcept { return form_; }
    Eigen::Index dim() const noexcept { return sigma_.rows(); }

private:
    RealMatrix sigma_;
    SymplecticForm form_;
};

/// e^{tA} by scaling and squaring with a degree-13 Pade approximant.
RealMatrix expm(const RealMatrix& a, double t = 1.0);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eig_hermitian(const HermitianMatrix& h);
/// Same, validating Hermiticity first (ValidityError if violated).
double min_eig_hermitian(const ComplexMatrix& h, double tol = kTol.hermitian);

struct BonaFide {
    bool ok;
    double margin;  // min eigenvalue of Sigma + (i/2) sigma
};

BonaFide check_bona_fide(const RealMatrix& sigma, const SymplecticForm& form,
                         double slack = kTol.bona_fide);
BonaFide check_bona_fide(const CovarianceMatrix& cov, double slack = kTol.bona_fide);

/// Sigma + (i/2) sigma as a Hermitian matrix.
ComplexMatrix uncertainty_matrix(const RealMatrix& sigma, const RealMatrix& form);

double max_abs(const RealMatrix& m);
double max_abs(const ComplexMatrix& m);

/// Classical fourth-order Runge-Kutta for dX/dt = rhs(X) over [0, t] with
/// ceil(t/dt) equal steps. Throws DivergenceError naming the first step whose
/// state is not finite.
template <class State, class Rhs>
State integrate_linear_ode(Rhs&& rhs, State x, double t, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidityError("integrate_linear_ode: dt must be positive and finite");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidityError("integrate_linear_ode: t must be non-negative and finite");
    }
    const long steps = static_cast<long>(std::ceil(t / dt - 1e-9));
    if (steps <= 0) {
        return x;
    }
    const double h = t / static_cast<double>(steps);
    for (long n = 0; n < steps; ++n) {
        const State k1 = rhs(x);
        const State k2 = rhs(State(x + (0.5 * h) * k1));
        const State k3 = rhs(State(x + (0.5 * h) * k2));
        const State k4 = rhs(State(x + h * k3));
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!x.allFinite()) {
            throw DivergenceError("integrate_linear_ode: non-finite state at step " +
                                      std::to_string(n + 1) + " of " + std::to_string(steps),
                                  n + 1);
        }
    }
    return x;
}

template <class State>
struct OdeWithEstimate {
    State value;           // result at dt/2
    double error_estimate;  // Richardson: max|x(dt) - x(dt/2)| / 15
};

/// Runs the integrator at dt and dt/2 and returns the finer result with a
/// step-halving error estimate.
template <class State, class Rhs>
OdeWithEstimate<State> integrate_with_estimate(Rhs&& rhs, const State& x0, double t, double dt) {
    const State coarse = integrate_linear_ode<State>(rhs, x0, t, dt);
    State fine = integrate_linear_ode<State>(rhs, x0, t, 0.5 * dt);
    const double diff = (coarse - fine).cwiseAbs().maxCoeff();
    return {std::move(fine), diff / 15.0};
}

}  // namespace mesoent
