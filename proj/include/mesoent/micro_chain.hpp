#pragma once

// Single-site algebra of the two-chain oscillator model: bath parameters,
// thermal covariance, the six fluctuation-basis observables, Wick moments,
// the Kossakowski matrix and the Lindblad action on quadratic observables.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mesoent/ccr_polynomial.hpp"
#include "mesoent/symplectic_core.hpp"

namespace mesoent {

/// Ordered single-site canonical variables (x1, p1, x2, p2).
enum class CanonicalVar : int { x1 = 0, p1 = 1, x2 = 2, p2 = 3 };

CanonicalVar parse_canonical(std::string_view symbol);

/// Bath temperature, oscillator frequency and inter-chain coupling, with the
/// derived gamma = e^{-beta omega} and eta = tanh(beta omega / 2).
/// |lambda| > 1 is constructible (for negative tests) but flagged.
class BathParams {
public:
    static BathParams from_temperature(double temperature, double omega, double lambda);
    static BathParams from_beta(double beta, double omega, double lambda);

    double temperature() const noexcept { return 1.0 / beta_; }
    double beta() const noexcept { return beta_; }
    double omega() const noexcept { return omega_; }
    double lambda() const noexcept { return lambda_; }
    double gamma() const noexcept { return gamma_; }
    double eta() const noexcept { return eta_; }

    bool completely_positive() const noexcept { return lambda_ * lambda_ <= 1.0; }
    /// Throws CompletePositivityError unless lambda^2 <= 1.
    void require_completely_positive() const;

    /// Diagonal of the mesoscopic thermal covariance, (1 + eta^2) / (4 eta).
    double meso_thermal_variance() const noexcept { return (1.0 + eta_ * eta_) / (4.0 * eta_); }

private:
    BathParams(double beta, double omega, double lambda);
    double beta_;
    double omega_;
    double lambda_;
    double gamma_;
    double eta_;
};

/// X = sum_ij A_ij (R_i R_j + R_j R_i) / 2 + c over R = (x1, p1, x2, p2).
class QuadraticObservable {
public:
    QuadraticObservable() : a_(Eigen::Matrix4d::Zero()) {}
    explicit QuadraticObservable(const Eigen::Matrix4d& a, double c = 0.0);

    static QuadraticObservable identity() { return QuadraticObservable(Eigen::Matrix4d::Zero(), 1.0); }

    const Eigen::Matrix4d& coefficients() const noexcept { return a_; }
    double offset() const noexcept { return c_; }

    CcrPolynomial to_polynomial() const;

    friend QuadraticObservable operator+(const QuadraticObservable& x, const QuadraticObservable& y) {
        return QuadraticObservable(x.a_ + y.a_, x.c_ + y.c_);
    }
    friend QuadraticObservable operator*(double s, const QuadraticObservable& x) {
        return QuadraticObservable(s * x.a_, s * x.c_);
    }

private:
    Eigen::Matrix4d a_;
    double c_ = 0.0;
};

/// Result of projecting a polynomial back onto quadratic-plus-scalar form.
struct QuadraticProjection {
    QuadraticObservable observable;
    /// Largest discarded magnitude: linear, cubic and quartic terms and
    /// imaginary parts (zero for a Hermitian quadratic).
    double residual;
};

QuadraticProjection project_quadratic(const CcrPolynomial& p);

/// The single-site Hamiltonian (omega/2) sum_alpha (x_alpha^2 + p_alpha^2).
QuadraticObservable site_hamiltonian(const BathParams& bath);

/// X_1..X_6: sqrt(eta)/2 (x1^2 - p1^2), sqrt(eta)/2 {x1, p1}, the same for
/// chain 2, and sqrt(eta/2) (x1 x2 - p1 p2), sqrt(eta/2) (x1 p2 + p1 x2).
std::array<QuadraticObservable, 6> basis_observables(const BathParams& bath);

/// X_r = sum_mu r_mu X_mu.
QuadraticObservable combine_basis(const BathParams& bath, const RealVector& r);

/// Site covariance of the thermal state, (1 / 2 eta) 1_4.
CovarianceMatrix thermal_site_covariance(const BathParams& bath);

/// <R_{i1} R_{i2} ... R_{in}> in a zero-mean Gaussian state, summing the
/// (n-1)!! order-preserving pairings of G = Sigma + (i/2) J.
Complex ordered_moment(const CovarianceMatrix& cov, std::span<const CanonicalVar> indices);
Complex ordered_moment(const CovarianceMatrix& cov, const std::vector<std::string>& symbols);

Complex expectation(const CovarianceMatrix& cov, const QuadraticObservable& x);
/// <X Y> (operator order kept) by Wick's theorem.
Complex expectation_product(const CovarianceMatrix& cov, const QuadraticObservable& x,
                            const QuadraticObservable& y);

struct FluctuationKinematics {
    RealMatrix sigma_beta;  // 6x6 real symmetric part of <X_mu X_nu>
    RealMatrix sigma;       // 6x6, twice the imaginary antisymmetric part
};

/// Wick evaluation of <X_mu X_nu> - <X_mu><X_nu>; throws ConsistencyError if
/// the result departs from ((1+eta^2)/4eta) 1_6 and the standard 6x6 form.
FluctuationKinematics fluctuation_kinematics(const BathParams& bath);

/// 4x4 Kossakowski matrix [[A, lambda A], [lambda A^dagger, A]] without the
/// complete-positivity check.
ComplexMatrix kossakowski_matrix(const BathParams& bath);
/// Same, throwing CompletePositivityError when lambda^2 > 1.
HermitianMatrix kossakowski(const BathParams& bath);

/// i[H, X] + sum_ab C_ab (V_a X V_b - {V_a V_b, X} / 2) on a polynomial.
CcrPolynomial lindblad_polynomial(const CcrPolynomial& x, const BathParams& bath);

/// Lindblad action on a quadratic observable, computed by canonical
/// commutator rewriting. Throws ConsistencyError if the image is not
/// quadratic-plus-scalar.
QuadraticObservable lindblad_action(const QuadraticObservable& x, const BathParams& bath);

struct MesoGeneratorDerivation {
    RealMatrix generator;     // row mu: coefficients of L[X_mu] on X_nu
    double residual;          // largest out-of-span residual over mu
    RealVector scalar_parts;  // identity components of L[X_mu]
};

/// Expands L[X_mu] on the basis by least squares over symmetric 4x4
/// matrices. Throws SpanClosureError if the residual exceeds tolerance.
MesoGeneratorDerivation derive_meso_generator(const BathParams& bath);

/// (<X^2> - <X>^2) / N in the thermal state.
double mean_field_variance(const QuadraticObservable& x, const BathParams& bath, long n_sites);

/// Linear drift D (L[R_i] = sum_j D_ij R_j) and noise Q of the site second
/// moments: dSigma/dt = D Sigma + Sigma D^T + Q.
struct SiteMomentEquations {
    RealMatrix drift;
    RealMatrix noise;
};

SiteMomentEquations site_moment_equations(const BathParams& bath);

}  // namespace mesoent
