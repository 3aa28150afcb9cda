#pragma once

// Zero-mean Gaussian states of the three fluctuation modes, squeezing of the
// two chain modes, and the reduced two-mode covariance.

#include <Eigen/Dense>

#include "mesoent/meso_dynamics.hpp"
#include "mesoent/micro_chain.hpp"
#include "mesoent/symplectic_core.hpp"

namespace mesoent {

/// Gaussian state over (X1, P1, X2, P2, X3, P3); always bona fide.
class MesoGaussianState {
public:
    explicit MesoGaussianState(const CovarianceMatrix& cov);
    explicit MesoGaussianState(const RealMatrix& sigma);

    const CovarianceMatrix& covariance() const noexcept { return cov_; }
    const RealMatrix& matrix() const noexcept { return cov_.matrix(); }

private:
    CovarianceMatrix cov_;
};

/// 4x4 covariance [[Sigma1, Sigmac], [Sigmac^T, Sigma2]] of the two chain modes.
class TwoModeCovariance {
public:
    /// Validates symmetry; bona-fidelity is checked unless `check` is false.
    explicit TwoModeCovariance(const Eigen::Matrix4d& sigma, bool check = true);

    const Eigen::Matrix4d& matrix() const noexcept { return m_; }
    Eigen::Matrix2d sigma1() const { return m_.topLeftCorner<2, 2>(); }
    Eigen::Matrix2d sigma2() const { return m_.bottomRightCorner<2, 2>(); }
    Eigen::Matrix2d sigmac() const { return m_.topRightCorner<2, 2>(); }

    BonaFide bona_fide() const;

private:
    Eigen::Matrix4d m_;
};

struct SqueezeSpec {
    double k = 0.0;
};

/// diag(e^{2k}, e^{-2k}, e^{2k}, e^{-2k}, 1, 1).
RealMatrix squeeze_matrix(const SqueezeSpec& spec);

MesoGaussianState thermal_meso_state(const BathParams& bath);
MesoGaussianState squeeze(const MesoGaussianState& state, const SqueezeSpec& spec);
TwoModeCovariance reduce_two_modes(const MesoGaussianState& state);
TwoModeCovariance reduce_two_modes(const CovarianceMatrix& cov);

/// Analytic reduced covariance of the squeezed thermal state after time t:
/// blockdiag(H, H) [[A, B], [B, A]] blockdiag(H, H)^T with H the 2 omega t rotation.
TwoModeCovariance closed_form_reduced(const BathParams& bath, double k, double t);

/// Pipeline counterpart: reduce(evolve(squeeze(thermal, k), t)).
TwoModeCovariance evolved_reduced(const BathParams& bath, double k, double t);

}  // namespace mesoent
