#include "mesoent/gaussian_states.hpp"

#include <cmath>
#include <string>

namespace mesoent {

MesoGaussianState::MesoGaussianState(const CovarianceMatrix& cov) : cov_(cov) {
    if (cov_.dim() != 6) throw DimensionError("mesoscopic state covariance must be 6x6");
    const auto bf = check_bona_fide(cov_);
    if (!bf.ok) {
        throw ValidityError("covariance is not bona fide (margin " + std::to_string(bf.margin) + ")");
    }
}

MesoGaussianState::MesoGaussianState(const RealMatrix& sigma)
    : MesoGaussianState(CovarianceMatrix(sigma, SymplecticForm::standard(3))) {}

TwoModeCovariance::TwoModeCovariance(const Eigen::Matrix4d& sigma, bool check) : m_(sigma) {
    if (!sigma.allFinite()) throw ValidityError("two-mode covariance has non-finite entries");
    const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > kTol.symmetry * scale) {
        throw ValidityError("two-mode covariance is not symmetric");
    }
    m_ = 0.5 * (sigma + sigma.transpose());
    if (check) {
        const auto bf = bona_fide();
        if (!bf.ok) {
            throw ValidityError("two-mode covariance is not bona fide (margin " + std::to_string(bf.margin) +
                                ")");
        }
    }
}

BonaFide TwoModeCovariance::bona_fide() const {
    return check_bona_fide(RealMatrix(m_), SymplecticForm::standard(2));
}

RealMatrix squeeze_matrix(const SqueezeSpec& spec) {
    if (!std::isfinite(spec.k)) throw ValidityError("squeezing parameter must be finite");
    const double up = std::exp(2.0 * spec.k);
    const double down = std::exp(-2.0 * spec.k);
    RealVector d(6);
    d << up, down, up, down, 1.0, 1.0;
    return d.asDiagonal();
}

MesoGaussianState thermal_meso_state(const BathParams& bath) {
    return MesoGaussianState(thermal_meso_covariance(bath));
}

MesoGaussianState squeeze(const MesoGaussianState& state, const SqueezeSpec& spec) {
    const RealMatrix s = squeeze_matrix(spec);
    return MesoGaussianState(RealMatrix(s * state.matrix() * s.transpose()));
}

TwoModeCovariance reduce_two_modes(const CovarianceMatrix& cov) {
    if (cov.dim() != 6) throw DimensionError("reduction expects a 6x6 covariance");
    return TwoModeCovariance(Eigen::Matrix4d(cov.matrix().topLeftCorner(4, 4)));
}

TwoModeCovariance reduce_two_modes(const MesoGaussianState& state) {
    return reduce_two_modes(state.covariance());
}

TwoModeCovariance closed_form_reduced(const BathParams& bath, double k, double t) {
    if (!std::isfinite(t) || t < 0.0) throw ValidityError("closed_form_reduced: t must be non-negative");
    const double eta = bath.eta();
    const double s = bath.meso_thermal_variance();
    const double rate = 4.0 * eta / (1.0 + eta);
    const double decay = std::exp(-rate * t) / 4.0;
    const double ch = std::cosh(rate * bath.lambda() * t);
    const Eigen::Matrix2d d =
        Eigen::Vector2d(std::exp(4.0 * k) - 1.0, std::exp(-4.0 * k) - 1.0).asDiagonal();
    const Eigen::Matrix2d a = s * (decay * (3.0 + ch) * d + Eigen::Matrix2d::Identity());
    const Eigen::Matrix2d b = s * (decay * (ch - 1.0) * d);

    const double th = 2.0 * bath.omega() * t;
    Eigen::Matrix2d h;
    h << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
    Eigen::Matrix4d hh = Eigen::Matrix4d::Zero();
    hh.topLeftCorner<2, 2>() = h;
    hh.bottomRightCorner<2, 2>() = h;
    Eigen::Matrix4d ab;
    ab << a, b, b, a;
    return TwoModeCovariance(Eigen::Matrix4d(hh * ab * hh.transpose()));
}

TwoModeCovariance evolved_reduced(const BathParams& bath, double k, double t) {
    const RealMatrix sb = thermal_meso_covariance(bath);
    const auto init = squeeze(MesoGaussianState(sb), SqueezeSpec{k});
    return reduce_two_modes(evolve_covariance(generator(bath), sb, init.covariance(), t));
}

}  // namespace mesoent
