#include "doctest.h"

#include <random>

#include "mesoent/gaussian_states.hpp"
#include "mesoent/meso_dynamics.hpp"

using namespace mesoent;

namespace {

Eigen::Matrix4d rot4(double a) {
    Eigen::Matrix2d h;
    h << std::cos(a), std::sin(a), -std::sin(a), std::cos(a);
    Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
    out.topLeftCorner<2, 2>() = h;
    out.bottomRightCorner<2, 2>() = h;
    return out;
}

}  // namespace

TEST_CASE("thermal mesoscopic state") {
    const auto bath = BathParams::from_temperature(0.1, 1.0, 0.5);
    const auto st = thermal_meso_state(bath);
    const double sb = (1.0 + bath.eta() * bath.eta()) / (4.0 * bath.eta());
    CHECK(std::abs(sb - 0.5000000021) < 1e-9);
    for (int i = 0; i < 6; ++i) CHECK(st.matrix()(i, i) == doctest::Approx(sb).epsilon(1e-14));
    const auto red = reduce_two_modes(st);
    CHECK(red.sigmac().cwiseAbs().maxCoeff() == 0.0);
    const double s = bath.meso_thermal_variance();
    CHECK((red.matrix() - s * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() == 0.0);
    const auto cold = thermal_meso_state(BathParams::from_temperature(0.001, 1.0, 0.0));
    CHECK(max_abs(RealMatrix(cold.matrix() - 0.5 * RealMatrix::Identity(6, 6))) < 1e-15);
}

TEST_CASE("squeezing") {
    const auto bath = BathParams::from_temperature(0.1, 1.0, 0.5);
    const auto st = thermal_meso_state(bath);
    CHECK(max_abs(RealMatrix(squeeze(st, {0.0}).matrix() - st.matrix())) == 0.0);
    const double sb = bath.meso_thermal_variance();
    const auto red = reduce_two_modes(squeeze(st, {1.0}));
    CHECK(red.sigma1()(0, 0) == doctest::Approx(sb * std::exp(4.0)).epsilon(1e-14));
    CHECK(red.sigma1()(1, 1) == doctest::Approx(sb * std::exp(-4.0)).epsilon(1e-14));
    CHECK((red.sigma1() - red.sigma2()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(red.sigmac().cwiseAbs().maxCoeff() == 0.0);
    for (double k : {-3.0, -0.5, 0.7, 3.0}) {
        const RealMatrix s = squeeze_matrix({k});
        const RealMatrix sig = SymplecticForm::standard(3).matrix();
        CHECK(max_abs(RealMatrix(s * sig * s.transpose() - sig)) < 1e-12);
        CHECK(check_bona_fide(squeeze(st, {k}).covariance()).ok);
    }
}

TEST_CASE("non bona fide covariances are rejected") {
    CHECK_THROWS(MesoGaussianState(RealMatrix(0.1 * RealMatrix::Identity(6, 6))));
    CHECK_THROWS(TwoModeCovariance(Eigen::Matrix4d(0.1 * Eigen::Matrix4d::Identity())));
    CHECK_NOTHROW(TwoModeCovariance(Eigen::Matrix4d(0.1 * Eigen::Matrix4d::Identity()), false));
}

TEST_CASE("reduction is index bookkeeping") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    RealMatrix a(6, 6);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) a(i, j) = 0.3 * g(rng);
    }
    const RealMatrix sigma = a * a.transpose() + RealMatrix::Identity(6, 6);
    const auto red = reduce_two_modes(MesoGaussianState(sigma));
    CHECK(red.sigmac() == sigma.block(0, 2, 2, 2));
    CHECK(red.sigma1() == sigma.block(0, 0, 2, 2));
    CHECK(red.sigma2() == sigma.block(2, 2, 2, 2));
    CHECK(red.bona_fide().ok);
}

TEST_CASE("closed form at t = 0 and without squeezing") {
    const auto bath = BathParams::from_temperature(0.2, 1.0, 0.8);
    const auto init = reduce_two_modes(squeeze(thermal_meso_state(bath), {1.0}));
    CHECK((closed_form_reduced(bath, 1.0, 0.0).matrix() - init.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    const double s = bath.meso_thermal_variance();
    for (double t : {0.0, 0.7, 5.0}) {
        const auto m = closed_form_reduced(bath, 0.0, t).matrix();
        CHECK((m - s * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("evolved squeezed state develops cross correlations") {
    const auto bath = BathParams::from_temperature(0.1, 1.0, 0.6);
    CHECK(evolved_reduced(bath, 1.0, 1.0).sigmac().cwiseAbs().maxCoeff() > 1e-3);
    CHECK(evolved_reduced(BathParams::from_temperature(0.1, 1.0, 0.0), 1.0, 1.0).sigmac().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("property: closed form equals the evolution pipeline") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> temp(0.05, 1.0), lam(0.0, 1.0), kk(0.0, 2.0), tt(0.0, 10.0);
    for (int i = 0; i < 60; ++i) {
        const auto bath = BathParams::from_temperature(temp(rng), 1.0, lam(rng));
        const double k = kk(rng), t = tt(rng);
        const auto a = closed_form_reduced(bath, k, t).matrix();
        const auto b = evolved_reduced(bath, k, t).matrix();
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("property: block determinants are rotation invariant") {
    const auto bath = BathParams::from_temperature(0.1, 1.0, 0.9);
    for (double t : {0.3, 1.7, 4.2}) {
        const Eigen::Matrix4d m = closed_form_reduced(bath, 1.0, t).matrix();
        const Eigen::Matrix4d h = rot4(2.0 * t);
        const Eigen::Matrix4d unrotated = h.transpose() * m * h;
        CHECK(m.topLeftCorner<2, 2>().determinant() == doctest::Approx(unrotated.topLeftCorner<2, 2>().determinant()).epsilon(1e-12));
        CHECK(m.topRightCorner<2, 2>().determinant() == doctest::Approx(unrotated.topRightCorner<2, 2>().determinant()).epsilon(1e-12));
        CHECK(std::abs(unrotated(0, 1)) < 1e-12);
    }
}
