#include "doctest.h"

#include <vector>

#include "mesoent/fock_oracle.hpp"
#include "mesoent/meso_dynamics.hpp"

using namespace mesoent;

namespace {

RealVector unit(int i) {
    RealVector e = RealVector::Zero(6);
    e(i) = 1.0;
    return e;
}

}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(FockGrid(3), ValidityError);
    const FockGrid g(4);
    CHECK(g.dim() == 25);
    CHECK(g.index(1, 2) == 7);
}

TEST_CASE("truncated canonicals") {
    const FockGrid grid(10);
    const auto r = build_canonicals(grid);
    for (const auto& op : r) CHECK(op.hermitian());
    const int vac = grid.index(0, 0);
    CHECK(std::abs((r[0].matrix() * r[0].matrix())(vac, vac) - 0.5) < 1e-15);
    const ComplexMatrix c = r[0].matrix() * r[3].matrix() - r[3].matrix() * r[0].matrix();
    CHECK(c.cwiseAbs().maxCoeff() == 0.0);
    CHECK(interior_ccr_residual(grid) < 1e-12);
    CHECK_THROWS(FockOperator(ComplexMatrix(r[0].matrix() * Complex(0.0, 1.0)), true));
}

TEST_CASE("thermal state") {
    const FockGrid grid(24);
    const auto cold = thermal_state(grid, BathParams::from_temperature(0.001, 1.0, 0.0));
    CHECK(std::abs(cold.rho(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(cold.rho.trace() - 1.0) < 1e-15);

    const auto bath = BathParams::from_temperature(0.1, 1.0, 0.0);
    const auto st = thermal_state(grid, bath);
    CHECK(std::abs(st.rho.trace() - 1.0) < 1e-12);
    CHECK(st.tail_mass < 1e-8);
    const std::vector<CanonicalVar> xx{CanonicalVar::x1, CanonicalVar::x1};
    CHECK(std::abs(fock_moment(st, grid, xx).real() - 1.0 / (2.0 * bath.eta())) < 1e-10);
    CHECK(std::abs(fock_moment(st, grid, xx).real() - 0.5000454) < 1e-7);

    try {
        thermal_state(FockGrid(6), BathParams::from_temperature(1.0, 1.0, 0.0));
        FAIL("expected truncation error");
    } catch (const TruncationError& e) {
        CHECK(e.tail_mass() > 1e-8);
    }
    CHECK(thermal_state(FockGrid(6), BathParams::from_temperature(1.0, 1.0, 0.0), true).tail_mass > 1e-8);
}

TEST_CASE("property: Fock moments match Wick moments up to order four") {
    const FockGrid grid(24);
    for (double t : {0.1, 0.5}) {
        const auto bath = BathParams::from_temperature(t, 1.0, 0.0);
        const auto st = thermal_state(grid, bath);
        const auto cov = thermal_site_covariance(bath);
        double worst = 0.0;
        for (int len = 1; len <= 4; ++len) {
            int total = 1;
            for (int i = 0; i < len; ++i) total *= 4;
            for (int code = 0; code < total; ++code) {
                std::vector<CanonicalVar> w;
                for (int i = 0, c = code; i < len; ++i, c /= 4) w.push_back(static_cast<CanonicalVar>(c % 4));
                const Complex a = fock_moment(st, grid, w);
                const Complex b = ordered_moment(cov, w);
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
            }
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("finite-N Weyl expectations") {
    const FockGrid grid(24);
    const auto bath = BathParams::from_temperature(0.1, 1.0, 0.9);
    CHECK(weyl_expectation_N(RealVector::Zero(6), 100, grid, bath) == Complex(1.0));
    const Complex v = weyl_expectation_N(unit(0), 10000, grid, bath);
    CHECK(std::abs(v - std::exp(-0.5 * bath.meso_thermal_variance())) < 0.02);
    CHECK(std::abs(v - std::exp(-0.25)) < 0.02);
    const WeylSampler sampler(unit(0), grid, bath);
    CHECK(sampler.value(10000.0) == v);
    CHECK_THROWS_AS(sampler.value(0.0), ValidityError);
}

TEST_CASE("Weyl expectation converges to the Gaussian limit as N grows") {
    const FockGrid grid(24);
    const auto bath = BathParams::from_temperature(0.1, 1.0, 0.9);
    const std::vector<long> ns{100, 1000, 10000, 100000};
    const auto rep = clt_convergence(unit(0), ns, grid, bath);
    REQUIRE(rep.errors.size() == 4);
    for (std::size_t i = 1; i < rep.errors.size(); ++i) CHECK(rep.errors[i] < rep.errors[i - 1]);
    CHECK(rep.limit == doctest::Approx(std::exp(-0.5 * bath.meso_thermal_variance())));
    CHECK(rep.converged_in_nmax);
    CHECK(std::isfinite(rep.slope));
}

TEST_CASE("Weyl product residual") {
    const FockGrid grid(24);
    const auto bath = BathParams::from_temperature(0.1, 1.0, 0.9);
    CHECK(weyl_product_residual(unit(0), RealVector::Zero(6), 10000, grid, bath) == 0.0);
    const double r4 = weyl_product_residual(unit(0), unit(1), 10000, grid, bath);
    const double r5 = weyl_product_residual(unit(0), unit(1), 100000, grid, bath);
    CHECK(r4 < 0.02);
    CHECK(r5 < r4);
    const double par = weyl_product_residual(unit(0), RealVector(2.0 * unit(0)), 10000, grid, bath);
    CHECK(par < 1e-10);
}

TEST_CASE("Heisenberg evolution is unital and preserves Hermiticity") {
    const FockGrid grid(6);
    const auto bath = BathParams::from_temperature(0.3, 1.0, 0.7);
    const FockOperator id(ComplexMatrix::Identity(grid.dim(), grid.dim()), true);
    const auto idt = heisenberg_evolve(id, grid, bath, 0.3);
    CHECK((idt.matrix() - id.matrix()).cwiseAbs().maxCoeff() < 1e-8);

    const auto x = to_fock(basis_observables(bath)[4], grid);
    const auto xt = heisenberg_evolve(x, grid, bath, 0.3);
    CHECK((xt.matrix() - xt.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(heisenberg_evolve(x, grid, bath, -1.0), ValidityError);
}

TEST_CASE("Heisenberg evolution finite difference matches the Lindblad action") {
    const FockGrid grid(8);
    const auto bath = BathParams::from_temperature(0.2, 1.0, 0.6);
    const auto x1 = basis_observables(bath)[0];
    const double t = 1e-3;
    const auto x0 = to_fock(x1, grid);
    const auto xt = heisenberg_evolve(x0, grid, bath, t, 1e-4);
    const ComplexMatrix fd = (xt.matrix() - x0.matrix()) / t;
    const ComplexMatrix lx = to_fock(lindblad_action(x1, bath), grid).matrix();
    double worst = 0.0, scale = 0.0;
    for (int a1 = 0; a1 <= 3; ++a1) {
        for (int a2 = 0; a2 <= 3; ++a2) {
            for (int b1 = 0; b1 <= 3; ++b1) {
                for (int b2 = 0; b2 <= 3; ++b2) {
                    const int i = grid.index(a1, a2), j = grid.index(b1, b2);
                    worst = std::max(worst, std::abs(fd(i, j) - lx(i, j)));
                    scale = std::max(scale, std::abs(lx(i, j)));
                }
            }
        }
    }
    CHECK(scale > 0.1);
    CHECK(worst < 1e-2 * scale);
}

TEST_CASE("second moment relaxes as the site Lyapunov equation predicts") {
    const FockGrid grid(8);
    const auto bath = BathParams::from_temperature(0.5, 1.0, 0.0);
    Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
    a(0, 0) = 1.0;
    const double t = 1.0;
    const auto xt = heisenberg_evolve(to_fock(QuadraticObservable(a), grid), grid, bath, t);
    const int vac = grid.index(0, 0);
    const double fock = xt.matrix()(vac, vac).real();

    const auto eq = site_moment_equations(bath);
    const RealMatrix d = eq.drift, q = eq.noise;
    const RealMatrix s0 = 0.5 * RealMatrix::Identity(4, 4);
    const RealMatrix st = integrate_linear_ode<RealMatrix>(
        [&](const RealMatrix& s) { return RealMatrix(d * s + s * d.transpose() + q); }, s0, t, 1e-3);
    CHECK(std::abs(fock - st(0, 0)) < 1e-6);
    const double thermal = 1.0 / (2.0 * bath.eta());
    CHECK(std::abs(st(0, 0) - thermal) < std::abs(0.5 - thermal));
}

TEST_CASE("finite-N sandwich") {
    const FockGrid grid(8);
    const auto bath = BathParams::from_temperature(0.1, 1.0, 0.9);
    const RealVector z = RealVector::Zero(6);
    const auto zero = theorem2_sandwich(z, z, z, 0.5, 50, grid, bath);
    CHECK(std::abs(zero.lhs - 1.0) < 1e-8);
    CHECK(zero.rhs == Complex(1.0));

    const RealVector r = unit(2);
    const auto stat = theorem2_sandwich(z, r, z, 0.5, 200, grid, bath);
    CHECK(std::abs(stat.rhs - std::exp(-0.5 * r.dot(thermal_meso_covariance(bath) * r))) < 1e-12);
}

TEST_CASE("mean-field characteristic tends to the thermal mean") {
    const FockGrid grid(24);
    const auto bath = BathParams::from_temperature(0.1, 1.0, 0.0);
    const auto x = basis_observables(bath)[0];
    const Complex v = mean_field_characteristic(x, 100000, grid, bath);
    CHECK(std::abs(v - 1.0) < 1e-4);
}
