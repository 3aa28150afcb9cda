#include "mesoent/meso_dynamics.hpp"

#include <cmath>
#include <string>

namespace mesoent {

namespace {

constexpr int kModes = 6;

void require_square(const RealMatrix& m, const char* what) {
    if (m.rows() != kModes || m.cols() != kModes) {
        throw DimensionError(std::string(what) + " must be 6x6");
    }
}

void require_vector(const RealVector& v, const char* what) {
    if (v.size() != kModes) throw DimensionError(std::string(what) + " must have 6 entries");
}

}  // namespace

MesoGenerator::MesoGenerator(RealMatrix l, Provenance provenance)
    : l_(std::move(l)), provenance_(provenance) {
    require_square(l_, "meso generator");
    if (!l_.allFinite()) throw ValidityError("meso generator has non-finite entries");
}

MesoGenerator generator(const BathParams& bath) {
    bath.require_completely_positive();
    const double g = bath.gamma() - 1.0;
    RealMatrix l = g * RealMatrix::Identity(kModes, kModes) +
                   2.0 * bath.omega() * SymplecticForm::standard(3).matrix();
    const double c = g * bath.lambda() / std::sqrt(2.0);
    const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
    l.block(0, 4, 2, 2) += c * id;
    l.block(2, 4, 2, 2) += c * id;
    l.block(4, 0, 2, 2) += c * id;
    l.block(4, 2, 2, 2) += c * id;
    return MesoGenerator(std::move(l), Provenance::closed_form);
}

MesoGenerator generator_from_micro(const BathParams& bath) {
    bath.require_completely_positive();
    return MesoGenerator(derive_meso_generator(bath).generator, Provenance::micro_derived);
}

RealMatrix thermal_meso_covariance(const BathParams& bath) {
    return bath.meso_thermal_variance() * RealMatrix::Identity(kModes, kModes);
}

PropagatorBundle propagate(const MesoGenerator& gen, const RealMatrix& sigma_beta, double t) {
    require_square(sigma_beta, "Sigma_beta");
    if (!std::isfinite(t) || t < 0.0) throw ValidityError("propagate: t must be non-negative and finite");
    PropagatorBundle b{t, expm(gen.matrix(), t), RealMatrix()};
    b.k = sigma_beta - b.m * sigma_beta * b.m.transpose();
    b.k = 0.5 * (b.k + b.k.transpose());
    if (!b.m.allFinite() || !b.k.allFinite()) {
        throw DivergenceError("propagate: non-finite propagator at t = " + std::to_string(t), 0);
    }
    return b;
}

WeylElement apply_heisenberg(const PropagatorBundle& bundle, const WeylElement& w) {
    require_vector(w.r, "Weyl parameter");
    WeylElement out;
    out.r = bundle.m.transpose() * w.r;
    out.log_prefactor = w.log_prefactor - 0.5 * w.r.dot(bundle.k * w.r);
    return out;
}

CovarianceMatrix evolve_covariance(const MesoGenerator& gen, const RealMatrix& sigma_beta,
                                   const CovarianceMatrix& sigma0, double t) {
    if (sigma0.dim() != kModes) throw DimensionError("initial covariance must be 6x6");
    const auto b = propagate(gen, sigma_beta, t);
    RealMatrix s = b.k + b.m * sigma0.matrix() * b.m.transpose();
    s = 0.5 * (s + s.transpose());
    CovarianceMatrix out(s, sigma0.form());
    const auto bf = check_bona_fide(out);
    if (!bf.ok) {
        throw ConsistencyError("evolved covariance not bona fide at t = " + std::to_string(t) +
                               " (margin " + std::to_string(bf.margin) + ")");
    }
    return out;
}

double cp_certificate(const PropagatorBundle& bundle, const RealMatrix& sigma_beta,
                      const SymplecticForm& form) {
    const ComplexMatrix g = uncertainty_matrix(sigma_beta, form.matrix());
    const ComplexMatrix m = bundle.m.cast<Complex>();
    const ComplexMatrix d = g - m * g * m.transpose();
    return min_eig_hermitian(ComplexMatrix(0.5 * (d + d.adjoint())));
}

Complex sandwich_limit(const PropagatorBundle& bundle, const RealMatrix& sigma_beta,
                       const SymplecticForm& form, const RealVector& r1, const RealVector& r,
                       const RealVector& r2) {
    require_vector(r1, "r1");
    require_vector(r, "r");
    require_vector(r2, "r2");
    const RealMatrix& s = form.matrix();
    const RealVector rt = bundle.m.transpose() * r;
    const RealVector q = r1 + rt + r2;
    const double z = q.dot(sigma_beta * q) + r.dot(bundle.k * r);
    const double y = r1.dot(s * rt) + rt.dot(s * r2) + r1.dot(s * r2);
    return std::exp(-0.5 * Complex(z, y));
}

}  // namespace mesoent
