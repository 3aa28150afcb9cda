#include "mesoent/symplectic_core.hpp"

#include <algorithm>
#include <array>

namespace mesoent {

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw DimensionError("HermitianMatrix: matrix must be square");
    }
    if (!m.allFinite()) {
        throw ValidityError("HermitianMatrix: non-finite entry");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double residue = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (residue > tol * scale) {
        throw ValidityError("HermitianMatrix: |H - H^dagger| = " + std::to_string(residue) +
                            " exceeds tolerance");
    }
    m_ = 0.5 * (m + m.adjoint());
}

SymplecticForm SymplecticForm::standard(int modes) {
    if (modes <= 0) {
        throw DimensionError("SymplecticForm: need at least one mode");
    }
    RealMatrix j = RealMatrix::Zero(2 * modes, 2 * modes);
    for (int m = 0; m < modes; ++m) {
        j(2 * m, 2 * m + 1) = 1.0;
        j(2 * m + 1, 2 * m) = -1.0;
    }
    return SymplecticForm(std::move(j));
}

CovarianceMatrix::CovarianceMatrix(const RealMatrix& sigma, SymplecticForm form)
    : sigma_(sigma), form_(std::move(form)) {
    if (sigma_.rows() != sigma_.cols() || sigma_.rows() != form_.dim()) {
        throw DimensionError("CovarianceMatrix: covariance and symplectic form dimensions differ");
    }
    if (!sigma_.allFinite()) {
        throw ValidityError("CovarianceMatrix: non-finite entry");
    }
    const double scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
    if ((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() > kTol.symmetry * scale) {
        throw ValidityError("CovarianceMatrix: covariance is not symmetric");
    }
    sigma_ = 0.5 * (sigma_ + sigma_.transpose()).eval();
}

namespace {

// Pade(13,13) coefficients and the 1-norm bound below which no scaling is needed.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

RealMatrix expm(const RealMatrix& a, double t) {
    if (a.rows() != a.cols()) {
        throw DimensionError("expm: matrix must be square");
    }
    if (!a.allFinite() || !std::isfinite(t)) {
        throw ValidityError("expm: non-finite input");
    }
    const Eigen::Index n = a.rows();
    if (t == 0.0) return RealMatrix::Identity(n, n);
    RealMatrix x = t * a;
    const double norm1 = x.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > kTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
        x /= std::ldexp(1.0, squarings);
    }
    const RealMatrix id = RealMatrix::Identity(n, n);
    const RealMatrix x2 = x * x;
    const RealMatrix x4 = x2 * x2;
    const RealMatrix x6 = x4 * x2;
    const auto& b = kPade13;
    const RealMatrix u_inner = b[13] * x6 + b[11] * x4 + b[9] * x2;
    const RealMatrix u = x * (x6 * u_inner + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
    const RealMatrix v_inner = b[12] * x6 + b[10] * x4 + b[8] * x2;
    const RealMatrix v = x6 * v_inner + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;
    RealMatrix r = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s) {
        r = (r * r).eval();
    }
    return r;
}

double min_eig_hermitian(const HermitianMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConsistencyError("min_eig_hermitian: eigensolver failed");
    }
    return solver.eigenvalues().minCoeff();
}

double min_eig_hermitian(const ComplexMatrix& h, double tol) {
    return min_eig_hermitian(HermitianMatrix(h, tol));
}

ComplexMatrix uncertainty_matrix(const RealMatrix& sigma, const RealMatrix& form) {
    return sigma.cast<Complex>() + Complex(0.0, 0.5) * form.cast<Complex>();
}

BonaFide check_bona_fide(const RealMatrix& sigma, const SymplecticForm& form, double slack) {
    if (sigma.rows() != form.dim() || sigma.cols() != form.dim()) {
        throw DimensionError("check_bona_fide: covariance and symplectic form dimensions differ");
    }
    const double margin = min_eig_hermitian(uncertainty_matrix(sigma, form.matrix()));
    return {margin >= -slack, margin};
}

BonaFide check_bona_fide(const CovarianceMatrix& cov, double slack) {
    return check_bona_fide(cov.matrix(), cov.form(), slack);
}

double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace mesoent
