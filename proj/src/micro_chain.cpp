#include "mesoent/micro_chain.hpp"

#include <cmath>
#include <string>

namespace mesoent {

namespace {

constexpr int kSite = 4;

bool finite(double v) { return std::isfinite(v); }

Complex polynomial_expectation(const CovarianceMatrix& cov, const CcrPolynomial& p) {
    Complex total = 0.0;
    std::vector<CanonicalVar> idx;
    for (const auto& [word, coeff] : p.terms()) {
        idx.clear();
        for (auto g : word) idx.push_back(static_cast<CanonicalVar>(g));
        total += coeff * ordered_moment(cov, idx);
    }
    return total;
}

Complex isserlis(const ComplexMatrix& g, std::span<const CanonicalVar> idx) {
    if (idx.empty()) return 1.0;
    if (idx.size() % 2 != 0) return 0.0;
    const int head = static_cast<int>(idx[0]);
    Complex total = 0.0;
    std::vector<CanonicalVar> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t k = 1; k < idx.size(); ++k) {
        const Complex pair = g(head, static_cast<int>(idx[k]));
        if (pair == Complex(0.0)) continue;
        rest.clear();
        for (std::size_t m = 1; m < idx.size(); ++m) {
            if (m != k) rest.push_back(idx[m]);
        }
        total += pair * isserlis(g, rest);
    }
    return total;
}

void require_site(const CovarianceMatrix& cov) {
    if (cov.dim() != kSite) {
        throw DimensionError("site covariance must be 4x4, got " + std::to_string(cov.dim()));
    }
}

}  // namespace

CanonicalVar parse_canonical(std::string_view symbol) {
    if (symbol == "x1") return CanonicalVar::x1;
    if (symbol == "p1") return CanonicalVar::p1;
    if (symbol == "x2") return CanonicalVar::x2;
    if (symbol == "p2") return CanonicalVar::p2;
    throw ValidityError("unknown index symbol '" + std::string(symbol) + "' (expected x1, p1, x2, p2)");
}

BathParams::BathParams(double beta, double omega, double lambda)
    : beta_(beta), omega_(omega), lambda_(lambda) {
    if (!finite(beta) || beta <= 0.0) throw ValidityError("beta must be positive and finite");
    if (!finite(omega) || omega <= 0.0) throw ValidityError("omega must be positive and finite");
    if (!finite(lambda)) throw ValidityError("lambda must be finite");
    gamma_ = std::exp(-beta * omega);
    eta_ = std::tanh(0.5 * beta * omega);
    if (!(eta_ > 0.0)) throw ValidityError("beta * omega too small: eta underflows to zero");
}

BathParams BathParams::from_temperature(double temperature, double omega, double lambda) {
    if (!finite(temperature) || temperature <= 0.0) {
        throw ValidityError("temperature must be positive and finite");
    }
    return BathParams(1.0 / temperature, omega, lambda);
}

BathParams BathParams::from_beta(double beta, double omega, double lambda) {
    return BathParams(beta, omega, lambda);
}

void BathParams::require_completely_positive() const {
    if (!completely_positive()) {
        throw CompletePositivityError("Kossakowski matrix not positive: requires lambda^2 <= 1, got lambda = " +
                                      std::to_string(lambda_));
    }
}

QuadraticObservable::QuadraticObservable(const Eigen::Matrix4d& a, double c) : a_(a), c_(c) {
    if (!a.allFinite() || !finite(c)) throw ValidityError("quadratic observable has non-finite entries");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-14 * scale) {
        throw ValidityError("quadratic observable coefficient matrix is not symmetric");
    }
    a_ = 0.5 * (a + a.transpose());
}

CcrPolynomial QuadraticObservable::to_polynomial() const {
    CcrPolynomial p = CcrPolynomial::scalar(c_);
    for (int i = 0; i < kSite; ++i) {
        for (int j = 0; j < kSite; ++j) {
            if (a_(i, j) == 0.0) continue;
            const auto ui = static_cast<std::uint8_t>(i);
            const auto uj = static_cast<std::uint8_t>(j);
            p += CcrPolynomial::word({ui, uj}, 0.5 * a_(i, j));
            p += CcrPolynomial::word({uj, ui}, 0.5 * a_(i, j));
        }
    }
    return p.prune(0.0);
}

QuadraticProjection project_quadratic(const CcrPolynomial& p) {
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    Complex c = 0.0;
    double residual = 0.0;
    for (const auto& [word, coeff] : p.terms()) {
        switch (word.size()) {
            case 0:
                c += coeff;
                break;
            case 2: {
                const int i = word[0];
                const int j = word[1];
                if (i == j) {
                    a(i, i) += coeff;
                } else {
                    // R_i R_j = (R_i R_j + R_j R_i)/2 + (i/2) J_ij
                    a(i, j) += 0.5 * coeff;
                    a(j, i) += 0.5 * coeff;
                    c += coeff * Complex(0.0, 0.5 * site_symplectic(i, j));
                }
                break;
            }
            default:
                residual = std::max(residual, std::abs(coeff));
        }
    }
    residual = std::max(residual, a.imag().cwiseAbs().maxCoeff());
    residual = std::max(residual, std::abs(c.imag()));
    return {QuadraticObservable(a.real(), c.real()), residual};
}

QuadraticObservable site_hamiltonian(const BathParams& bath) {
    return QuadraticObservable(0.5 * bath.omega() * Eigen::Matrix4d::Identity());
}

std::array<QuadraticObservable, 6> basis_observables(const BathParams& bath) {
    const double h = std::sqrt(bath.eta()) / 2.0;
    const double m = std::sqrt(bath.eta() / 2.0) / 2.0;
    std::array<Eigen::Matrix4d, 6> a;
    for (auto& x : a) x.setZero();
    a[0](0, 0) = h;
    a[0](1, 1) = -h;
    a[1](0, 1) = a[1](1, 0) = h;
    a[2](2, 2) = h;
    a[2](3, 3) = -h;
    a[3](2, 3) = a[3](3, 2) = h;
    a[4](0, 2) = a[4](2, 0) = m;
    a[4](1, 3) = a[4](3, 1) = -m;
    a[5](0, 3) = a[5](3, 0) = m;
    a[5](1, 2) = a[5](2, 1) = m;
    return {QuadraticObservable(a[0]), QuadraticObservable(a[1]), QuadraticObservable(a[2]),
            QuadraticObservable(a[3]), QuadraticObservable(a[4]), QuadraticObservable(a[5])};
}

QuadraticObservable combine_basis(const BathParams& bath, const RealVector& r) {
    if (r.size() != 6) throw DimensionError("basis combination needs a 6-vector");
    const auto basis = basis_observables(bath);
    Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
    for (int mu = 0; mu < 6; ++mu) a += r(mu) * basis[mu].coefficients();
    return QuadraticObservable(a);
}

CovarianceMatrix thermal_site_covariance(const BathParams& bath) {
    return CovarianceMatrix(RealMatrix::Identity(kSite, kSite) / (2.0 * bath.eta()),
                            SymplecticForm::standard(2));
}

Complex ordered_moment(const CovarianceMatrix& cov, std::span<const CanonicalVar> indices) {
    require_site(cov);
    if (indices.size() % 2 != 0) return 0.0;
    const ComplexMatrix g = uncertainty_matrix(cov.matrix(), cov.form().matrix());
    return isserlis(g, indices);
}

Complex ordered_moment(const CovarianceMatrix& cov, const std::vector<std::string>& symbols) {
    std::vector<CanonicalVar> idx;
    idx.reserve(symbols.size());
    for (const auto& s : symbols) idx.push_back(parse_canonical(s));
    return ordered_moment(cov, idx);
}

Complex expectation(const CovarianceMatrix& cov, const QuadraticObservable& x) {
    require_site(cov);
    return (x.coefficients().array() * cov.matrix().array()).sum() + x.offset();
}

Complex expectation_product(const CovarianceMatrix& cov, const QuadraticObservable& x,
                            const QuadraticObservable& y) {
    return polynomial_expectation(cov, x.to_polynomial() * y.to_polynomial());
}

FluctuationKinematics fluctuation_kinematics(const BathParams& bath) {
    const auto cov = thermal_site_covariance(bath);
    const auto basis = basis_observables(bath);
    ComplexMatrix m(6, 6);
    std::array<Complex, 6> mean;
    for (int mu = 0; mu < 6; ++mu) mean[mu] = expectation(cov, basis[mu]);
    for (int mu = 0; mu < 6; ++mu) {
        for (int nu = 0; nu < 6; ++nu) {
            m(mu, nu) = expectation_product(cov, basis[mu], basis[nu]) - mean[mu] * mean[nu];
        }
    }
    FluctuationKinematics out;
    out.sigma_beta = 0.5 * (m + m.transpose()).real();
    out.sigma = (m - m.transpose()).imag();

    const double s = bath.meso_thermal_variance();
    const double dev_sigma_beta = max_abs(RealMatrix(out.sigma_beta - s * RealMatrix::Identity(6, 6)));
    const double dev_sigma = max_abs(RealMatrix(out.sigma - SymplecticForm::standard(3).matrix()));
    if (dev_sigma_beta > kTol.algebraic || dev_sigma > kTol.algebraic) {
        throw ConsistencyError("Wick fluctuation covariance departs from closed form (Sigma_beta dev " +
                               std::to_string(dev_sigma_beta) + ", sigma dev " + std::to_string(dev_sigma) + ")");
    }
    return out;
}

ComplexMatrix kossakowski_matrix(const BathParams& bath) {
    const double pref = 0.5 * (1.0 + bath.gamma());
    const Complex ie(0.0, bath.eta());
    Eigen::Matrix2cd a;
    a << 1.0, ie, -ie, 1.0;
    a *= pref;
    ComplexMatrix c(4, 4);
    c.topLeftCorner(2, 2) = a;
    c.bottomRightCorner(2, 2) = a;
    c.topRightCorner(2, 2) = bath.lambda() * a;
    c.bottomLeftCorner(2, 2) = bath.lambda() * a.adjoint();
    return c;
}

HermitianMatrix kossakowski(const BathParams& bath) {
    bath.require_completely_positive();
    return HermitianMatrix(kossakowski_matrix(bath));
}

CcrPolynomial lindblad_polynomial(const CcrPolynomial& x, const BathParams& bath) {
    const ComplexMatrix c = kossakowski_matrix(bath);
    const CcrPolynomial h = site_hamiltonian(bath).to_polynomial();
    CcrPolynomial out = Complex(0.0, 1.0) * commutator(h, x);
    std::array<CcrPolynomial, kSite> v;
    for (int a = 0; a < kSite; ++a) v[a] = CcrPolynomial::generator(a);
    for (int a = 0; a < kSite; ++a) {
        const CcrPolynomial vx = v[a] * x;
        for (int b = 0; b < kSite; ++b) {
            if (c(a, b) == Complex(0.0)) continue;
            const CcrPolynomial sandwich = vx * v[b];
            const CcrPolynomial anti = anticommutator(v[a] * v[b], x);
            out += c(a, b) * (sandwich - 0.5 * anti);
        }
    }
    return out.prune();
}

QuadraticObservable lindblad_action(const QuadraticObservable& x, const BathParams& bath) {
    const auto proj = project_quadratic(lindblad_polynomial(x.to_polynomial(), bath));
    const double scale = std::max(1.0, x.coefficients().cwiseAbs().maxCoeff());
    if (proj.residual > kTol.algebraic * scale) {
        throw ConsistencyError("Lindblad image left quadratic-plus-scalar form (residual " +
                               std::to_string(proj.residual) + ")");
    }
    return proj.observable;
}

MesoGeneratorDerivation derive_meso_generator(const BathParams& bath) {
    const auto basis = basis_observables(bath);
    constexpr int kEntries = 10;
    auto flatten = [](const Eigen::Matrix4d& a) {
        Eigen::Matrix<double, kEntries, 1> v;
        int n = 0;
        for (int i = 0; i < kSite; ++i) {
            for (int j = i; j < kSite; ++j) v(n++) = a(i, j);
        }
        return v;
    };
    Eigen::Matrix<double, kEntries, 6> design;
    for (int nu = 0; nu < 6; ++nu) design.col(nu) = flatten(basis[nu].coefficients());
    const auto qr = design.colPivHouseholderQr();

    MesoGeneratorDerivation out{RealMatrix(6, 6), 0.0, RealVector(6)};
    for (int mu = 0; mu < 6; ++mu) {
        const auto image = lindblad_action(basis[mu], bath);
        const auto target = flatten(image.coefficients());
        const Eigen::Matrix<double, 6, 1> coeff = qr.solve(target);
        out.generator.row(mu) = coeff.transpose();
        out.residual = std::max(out.residual, (design * coeff - target).cwiseAbs().maxCoeff());
        out.scalar_parts(mu) = image.offset();
    }
    if (out.residual > kTol.span_closure) {
        throw SpanClosureError("Lindblad image of the fluctuation basis leaves its span (residual " +
                                   std::to_string(out.residual) + ")",
                               out.residual);
    }
    return out;
}

double mean_field_variance(const QuadraticObservable& x, const BathParams& bath, long n_sites) {
    if (n_sites < 1) throw ValidityError("mean_field_variance: N must be >= 1");
    const auto cov = thermal_site_covariance(bath);
    const double mean = expectation(cov, x).real();
    const double second = expectation_product(cov, x, x).real();
    return (second - mean * mean) / static_cast<double>(n_sites);
}

SiteMomentEquations site_moment_equations(const BathParams& bath) {
    SiteMomentEquations out{RealMatrix::Zero(kSite, kSite), RealMatrix::Zero(kSite, kSite)};
    for (int i = 0; i < kSite; ++i) {
        const CcrPolynomial image = lindblad_polynomial(CcrPolynomial::generator(i), bath);
        for (int j = 0; j < kSite; ++j) {
            out.drift(i, j) = image.coefficient({static_cast<std::uint8_t>(j)}).real();
        }
    }
    for (int i = 0; i < kSite; ++i) {
        for (int j = i; j < kSite; ++j) {
            Eigen::Matrix4d e = Eigen::Matrix4d::Zero();
            e(i, j) += 0.5;
            e(j, i) += 0.5;
            const double q = lindblad_action(QuadraticObservable(e), bath).offset();
            out.noise(i, j) = out.noise(j, i) = q;
        }
    }
    return out;
}

}  // namespace mesoent
