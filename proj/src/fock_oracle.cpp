#include "mesoent/fock_oracle.hpp"

#include <cmath>
#include <string>

#include <Eigen/Sparse>

namespace mesoent {

namespace {

using SparseOp = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

std::array<SparseOp, 4> sparse_canonicals(const FockGrid& grid) {
    const int n = grid.n_max();
    const double r2 = std::sqrt(2.0);
    std::array<std::vector<Triplet>, 4> trip;
    for (int n1 = 0; n1 <= n; ++n1) {
        for (int n2 = 0; n2 <= n; ++n2) {
            const int col = grid.index(n1, n2);
            // a|n> = sqrt(n)|n-1>, a^dag|n> = sqrt(n+1)|n+1>
            if (n1 > 0) {
                const double v = std::sqrt(static_cast<double>(n1)) / r2;
                trip[0].emplace_back(grid.index(n1 - 1, n2), col, v);
                trip[1].emplace_back(grid.index(n1 - 1, n2), col, Complex(0.0, -v));
            }
            if (n1 < n) {
                const double v = std::sqrt(static_cast<double>(n1 + 1)) / r2;
                trip[0].emplace_back(grid.index(n1 + 1, n2), col, v);
                trip[1].emplace_back(grid.index(n1 + 1, n2), col, Complex(0.0, v));
            }
            if (n2 > 0) {
                const double v = std::sqrt(static_cast<double>(n2)) / r2;
                trip[2].emplace_back(grid.index(n1, n2 - 1), col, v);
                trip[3].emplace_back(grid.index(n1, n2 - 1), col, Complex(0.0, -v));
            }
            if (n2 < n) {
                const double v = std::sqrt(static_cast<double>(n2 + 1)) / r2;
                trip[2].emplace_back(grid.index(n1, n2 + 1), col, v);
                trip[3].emplace_back(grid.index(n1, n2 + 1), col, Complex(0.0, v));
            }
        }
    }
    std::array<SparseOp, 4> out;
    for (int a = 0; a < 4; ++a) {
        out[a].resize(grid.dim(), grid.dim());
        out[a].setFromTriplets(trip[a].begin(), trip[a].end());
    }
    return out;
}

SparseOp sparse_quadratic(const QuadraticObservable& x, const std::array<SparseOp, 4>& r, int dim) {
    SparseOp out(dim, dim);
    const auto& a = x.coefficients();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (a(i, j) == 0.0) continue;
            SparseOp term = SparseOp(r[i] * r[j]) + SparseOp(r[j] * r[i]);
            out += (0.5 * a(i, j)) * term;
        }
    }
    if (x.offset() != 0.0) {
        SparseOp id(dim, dim);
        id.setIdentity();
        out += x.offset() * id;
    }
    return out;
}

RealVector thermal_populations(const FockGrid& grid, const BathParams& bath) {
    const int n = grid.n_max();
    RealVector single(n + 1);
    for (int k = 0; k <= n; ++k) single(k) = std::exp(-bath.beta() * bath.omega() * k);
    single /= single.sum();
    RealVector p(grid.dim());
    for (int n1 = 0; n1 <= n; ++n1) {
        for (int n2 = 0; n2 <= n; ++n2) p(grid.index(n1, n2)) = single(n1) * single(n2);
    }
    return p;
}

double tail_mass_of(const FockGrid& grid, const RealVector& p) {
    const int n = grid.n_max();
    double tail = 0.0;
    for (int n1 = 0; n1 <= n; ++n1) {
        for (int n2 = 0; n2 <= n; ++n2) {
            if (n1 >= n - 1 || n2 >= n - 1) tail += p(grid.index(n1, n2));
        }
    }
    return tail;
}

RealVector checked_populations(const FockGrid& grid, const BathParams& bath, double& tail) {
    RealVector p = thermal_populations(grid, bath);
    tail = tail_mass_of(grid, p);
    if (tail > kTol.tail_mass) {
        throw TruncationError("thermal tail mass " + std::to_string(tail) + " above 1e-8 at n_max = " +
                                  std::to_string(grid.n_max()) + "; raise n_max",
                              tail);
    }
    return p;
}

SparseOp kron(const SparseOp& a, const SparseOp& b) {
    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
    for (int ca = 0; ca < a.outerSize(); ++ca) {
        for (SparseOp::InnerIterator ia(a, ca); ia; ++ia) {
            for (int cb = 0; cb < b.outerSize(); ++cb) {
                for (SparseOp::InnerIterator ib(b, cb); ib; ++ib) {
                    trip.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                      ia.value() * ib.value());
                }
            }
        }
    }
    SparseOp out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

/// log(1 + z) for small complex z without cancellation.
Complex log1p_complex(Complex z) {
    const double re = 0.5 * std::log1p(2.0 * z.real() + std::norm(z));
    const double im = std::atan2(z.imag(), 1.0 + z.real());
    return {re, im};
}

Complex power_from_deviation(Complex zm1, double n) { return std::exp(n * log1p_complex(zm1)); }

/// Spectral data of a centered Hermitian observable.
struct Spectral {
    RealVector eigenvalues;
    ComplexMatrix vectors;
};

Spectral centered_spectrum(const SparseOp& x, const RealVector& p) {
    const ComplexMatrix dense = ComplexMatrix(x);
    const double mean = (dense.diagonal().real().array() * p.array()).sum();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(dense);
    if (es.info() != Eigen::Success) throw ConsistencyError("Hermitian eigensolver failed");
    return {es.eigenvalues().array() - mean, es.eigenvectors()};
}

/// e^{i s X} - 1 from a spectral decomposition.
ComplexMatrix expi_minus_one(const Spectral& sp, double scale) {
    ComplexVector d(sp.eigenvalues.size());
    for (Eigen::Index k = 0; k < d.size(); ++k) {
        const double th = scale * sp.eigenvalues(k);
        const double h = std::sin(0.5 * th);
        d(k) = Complex(-2.0 * h * h, std::sin(th));
    }
    return sp.vectors * d.asDiagonal() * sp.vectors.adjoint();
}

/// tr(diag(p) A B) without forming A B.
Complex trace_weighted_product(const RealVector& p, const ComplexMatrix& a, const ComplexMatrix& b) {
    return ((a.array() * b.transpose().array()).rowwise().sum().matrix().array() * p.array().cast<Complex>()).sum();
}

Complex trace_weighted(const RealVector& p, const ComplexMatrix& a) {
    return (a.diagonal().array() * p.array().cast<Complex>()).sum();
}

}  // namespace

FockGrid::FockGrid(int n_max) : n_max_(n_max) {
    if (n_max < 4) throw ValidityError("Fock cutoff n_max must be >= 4, got " + std::to_string(n_max));
}

FockOperator::FockOperator(ComplexMatrix m, bool hermitian) : m_(std::move(m)), hermitian_(hermitian) {
    if (m_.rows() != m_.cols()) throw DimensionError("Fock operator must be square");
    if (hermitian_) {
        const double scale = std::max(1.0, max_abs(m_));
        if (max_abs(ComplexMatrix(m_ - m_.adjoint())) > kTol.hermitian * scale) {
            throw ValidityError("Fock operator flagged Hermitian is not Hermitian");
        }
        m_ = 0.5 * (m_ + m_.adjoint());
    }
}

std::array<FockOperator, 4> build_canonicals(const FockGrid& grid) {
    const auto r = sparse_canonicals(grid);
    return {FockOperator(ComplexMatrix(r[0]), true), FockOperator(ComplexMatrix(r[1]), true),
            FockOperator(ComplexMatrix(r[2]), true), FockOperator(ComplexMatrix(r[3]), true)};
}

double interior_ccr_residual(const FockGrid& grid) {
    const auto r = sparse_canonicals(grid);
    const int n = grid.n_max();
    double worst = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const ComplexMatrix c = ComplexMatrix(SparseOp(r[a] * r[b]) - SparseOp(r[b] * r[a]));
            const double target = site_symplectic(a, b);
            const int mode = a / 2;
            const bool same_mode = (a / 2 == b / 2);
            for (int n1 = 0; n1 <= n; ++n1) {
                for (int n2 = 0; n2 <= n; ++n2) {
                    if (same_mode && (mode == 0 ? n1 : n2) == n) continue;
                    for (int m1 = 0; m1 <= n; ++m1) {
                        for (int m2 = 0; m2 <= n; ++m2) {
                            if (same_mode && (mode == 0 ? m1 : m2) == n) continue;
                            const int i = grid.index(n1, n2);
                            const int j = grid.index(m1, m2);
                            const Complex want = (i == j) ? Complex(0.0, target) : Complex(0.0);
                            worst = std::max(worst, std::abs(c(i, j) - want));
                        }
                    }
                }
            }
        }
    }
    return worst;
}

FockOperator to_fock(const QuadraticObservable& x, const FockGrid& grid) {
    return FockOperator(ComplexMatrix(sparse_quadratic(x, sparse_canonicals(grid), grid.dim())), true);
}

TruncatedState thermal_state(const FockGrid& grid, const BathParams& bath, bool allow_heavy_tail) {
    const RealVector p = thermal_populations(grid, bath);
    const double tail = tail_mass_of(grid, p);
    if (tail > kTol.tail_mass && !allow_heavy_tail) {
        throw TruncationError("thermal tail mass " + std::to_string(tail) + " above 1e-8 at n_max = " +
                                  std::to_string(grid.n_max()) + "; raise n_max",
                              tail);
    }
    return {p.cast<Complex>().asDiagonal(), tail};
}

Complex fock_moment(const TruncatedState& state, const FockGrid& grid, std::span<const CanonicalVar> indices) {
    if (state.rho.rows() != grid.dim()) throw DimensionError("state does not match the Fock grid");
    const auto r = sparse_canonicals(grid);
    ComplexMatrix y = state.rho;
    for (auto it = indices.rbegin(); it != indices.rend(); ++it) y = r[static_cast<int>(*it)] * y;
    return y.trace();
}

WeylSampler::WeylSampler(const RealVector& r, const FockGrid& grid, const BathParams& bath) {
    const RealVector p = checked_populations(grid, bath, tail_mass_);
    const auto sp = centered_spectrum(sparse_quadratic(combine_basis(bath, r), sparse_canonicals(grid), grid.dim()), p);
    eigenvalues_ = sp.eigenvalues;
    weights_ = (sp.vectors.cwiseAbs2().transpose() * p);
}

Complex WeylSampler::value(double n_sites) const {
    if (!(n_sites >= 1.0)) throw ValidityError("N must be >= 1");
    const double scale = 1.0 / std::sqrt(n_sites);
    Complex zm1 = 0.0;
    for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
        const double th = scale * eigenvalues_(k);
        const double h = std::sin(0.5 * th);
        zm1 += weights_(k) * Complex(-2.0 * h * h, std::sin(th));
    }
    return power_from_deviation(zm1, n_sites);
}

Complex weyl_expectation_N(const RealVector& r, long n_sites, const FockGrid& grid, const BathParams& bath) {
    return WeylSampler(r, grid, bath).value(static_cast<double>(n_sites));
}

CltReport clt_convergence(const RealVector& r, std::span<const long> n_values, const FockGrid& grid,
                          const BathParams& bath) {
    if (n_values.size() < 2) throw ValidityError("clt_convergence needs at least two N values");
    const WeylSampler base(r, grid, bath);
    const WeylSampler wider(r, FockGrid(grid.n_max() + 4), bath);
    CltReport rep;
    rep.limit = std::exp(-0.5 * r.dot(thermal_meso_covariance(bath) * r));
    rep.tail_mass = base.tail_mass();
    rep.nmax_shift = 0.0;
    for (long n : n_values) {
        const Complex v = base.value(static_cast<double>(n));
        rep.n_values.push_back(n);
        rep.values.push_back(v);
        rep.errors.push_back(std::abs(v - rep.limit));
        rep.nmax_shift = std::max(rep.nmax_shift, std::abs(v - wider.value(static_cast<double>(n))));
    }
    rep.converged_in_nmax = rep.nmax_shift <= kTol.algebraic;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(rep.n_values.size());
    for (std::size_t i = 0; i < rep.n_values.size(); ++i) {
        const double x = std::log(static_cast<double>(rep.n_values[i]));
        const double y = std::log(rep.errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    rep.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return rep;
}

double weyl_product_residual(const RealVector& r1, const RealVector& r2, long n_sites, const FockGrid& grid,
                             const BathParams& bath) {
    if (n_sites < 1) throw ValidityError("N must be >= 1");
    double tail = 0.0;
    const RealVector p = checked_populations(grid, bath, tail);
    const auto r = sparse_canonicals(grid);
    const double n = static_cast<double>(n_sites);
    const double scale = 1.0 / std::sqrt(n);

    const auto s1 = centered_spectrum(sparse_quadratic(combine_basis(bath, r1), r, grid.dim()), p);
    const auto s2 = centered_spectrum(sparse_quadratic(combine_basis(bath, r2), r, grid.dim()), p);
    const ComplexMatrix e1 = expi_minus_one(s1, scale);
    const ComplexMatrix e2 = expi_minus_one(s2, scale);
    // (1 + E1)(1 + E2) - 1 = E1 + E2 + E1 E2
    const Complex prod_m1 = trace_weighted(p, e1) + trace_weighted(p, e2) + trace_weighted_product(p, e1, e2);
    const Complex lhs = power_from_deviation(prod_m1, n);

    const auto s12 = centered_spectrum(sparse_quadratic(combine_basis(bath, r1 + r2), r, grid.dim()), p);
    const Complex joint = power_from_deviation(trace_weighted(p, expi_minus_one(s12, scale)), n);
    const double phase = r1.dot(SymplecticForm::standard(3).matrix() * r2);
    return std::abs(lhs - joint * std::exp(Complex(0.0, -0.5 * phase)));
}

FockOperator heisenberg_evolve(const FockOperator& x, const FockGrid& grid, const BathParams& bath, double t,
                               double dt) {
    const int dim = grid.dim();
    if (x.dim() != dim) throw DimensionError("operator does not match the Fock grid");
    const auto v = sparse_canonicals(grid);
    const ComplexMatrix c = kossakowski_matrix(bath);

    SparseOp h(dim, dim);
    {
        std::vector<Triplet> trip;
        for (int n1 = 0; n1 <= grid.n_max(); ++n1) {
            for (int n2 = 0; n2 <= grid.n_max(); ++n2) {
                trip.emplace_back(grid.index(n1, n2), grid.index(n1, n2), bath.omega() * (n1 + n2 + 1.0));
            }
        }
        h.setFromTriplets(trip.begin(), trip.end());
    }
    std::array<SparseOp, 4> w;
    SparseOp k(dim, dim);
    for (int a = 0; a < 4; ++a) {
        w[a].resize(dim, dim);
        for (int b = 0; b < 4; ++b) {
            if (c(a, b) == Complex(0.0)) continue;
            w[a] += c(a, b) * v[b];
        }
        k += SparseOp(v[a] * w[a]);
    }
    const SparseOp left = Complex(0.0, 1.0) * h - 0.5 * k;
    const SparseOp right = Complex(0.0, -1.0) * h - 0.5 * k;
    SparseOp id(dim, dim);
    id.setIdentity();

    // column-major vec(A X B) = (B^T kron A) vec(X)
    SparseOp super = kron(id, left) + kron(SparseOp(right.transpose()), id);
    for (int a = 0; a < 4; ++a) super += kron(SparseOp(w[a].transpose()), v[a]);
    super.makeCompressed();

    auto rhs = [&](const ComplexVector& vec) { return ComplexVector(super * vec); };
    const ComplexVector x0 = Eigen::Map<const ComplexVector>(x.matrix().data(), x.matrix().size());
    const ComplexVector xt = integrate_linear_ode<ComplexVector>(rhs, x0, t, dt);
    ComplexMatrix evolved = Eigen::Map<const ComplexMatrix>(xt.data(), dim, dim);
    if (x.hermitian()) {
        const double scale = std::max(1.0, max_abs(evolved));
        if (max_abs(ComplexMatrix(evolved - evolved.adjoint())) > 1e-10 * scale) {
            throw ConsistencyError("Heisenberg evolution broke Hermiticity");
        }
        return FockOperator(ComplexMatrix(0.5 * (evolved + evolved.adjoint())), true);
    }
    return FockOperator(std::move(evolved), false);
}

namespace {

Complex sandwich_lhs(const RealVector& r1, const RealVector& r, const RealVector& r2, double t, double n,
                     const FockGrid& grid, const BathParams& bath, double dt, double& tail) {
    const RealVector p = checked_populations(grid, bath, tail);
    const auto can = sparse_canonicals(grid);
    const double scale = 1.0 / std::sqrt(n);
    const int dim = grid.dim();
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);

    auto weyl = [&](const RealVector& rv) {
        const auto sp = centered_spectrum(sparse_quadratic(combine_basis(bath, rv), can, dim), p);
        return ComplexMatrix(id + expi_minus_one(sp, scale));
    };
    const ComplexMatrix u1 = weyl(r1);
    const ComplexMatrix u2 = weyl(r2);
    const ComplexMatrix ut = heisenberg_evolve(FockOperator(weyl(r), false), grid, bath, t, dt).matrix();
    const ComplexMatrix middle = u1 * ut;
    return std::exp(n * std::log(trace_weighted_product(p, middle, u2)));
}

}  // namespace

SandwichResult theorem2_sandwich(const RealVector& r1, const RealVector& r, const RealVector& r2, double t,
                                 long n_sites, const FockGrid& grid, const BathParams& bath, double dt) {
    if (n_sites < 1) throw ValidityError("N must be >= 1");
    const double n = static_cast<double>(n_sites);
    SandwichResult res{};
    double wide_tail = 0.0;
    res.lhs = sandwich_lhs(r1, r, r2, t, n, grid, bath, dt, res.tail_mass);
    const Complex wide = sandwich_lhs(r1, r, r2, t, n, FockGrid(grid.n_max() + 4), bath, dt, wide_tail);
    res.nmax_shift = std::abs(res.lhs - wide);
    res.converged_in_nmax = res.nmax_shift <= kTol.ode_endpoint;

    const RealMatrix sb = thermal_meso_covariance(bath);
    const auto bundle = propagate(generator(bath), sb, t);
    res.rhs = sandwich_limit(bundle, sb, SymplecticForm::standard(3), r1, r, r2);
    res.error = std::abs(res.lhs - res.rhs);
    return res;
}

Complex mean_field_characteristic(const QuadraticObservable& x, long n_sites, const FockGrid& grid,
                                  const BathParams& bath) {
    if (n_sites < 1) throw ValidityError("N must be >= 1");
    double tail = 0.0;
    const RealVector p = checked_populations(grid, bath, tail);
    const ComplexMatrix dense = ComplexMatrix(sparse_quadratic(x, sparse_canonicals(grid), grid.dim()));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(dense);
    if (es.info() != Eigen::Success) throw ConsistencyError("Hermitian eigensolver failed");
    const RealVector w = es.eigenvectors().cwiseAbs2().transpose() * p;
    const double n = static_cast<double>(n_sites);
    Complex zm1 = 0.0;
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        const double th = es.eigenvalues()(k) / n;
        const double h = std::sin(0.5 * th);
        zm1 += w(k) * Complex(-2.0 * h * h, std::sin(th));
    }
    return power_from_deviation(zm1, n);
}

}  // namespace mesoent
