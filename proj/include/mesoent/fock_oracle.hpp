#pragma once

// Truncated two-mode Fock representation of one site, used as an
// independent oracle for the finite-N fluctuation limits: Weyl expectations,
// the emergent Weyl product relation, Heisenberg-picture Lindblad evolution
// and the mesoscopic sandwich identity.

#include <array>
#include <span>
#include <vector>

#include "mesoent/meso_dynamics.hpp"
#include "mesoent/micro_chain.hpp"
#include "mesoent/symplectic_core.hpp"

namespace mesoent {

/// Photon cutoff per mode; the site space has dimension (n_max + 1)^2.
class FockGrid {
public:
    explicit FockGrid(int n_max);

    int n_max() const noexcept { return n_max_; }
    int dim() const noexcept { return (n_max_ + 1) * (n_max_ + 1); }
    /// Basis index of |n1, n2>.
    int index(int n1, int n2) const noexcept { return n1 * (n_max_ + 1) + n2; }

private:
    int n_max_;
};

class FockOperator {
public:
    FockOperator() = default;
    /// With `hermitian` set, the matrix is checked to 1e-12 (relative) and symmetrized.
    FockOperator(ComplexMatrix m, bool hermitian);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    bool hermitian() const noexcept { return hermitian_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    ComplexMatrix m_;
    bool hermitian_ = false;
};

/// x1, p1, x2, p2 with x = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2).
std::array<FockOperator, 4> build_canonicals(const FockGrid& grid);

/// Largest deviation of [x_a, p_a] from i on the block excluding the top level of mode a.
double interior_ccr_residual(const FockGrid& grid);

/// sum_ij A_ij (R_i R_j + R_j R_i)/2 + c with truncated canonicals.
FockOperator to_fock(const QuadraticObservable& x, const FockGrid& grid);

struct TruncatedState {
    ComplexMatrix rho;
    double tail_mass;  // weight with n1 or n2 in the top two levels
};

/// Normalized e^{-beta H} on the truncated space. Throws TruncationError if
/// the tail mass exceeds 1e-8 unless `allow_heavy_tail` is set.
TruncatedState thermal_state(const FockGrid& grid, const BathParams& bath, bool allow_heavy_tail = false);

/// tr(rho R_{i1} ... R_{in}).
Complex fock_moment(const TruncatedState& state, const FockGrid& grid, std::span<const CanonicalVar> indices);

/// Thermal expectation of e^{i X~_r / sqrt N} raised to the N-th power,
/// X~_r = X_r - <X_r>. The spectral decomposition is done once per r.
class WeylSampler {
public:
    WeylSampler(const RealVector& r, const FockGrid& grid, const BathParams& bath);

    Complex value(double n_sites) const;
    double tail_mass() const noexcept { return tail_mass_; }

private:
    RealVector eigenvalues_;
    RealVector weights_;
    double tail_mass_;
};

Complex weyl_expectation_N(const RealVector& r, long n_sites, const FockGrid& grid, const BathParams& bath);

struct CltReport {
    std::vector<long> n_values;
    std::vector<Complex> values;
    std::vector<double> errors;  // |value - exp(-r.Sigma_beta.r / 2)|
    double limit;
    double slope;             // least-squares slope of log error against log N
    double tail_mass;
    double nmax_shift;        // max |value(n_max) - value(n_max + 4)|
    bool converged_in_nmax;   // nmax_shift <= 1e-10
};

CltReport clt_convergence(const RealVector& r, std::span<const long> n_values, const FockGrid& grid,
                          const BathParams& bath);

/// |<W(r1) W(r2)>_N - <W(r1 + r2)>_N e^{-(i/2) r1.sigma.r2}| with single-site
/// products raised to the N-th power.
double weyl_product_residual(const RealVector& r1, const RealVector& r2, long n_sites, const FockGrid& grid,
                             const BathParams& bath);

/// Integrates dX/dt = i[H, X] + sum_ab C_ab (V_a X V_b - {V_a V_b, X}/2) by RK4.
FockOperator heisenberg_evolve(const FockOperator& x, const FockGrid& grid, const BathParams& bath, double t,
                               double dt = 1e-3);

struct SandwichResult {
    Complex lhs;
    Complex rhs;
    double error;
    double tail_mass;
    double nmax_shift;       // |lhs(n_max) - lhs(n_max + 4)|
    bool converged_in_nmax;  // nmax_shift <= 1e-8
};

/// Finite-N sandwich <e^{iX~_{r1}/sqrtN} Phi_t[e^{iX~_r/sqrtN}] e^{iX~_{r2}/sqrtN}>^N
/// against its mesoscopic limit.
SandwichResult theorem2_sandwich(const RealVector& r1, const RealVector& r, const RealVector& r2, double t,
                                 long n_sites, const FockGrid& grid, const BathParams& bath, double dt = 1e-3);

/// Mean-field characteristic function <e^{iX/N}>^N (tends to e^{i<X>}).
Complex mean_field_characteristic(const QuadraticObservable& x, long n_sites, const FockGrid& grid,
                                  const BathParams& bath);

}  // namespace mesoent
