#pragma once

// Mesoscopic quasi-free semigroup on the six fluctuation modes:
// generator L, propagator M_t = e^{tL}, noise K_t = Sigma_beta - M_t Sigma_beta M_t^T,
// Heisenberg action on Weyl elements and the dual covariance flow.

#include "mesoent/micro_chain.hpp"
#include "mesoent/symplectic_core.hpp"

namespace mesoent {

enum class Provenance { closed_form, micro_derived, custom };

class MesoGenerator {
public:
    MesoGenerator(RealMatrix l, Provenance provenance);

    const RealMatrix& matrix() const noexcept { return l_; }
    Provenance provenance() const noexcept { return provenance_; }

private:
    RealMatrix l_;
    Provenance provenance_;
};

/// (gamma-1) 1_6 + 2 omega sigma + ((gamma-1) lambda / sqrt 2) [[0,0,1],[0,0,1],[1,1,0]]
/// (2x2 identity blocks). Throws CompletePositivityError for lambda^2 > 1.
MesoGenerator generator(const BathParams& bath);

/// Same matrix obtained from the microscopic Lindbladian.
MesoGenerator generator_from_micro(const BathParams& bath);

/// Thermal fluctuation covariance ((1 + eta^2) / 4 eta) 1_6.
RealMatrix thermal_meso_covariance(const BathParams& bath);

struct PropagatorBundle {
    double t;
    RealMatrix m;  // e^{tL}
    RealMatrix k;  // Sigma_beta - M Sigma_beta M^T
};

PropagatorBundle propagate(const MesoGenerator& gen, const RealMatrix& sigma_beta, double t);

/// e^{log_prefactor} W(r).
struct WeylElement {
    RealVector r;
    double log_prefactor = 0.0;
};

/// Phi_t[e^c W(r)] = e^{c - r.K_t.r / 2} W(M_t^T r).
WeylElement apply_heisenberg(const PropagatorBundle& bundle, const WeylElement& w);

/// Sigma(t) = Sigma_beta - M Sigma_beta M^T + M Sigma_0 M^T. Throws
/// ConsistencyError if the result is not bona fide.
CovarianceMatrix evolve_covariance(const MesoGenerator& gen, const RealMatrix& sigma_beta,
                                   const CovarianceMatrix& sigma0, double t);

/// Smallest eigenvalue of (Sigma_beta + i/2 sigma) - M (Sigma_beta + i/2 sigma) M^T.
double cp_certificate(const PropagatorBundle& bundle, const RealMatrix& sigma_beta,
                      const SymplecticForm& form);

/// Mesoscopic limit of <W(r1) Phi_t[W(r)] W(r2)> in the thermal state:
/// exp(-(Z + iY)/2) with Z = q.Sigma_beta.q + r.K_t.r, q = r1 + M_t^T r + r2,
/// Y = r1.sigma.r_t + r_t.sigma.r2 + r1.sigma.r2.
Complex sandwich_limit(const PropagatorBundle& bundle, const RealMatrix& sigma_beta,
                       const SymplecticForm& form, const RealVector& r1, const RealVector& r,
                       const RealVector& r2);

}  // namespace mesoent
