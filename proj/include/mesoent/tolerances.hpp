#pragma once

namespace mesoent {

/// Every numerical threshold used by library checks, in one place.
struct Tolerances {
    double algebraic = 1e-10;      // algebraic identities, closed-form agreement
    double ode_endpoint = 1e-8;    // fixed-step ODE endpoints
    double symmetry = 1e-12;       // symmetry / antisymmetry residues
    double hermitian = 1e-12;      // Hermiticity of complex matrices
    double bona_fide = 1e-10;      // slack on Sigma + (i/2) sigma >= 0
    double span_closure = 1e-10;   // out-of-span residual of the derived generator
    double sqrt_clamp = 1e-12;     // log-negativity square-root argument clamp
    double sqrt_fail = 1e-9;       // ... and hard failure below this
    double tail_mass = 1e-8;       // Fock truncation warning threshold
    double time_root = 1e-4;       // sudden birth/death bisection
    double temperature_root = 1e-3;  // critical-temperature bisection
    double plateau_E = 1e-8;       // asymptotic plateau, |E(2t) - E(t)|
    double plateau_invariants = 1e-9;  // relative drift of I1..I4 at the plateau
};

inline constexpr Tolerances kTol{};

}  // namespace mesoent
