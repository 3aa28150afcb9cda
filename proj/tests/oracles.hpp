#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <random>

#include "mesoent/symplectic_core.hpp"

namespace oracle {

using mesoent::ComplexMatrix;
using mesoent::RealMatrix;

/// sum_{k <= terms} (tA)^k / k!
inline RealMatrix taylor_expm(const RealMatrix& a, double t, int terms = 60) {
    const auto n = a.rows();
    RealMatrix sum = RealMatrix::Identity(n, n);
    RealMatrix term = RealMatrix::Identity(n, n);
    for (int k = 1; k <= terms; ++k) {
        term = term * (t * a) / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

inline RealMatrix random_matrix(std::mt19937_64& rng, int n, double max_norm) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = u(rng);
    }
    return a * (max_norm / a.norm());
}

/// Product of random complex Givens rotations, a unitary with known structure.
inline ComplexMatrix random_givens_unitary(std::mt19937_64& rng, int n, int rotations) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_int_distribution<int> pick(0, n - 1);
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    for (int r = 0; r < rotations; ++r) {
        const int p = pick(rng);
        int q = pick(rng);
        if (q == p) q = (p + 1) % n;
        const double th = angle(rng);
        const std::complex<double> ph = std::polar(1.0, angle(rng));
        ComplexMatrix g = ComplexMatrix::Identity(n, n);
        g(p, p) = std::cos(th);
        g(q, q) = std::cos(th);
        g(p, q) = -std::sin(th) * std::conj(ph);
        g(q, p) = std::sin(th) * ph;
        u = g * u;
    }
    return u;
}

/// Smallest root of the characteristic polynomial of a 2x2 Hermitian matrix.
inline double min_eig_2x2(std::complex<double> a, std::complex<double> b, std::complex<double> d) {
    const double tr = a.real() + d.real();
    const double det = a.real() * d.real() - std::norm(b);
    return 0.5 * tr - std::sqrt(0.25 * tr * tr - det);
}

}  // namespace oracle
