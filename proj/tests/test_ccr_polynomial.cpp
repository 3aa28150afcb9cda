#include "doctest.h"

#include <random>

#include "mesoent/ccr_polynomial.hpp"

using namespace mesoent;
using W = CcrPolynomial::Word;

TEST_CASE("canonical commutators") {
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const auto c = commutator(CcrPolynomial::generator(a), CcrPolynomial::generator(b));
            CHECK(c.degree() <= 0);
            CHECK(c.coefficient({}) == std::complex<double>(0.0, site_symplectic(a, b)));
        }
    }
    CHECK(site_symplectic(0, 1) == 1.0);
    CHECK(site_symplectic(1, 0) == -1.0);
    CHECK(site_symplectic(0, 3) == 0.0);
}

TEST_CASE("reordering p1 x1 into normal form") {
    const auto p = CcrPolynomial::word(W{1, 0});
    CHECK(p.coefficient(W{0, 1}) == std::complex<double>(1.0));
    CHECK(p.coefficient({}) == std::complex<double>(0.0, -1.0));
}

TEST_CASE("multiplication is associative on random words") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> g(0, 3), len(0, 3);
    auto random_word = [&] {
        W w(static_cast<std::size_t>(len(rng)));
        for (auto& x : w) x = static_cast<std::uint8_t>(g(rng));
        return CcrPolynomial::word(w, {0.5 + g(rng), 0.25 * g(rng)});
    };
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_word() + random_word();
        const auto b = random_word();
        const auto c = random_word() + random_word();
        const auto diff = (a * b) * c - a * (b * c);
        for (const auto& [w, coeff] : diff.terms()) CHECK(std::abs(coeff) < 1e-12);
    }
}

TEST_CASE("word product agrees with concatenation") {
    const auto ab = CcrPolynomial::word(W{3, 1}) * CcrPolynomial::word(W{2, 0});
    const auto direct = CcrPolynomial::word(W{3, 1, 2, 0});
    const auto diff = ab - direct;
    for (const auto& [w, coeff] : diff.terms()) CHECK(std::abs(coeff) < 1e-15);
}

TEST_CASE("degree and pruning") {
    auto p = CcrPolynomial::word(W{0, 0, 1}) + CcrPolynomial::scalar(1e-20);
    CHECK(p.degree() == 3);
    p.prune(1e-15);
    CHECK(p.coefficient({}) == std::complex<double>(0.0));
    CHECK(p.max_abs_of_degree(3) == doctest::Approx(1.0));
    CHECK_THROWS(CcrPolynomial::generator(4));
}

TEST_CASE("anticommutator of x1 with p1 is twice the symmetric product") {
    const auto a = anticommutator(CcrPolynomial::generator(0), CcrPolynomial::generator(1));
    CHECK(a.coefficient(W{0, 1}) == std::complex<double>(2.0));
    CHECK(a.coefficient({}) == std::complex<double>(0.0, -1.0));
}
