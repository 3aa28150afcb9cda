#pragma once

// Noncommutative polynomials in the single-site canonical variables
// R = (x1, p1, x2, p2) with [R_i, R_j] = i J_ij, kept in a normal form where
// every monomial lists its generators in nondecreasing index order.
// Products are reduced with R_b R_a = R_a R_b - i J_ab (a < b).

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace mesoent {

class CcrPolynomial {
public:
    using Word = std::vector<std::uint8_t>;
    using Coefficient = std::complex<double>;
    static constexpr int kGenerators = 4;

    CcrPolynomial() = default;

    static CcrPolynomial scalar(Coefficient c);
    static CcrPolynomial generator(int index);
    /// Monomial R_{w0} R_{w1} ... in the given (not necessarily normal) order.
    static CcrPolynomial word(const Word& w, Coefficient c = 1.0);

    CcrPolynomial& operator+=(const CcrPolynomial& other);
    CcrPolynomial& operator-=(const CcrPolynomial& other);
    CcrPolynomial& operator*=(Coefficient c);

    friend CcrPolynomial operator+(CcrPolynomial a, const CcrPolynomial& b) { return a += b; }
    friend CcrPolynomial operator-(CcrPolynomial a, const CcrPolynomial& b) { return a -= b; }
    friend CcrPolynomial operator*(CcrPolynomial a, Coefficient c) { return a *= c; }
    friend CcrPolynomial operator*(Coefficient c, CcrPolynomial a) { return a *= c; }
    friend CcrPolynomial operator*(const CcrPolynomial& a, const CcrPolynomial& b);

    /// Coefficient of a normal-ordered word (0 if absent).
    Coefficient coefficient(const Word& normal_word) const;
    const std::map<Word, Coefficient>& terms() const noexcept { return terms_; }

    int degree() const;
    /// Largest |coefficient| among words of exactly this degree.
    double max_abs_of_degree(int degree) const;

    /// Removes terms with |c| <= tol.
    CcrPolynomial& prune(double tol = 1e-15);

private:
    void add_normal_ordered(Word w, Coefficient c);
    std::map<Word, Coefficient> terms_;
};

CcrPolynomial commutator(const CcrPolynomial& a, const CcrPolynomial& b);
CcrPolynomial anticommutator(const CcrPolynomial& a, const CcrPolynomial& b);

/// J_ab of the single-site form over (x1, p1, x2, p2).
double site_symplectic(int a, int b);

}  // namespace mesoent
