#include "mesoent/ccr_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mesoent {

double site_symplectic(int a, int b) {
    if (a / 2 != b / 2 || a == b) {
        return 0.0;
    }
    return (a % 2 == 0) ? 1.0 : -1.0;
}

CcrPolynomial CcrPolynomial::scalar(Coefficient c) {
    CcrPolynomial p;
    p.terms_[Word{}] = c;
    return p;
}

CcrPolynomial CcrPolynomial::generator(int index) {
    if (index < 0 || index >= kGenerators) {
        throw std::out_of_range("CcrPolynomial::generator: index out of range");
    }
    CcrPolynomial p;
    p.terms_[Word{static_cast<std::uint8_t>(index)}] = 1.0;
    return p;
}

CcrPolynomial CcrPolynomial::word(const Word& w, Coefficient c) {
    for (auto g : w) {
        if (g >= kGenerators) {
            throw std::out_of_range("CcrPolynomial::word: generator index out of range");
        }
    }
    CcrPolynomial p;
    p.add_normal_ordered(w, c);
    return p;
}

// Reorders w into nondecreasing order, emitting the commutator terms.
void CcrPolynomial::add_normal_ordered(Word w, Coefficient c) {
    if (c == Coefficient(0.0)) {
        return;
    }
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        const int a = w[k];
        const int b = w[k + 1];
        if (a > b) {
            // R_a R_b = R_b R_a + [R_a, R_b] = R_b R_a + i J_ab
            const double j = site_symplectic(a, b);
            if (j != 0.0) {
                Word contracted;
                contracted.reserve(w.size() - 2);
                contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<long>(k));
                contracted.insert(contracted.end(), w.begin() + static_cast<long>(k) + 2, w.end());
                add_normal_ordered(std::move(contracted), c * Coefficient(0.0, j));
            }
            std::swap(w[k], w[k + 1]);
            add_normal_ordered(std::move(w), c);
            return;
        }
    }
    terms_[w] += c;
}

CcrPolynomial& CcrPolynomial::operator+=(const CcrPolynomial& other) {
    for (const auto& [w, c] : other.terms_) {
        terms_[w] += c;
    }
    return *this;
}

CcrPolynomial& CcrPolynomial::operator-=(const CcrPolynomial& other) {
    for (const auto& [w, c] : other.terms_) {
        terms_[w] -= c;
    }
    return *this;
}

CcrPolynomial& CcrPolynomial::operator*=(Coefficient c) {
    for (auto& [w, v] : terms_) {
        v *= c;
    }
    return *this;
}

CcrPolynomial operator*(const CcrPolynomial& a, const CcrPolynomial& b) {
    CcrPolynomial out;
    for (const auto& [wa, ca] : a.terms()) {
        for (const auto& [wb, cb] : b.terms()) {
            CcrPolynomial::Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add_normal_ordered(std::move(w), ca * cb);
        }
    }
    return out;
}

CcrPolynomial::Coefficient CcrPolynomial::coefficient(const Word& normal_word) const {
    auto it = terms_.find(normal_word);
    return it == terms_.end() ? Coefficient(0.0) : it->second;
}

int CcrPolynomial::degree() const {
    int d = -1;
    for (const auto& [w, c] : terms_) {
        if (c != Coefficient(0.0)) {
            d = std::max(d, static_cast<int>(w.size()));
        }
    }
    return d;
}

double CcrPolynomial::max_abs_of_degree(int degree) const {
    double m = 0.0;
    for (const auto& [w, c] : terms_) {
        if (static_cast<int>(w.size()) == degree) {
            m = std::max(m, std::abs(c));
        }
    }
    return m;
}

CcrPolynomial& CcrPolynomial::prune(double tol) {
    std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
    return *this;
}

CcrPolynomial commutator(const CcrPolynomial& a, const CcrPolynomial& b) { return a * b - b * a; }

CcrPolynomial anticommutator(const CcrPolynomial& a, const CcrPolynomial& b) {
    return a * b + b * a;
}

}  // namespace mesoent
