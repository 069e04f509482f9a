#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltheory/rational.hpp"

namespace ltheory {

/// Univariate polynomial with rational coefficients, coeffs_[k] is the
/// coefficient of n^k. Normalized: no trailing zero coefficients (the zero
/// polynomial has an empty coefficient vector).
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static Polynomial constant(const Rational& c) { return Polynomial({c}); }
    static Polynomial variable() { return Polynomial({Rational(0), Rational(1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& leading() const { return coeffs_.back(); }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    Rational eval(std::uint64_t n) const { return eval(Rational(static_cast<unsigned long>(n))); }

    Polynomial operator-() const {
        std::vector<Rational> c(coeffs_);
        for (auto& q : c) q = -q;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(c));
    }

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

    // p(q(n))
    Polynomial compose(const Polynomial& inner) const {
        Polynomial acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * inner + Polynomial::constant(*it);
        return acc;
    }

    /// Bound B such that for every integer n >= B the sign of eval(n) equals
    /// the sign of the leading coefficient (Cauchy root bound). Returns 0 for
    /// the zero polynomial.
    std::uint64_t sign_stability_bound() const {
        if (is_zero()) return 0;
        Rational m(0);
        for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) {
            Rational r = rational_abs(coeffs_[i] / leading());
            if (r > m) m = r;
        }
        return ceil_to_u64(m + 1);
    }

    /// Sign of eval(n) for all n beyond sign_stability_bound(): -1, 0 or +1.
    int eventual_sign() const {
        if (is_zero()) return 0;
        return sgn(leading());
    }

    std::string to_string(const std::string& var = "n") const;

  private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

inline std::string Polynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? "+" : "-";
        else if (c < 0) out += "-";
        Rational a = rational_abs(c);
        if (k == 0 || a != 1) out += ltheory::to_string(a);
        if (k > 0) {
            if (a != 1) out += "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace ltheory
