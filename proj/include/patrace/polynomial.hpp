#pragma once

/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials in α over the rationals.
 *
 * coeffs[i] is the coefficient of α^i. The zero polynomial has no stored
 * coefficients and every nonzero polynomial has a nonzero leading coefficient.
 */

#include "patrace/rational.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace patrace {

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<Rational> coeffs);
    explicit Polynomial(const Rational& constant);

    /// α^k
    static Polynomial monomial(std::size_t k, const Rational& c = Rational(1));

    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    /// Coefficient of α^i; zero beyond the degree.
    Rational operator[](std::size_t i) const;
    const Rational& leading() const { return coeffs_.back(); }

    Rational eval(const Rational& alpha) const;
    double eval(double alpha) const;

    Polynomial monic() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// Shifts by α^k.
    Polynomial shifted(std::size_t k) const;

private:
    void trim();

    std::vector<Rational> coeffs_;
};

/// Euclidean division; throws std::domain_error on a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Quotient of an exact division; throws std::logic_error on a nonzero remainder.
Polynomial exact_div(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

}  // namespace patrace
