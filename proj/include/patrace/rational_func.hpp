#pragma once

/**
 * @file rational_func.hpp
 * @brief Rational functions num(α)/den(α) in canonical form.
 *
 * Canonical form: gcd(num, den) = 1 and den is monic. The zero function is
 * 0/1. In canonical form structural equality coincides with equality in the
 * field of fractions, which the property suites rely on.
 */

#include "patrace/laurent_poly.hpp"
#include "patrace/polynomial.hpp"

namespace patrace {

class RationalFunc {
public:
    /// The zero function.
    RationalFunc() : den_(Rational(1)) {}
    RationalFunc(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT: implicit by intent
    RationalFunc(Polynomial p) : num_(std::move(p)), den_(Rational(1)) {}  // NOLINT
    /// Canonicalizes; throws std::domain_error when den is zero.
    RationalFunc(Polynomial num, Polynomial den);
    /// Clears negative exponents by α^D, D the deepest negative exponent.
    explicit RationalFunc(const LaurentPoly& p);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// Throws std::domain_error when the denominator vanishes at α.
    Rational eval(const Rational& alpha) const;
    double eval(double alpha) const;

    RationalFunc& operator+=(const RationalFunc& o);
    RationalFunc& operator-=(const RationalFunc& o);
    RationalFunc& operator*=(const RationalFunc& o);
    RationalFunc& operator/=(const RationalFunc& o);

    friend RationalFunc operator+(RationalFunc a, const RationalFunc& b) { return a += b; }
    friend RationalFunc operator-(RationalFunc a, const RationalFunc& b) { return a -= b; }
    friend RationalFunc operator*(RationalFunc a, const RationalFunc& b) { return a *= b; }
    friend RationalFunc operator/(RationalFunc a, const RationalFunc& b) { return a /= b; }
    friend RationalFunc operator-(const RationalFunc& a) { return RationalFunc(-a.num_, a.den_); }

    friend bool operator==(const RationalFunc&, const RationalFunc&) = default;

private:
    void canonicalize();

    Polynomial num_;
    Polynomial den_;
};

/// The polynomial 1 − α.
Polynomial one_minus_alpha();

}  // namespace patrace
