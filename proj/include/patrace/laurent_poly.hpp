#pragma once

/**
 * @file laurent_poly.hpp
 * @brief Sparse Laurent polynomials in α with rational coefficients.
 *
 * Correlation functions are sums of terms c·α^{-k}; this type stores them
 * exactly as an exponent→coefficient map with no zero entries, so structural
 * equality is ring equality.
 */

#include "patrace/polynomial.hpp"
#include "patrace/rational.hpp"

#include <map>

namespace patrace {

class LaurentPoly {
public:
    using TermMap = std::map<long, Rational>;

    LaurentPoly() = default;
    explicit LaurentPoly(TermMap terms);
    explicit LaurentPoly(const Rational& constant);
    explicit LaurentPoly(const Polynomial& p);

    /// c·α^k
    static LaurentPoly monomial(long k, const Rational& c = Rational(1));
    /// 1 − α
    static LaurentPoly one_minus_alpha();

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Zero for the zero polynomial.
    long min_exponent() const;
    long max_exponent() const;
    Rational coefficient(long k) const;

    /// Evaluation at α; α must be nonzero when negative exponents are present.
    Rational eval(const Rational& alpha) const;
    double eval(double alpha) const;

    /// α^shift · this as an ordinary polynomial; shift must clear every
    /// negative exponent.
    Polynomial cleared(long shift) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Rational& c);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    void add_term(long k, const Rational& c);

    TermMap terms_;
};

}  // namespace patrace
