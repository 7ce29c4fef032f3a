#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational scalars.
 *
 * All probabilities, correlation coefficients and generating-function
 * coefficients live in the field of rationals. GMP's mpq_class keeps
 * numerator and denominator coprime with a positive denominator after every
 * arithmetic operation; values built here are always canonicalized.
 */

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace patrace {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised for malformed textual input (rationals, patterns, problem files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "p/q" or an integer literal, with optional leading sign.
/// Rejects empty strings, embedded whitespace and zero denominators.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Decimal rendering with `digits` significant digits (presentation only).
std::string to_decimal(const Rational& value, int digits = 12);

/// Integer power; exponent may be negative for nonzero bases.
Rational pow(const Rational& base, long exponent);

}  // namespace patrace
