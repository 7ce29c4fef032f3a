#include "patrace/rational.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace patrace {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

Integer parse_integer(std::string_view s)
{
    std::string buf(s);
    if (!buf.empty() && buf.front() == '+')
        buf.erase(0, 1);
    return Integer(buf, 10);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!is_integer_literal(num))
        throw ParseError("malformed rational '" + std::string(text) + "'");

    Rational value;
    if (slash == std::string_view::npos) {
        value = Rational(parse_integer(num));
    } else {
        const std::string_view den = text.substr(slash + 1);
        if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+')
            throw ParseError("malformed rational '" + std::string(text) + "'");
        const Integer d = parse_integer(den);
        if (d == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        value = Rational(parse_integer(num), d);
    }
    value.canonicalize();
    return value;
}

std::string to_string(const Rational& value)
{
    return value.get_str(10);
}

std::string to_decimal(const Rational& value, int digits)
{
    digits = std::clamp(digits, 1, 1000);
    // 3.33 bits per decimal digit plus headroom for the conversion itself.
    const auto bits = static_cast<mp_bitcnt_t>(digits * 4 + 64);
    mpf_class f(value, bits);
    const int len = gmp_snprintf(nullptr, 0, "%.*Fg", digits, f.get_mpf_t());
    std::vector<char> buf(static_cast<std::size_t>(len) + 1);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    return std::string(buf.data(), static_cast<std::size_t>(len));
}

Rational pow(const Rational& base, long exponent)
{
    if (exponent < 0) {
        if (base == 0)
            throw std::domain_error("zero raised to a negative power");
        return pow(Rational(1) / base, -exponent);
    }
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace patrace
