#include "patrace/laurent_poly.hpp"

#include <cmath>
#include <stdexcept>

namespace patrace {

LaurentPoly::LaurentPoly(TermMap terms)
{
    for (auto& [k, c] : terms)
        add_term(k, c);
}

LaurentPoly::LaurentPoly(const Rational& constant)
{
    add_term(0, constant);
}

LaurentPoly::LaurentPoly(const Polynomial& p)
{
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        add_term(static_cast<long>(i), p.coeffs()[i]);
}

LaurentPoly LaurentPoly::monomial(long k, const Rational& c)
{
    LaurentPoly p;
    p.add_term(k, c);
    return p;
}

LaurentPoly LaurentPoly::one_minus_alpha()
{
    return LaurentPoly(TermMap{{0, Rational(1)}, {1, Rational(-1)}});
}

void LaurentPoly::add_term(long k, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

long LaurentPoly::min_exponent() const
{
    return terms_.empty() ? 0 : terms_.begin()->first;
}

long LaurentPoly::max_exponent() const
{
    return terms_.empty() ? 0 : terms_.rbegin()->first;
}

Rational LaurentPoly::coefficient(long k) const
{
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational LaurentPoly::eval(const Rational& alpha) const
{
    if (alpha == 0 && min_exponent() < 0)
        throw std::domain_error("Laurent polynomial with negative exponents evaluated at 0");
    Rational acc(0);
    for (const auto& [k, c] : terms_)
        acc += c * pow(alpha, k);
    return acc;
}

double LaurentPoly::eval(double alpha) const
{
    double acc = 0.0;
    for (const auto& [k, c] : terms_)
        acc += c.get_d() * std::pow(alpha, static_cast<double>(k));
    return acc;
}

Polynomial LaurentPoly::cleared(long shift) const
{
    if (is_zero())
        return {};
    if (min_exponent() + shift < 0)
        throw std::logic_error("Laurent shift does not clear negative exponents");
    std::vector<Rational> v(static_cast<std::size_t>(max_exponent() + shift + 1));
    for (const auto& [k, c] : terms_)
        v[static_cast<std::size_t>(k + shift)] = c;
    return Polynomial(std::move(v));
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o)
{
    for (const auto& [k, c] : o.terms_)
        add_term(k, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o)
{
    for (const auto& [k, c] : o.terms_)
        add_term(k, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_)
        v *= c;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
{
    LaurentPoly out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            out.add_term(ka + kb, ca * cb);
    return out;
}

}  // namespace patrace
