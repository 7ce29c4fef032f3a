#include "patrace/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace patrace {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs)
{
    trim();
}

Polynomial::Polynomial(const Rational& constant)
{
    if (constant != 0)
        coeffs_.push_back(constant);
}

Polynomial Polynomial::monomial(std::size_t k, const Rational& c)
{
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Rational Polynomial::operator[](std::size_t i) const
{
    return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Rational Polynomial::eval(const Rational& alpha) const
{
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * alpha + *it;
    return acc;
}

double Polynomial::eval(double alpha) const
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * alpha + it->get_d();
    return acc;
}

Polynomial Polynomial::monic() const
{
    if (is_zero())
        return *this;
    Polynomial p = *this;
    const Rational inv = Rational(1) / leading();
    return p *= inv;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c)
{
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& x : coeffs_)
        x *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::shifted(std::size_t k) const
{
    if (is_zero())
        return {};
    std::vector<Rational> v(k);
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree())
        return {Polynomial{}, a};

    std::vector<Rational> rem = a.coeffs();
    const auto db = static_cast<std::size_t>(b.degree());
    std::vector<Rational> quot(rem.size() - db);
    const Rational inv_lead = Rational(1) / b.leading();
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Rational q = rem[k + db] * inv_lead;
        quot[k] = q;
        if (q == 0)
            continue;
        for (std::size_t j = 0; j <= db; ++j)
            rem[k + j] -= q * b.coeffs()[j];
    }
    rem.resize(db);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        throw std::logic_error("inexact polynomial division");
    return q;
}

Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        Polynomial r = divmod(a, b).second;
        a = std::move(b);
        // Keeping the remainder monic bounds coefficient growth.
        b = r.monic();
    }
    return a.monic();
}

}  // namespace patrace
