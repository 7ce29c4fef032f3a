#include "patrace/rational_func.hpp"

#include <stdexcept>

namespace patrace {

Polynomial one_minus_alpha()
{
    return Polynomial{Rational(1), Rational(-1)};
}

RationalFunc::RationalFunc(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero())
        throw std::domain_error("rational function with zero denominator");
    canonicalize();
}

RationalFunc::RationalFunc(const LaurentPoly& p)
{
    const long shift = p.min_exponent() < 0 ? -p.min_exponent() : 0;
    num_ = p.cleared(shift);
    den_ = Polynomial::monomial(static_cast<std::size_t>(shift));
    canonicalize();
}

void RationalFunc::canonicalize()
{
    if (num_.is_zero()) {
        den_ = Polynomial(Rational(1));
        return;
    }
    const Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
    }
    const Rational inv = Rational(1) / den_.leading();
    num_ *= inv;
    den_ *= inv;
}

Rational RationalFunc::eval(const Rational& alpha) const
{
    const Rational d = den_.eval(alpha);
    if (d == 0)
        throw std::domain_error("rational function evaluated at a pole");
    return num_.eval(alpha) / d;
}

double RationalFunc::eval(double alpha) const
{
    return num_.eval(alpha) / den_.eval(alpha);
}

RationalFunc& RationalFunc::operator+=(const RationalFunc& o)
{
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    canonicalize();
    return *this;
}

RationalFunc& RationalFunc::operator-=(const RationalFunc& o)
{
    return *this += -o;
}

RationalFunc& RationalFunc::operator*=(const RationalFunc& o)
{
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    canonicalize();
    return *this;
}

RationalFunc& RationalFunc::operator/=(const RationalFunc& o)
{
    if (o.is_zero())
        throw std::domain_error("division by the zero rational function");
    Polynomial n = num_ * o.den_;
    den_ = den_ * o.num_;
    num_ = std::move(n);
    canonicalize();
    return *this;
}

}  // namespace patrace
