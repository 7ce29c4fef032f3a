#include <doctest.h>

#include "patrace/laurent_poly.hpp"
#include "patrace/matrix.hpp"
#include "patrace/polynomial.hpp"
#include "patrace/rational.hpp"
#include "patrace/rational_func.hpp"
#include "support/reference.hpp"

#include <random>

using namespace patrace;

namespace {

Rational random_rational(std::mt19937_64& rng, long span = 9)
{
    std::uniform_int_distribution<long> num(-span, span), den(1, span);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

Polynomial random_poly(std::mt19937_64& rng, int max_deg)
{
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c)
        x = random_rational(rng);
    return Polynomial(std::move(c));
}

LaurentPoly random_laurent(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> exp(-6, 3);
    std::uniform_int_distribution<int> count(0, 4);
    LaurentPoly::TermMap t;
    for (int i = count(rng); i > 0; --i)
        t[exp(rng)] = random_rational(rng);
    return LaurentPoly(std::move(t));
}

RationalFunc random_rf(std::mt19937_64& rng)
{
    Polynomial den;
    while (den.is_zero())
        den = random_poly(rng, 3);
    return RationalFunc(random_poly(rng, 3), den);
}

}  // namespace

TEST_CASE("parse_rational accepts p/q and integers and canonicalizes")
{
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK(to_string(parse_rational("2/4")) == "1/2");
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("+7/14") == Rational(1, 2));
    CHECK(to_string(parse_rational("6/3")) == "2");
}

TEST_CASE("parse_rational rejects malformed input")
{
    for (const char* bad : {"", "1/0", "1/", "/2", "a/b", "1.5", "1 /2", "1/-2", "0x10"})
        CHECK_THROWS_AS(parse_rational(bad), ParseError);
}

TEST_CASE("to_decimal renders significant digits")
{
    CHECK(to_decimal(Rational(31, 6), 12) == "5.16666666667");
    CHECK(to_decimal(Rational(1, 4), 12) == "0.25");
    CHECK(to_decimal(Rational(5, 12), 4) == "0.4167");
}

TEST_CASE("polynomial division, gcd and canonical trimming")
{
    const Polynomial x_minus_1{Rational(-1), Rational(1)};
    const Polynomial x_plus_2{Rational(2), Rational(1)};
    const Polynomial prod = x_minus_1 * x_plus_2;
    CHECK(prod.degree() == 2);
    CHECK(exact_div(prod, x_minus_1) == x_plus_2);
    CHECK(gcd(prod, x_minus_1 * Rational(3)) == x_minus_1);
    CHECK(gcd(Polynomial{}, Polynomial{}).is_zero());
    CHECK((x_minus_1 - x_minus_1).is_zero());
    CHECK(Polynomial({Rational(1), Rational(0), Rational(0)}).degree() == 0);
    CHECK_THROWS_AS(divmod(prod, Polynomial{}), std::domain_error);
    CHECK_THROWS_AS(exact_div(prod, Polynomial{Rational(0), Rational(1)}), std::logic_error);
}

TEST_CASE("polynomial divmod reconstructs the dividend")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Polynomial a = random_poly(rng, 6);
        Polynomial b = random_poly(rng, 3);
        if (b.is_zero())
            continue;
        auto [q, r] = divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("Laurent polynomial evaluation is a ring homomorphism")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const LaurentPoly x = random_laurent(rng);
        const LaurentPoly y = random_laurent(rng);
        Rational alpha = random_rational(rng);
        if (alpha <= 0)
            alpha = -alpha + Rational(1, 3);
        CHECK((x * y).eval(alpha) == x.eval(alpha) * y.eval(alpha));
        CHECK((x + y).eval(alpha) == x.eval(alpha) + y.eval(alpha));
        CHECK((x * LaurentPoly::one_minus_alpha()).eval(alpha) == x.eval(alpha) * (Rational(1) - alpha));
    }
}

TEST_CASE("Laurent polynomials keep no zero coefficients")
{
    const LaurentPoly a = LaurentPoly::monomial(-2, Rational(4));
    CHECK((a - a).is_zero());
    CHECK((a - a).terms().empty());
    CHECK(LaurentPoly(LaurentPoly::TermMap{{3, Rational(0)}}).is_zero());
    CHECK(a.cleared(2) == Polynomial{Rational(4)});
    CHECK_THROWS_AS(a.cleared(1), std::logic_error);
    CHECK_THROWS_AS(a.eval(Rational(0)), std::domain_error);
}

TEST_CASE("rational functions: canonical form is idempotent and equality-stable")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const RationalFunc f = random_rf(rng);
        // Same fraction written with a common factor must canonicalize identically.
        const Polynomial k = random_poly(rng, 2);
        if (k.is_zero())
            continue;
        const RationalFunc g(f.num() * k, f.den() * k);
        CHECK(g == f);
        CHECK(RationalFunc(f.num(), f.den()) == f);
        if (!f.is_zero()) {
            CHECK(f.den().leading() == 1);
            CHECK(gcd(f.num(), f.den()).degree() == 0);
        }
    }
}

TEST_CASE("rational functions satisfy the field axioms")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const RationalFunc a = random_rf(rng), b = random_rf(rng), c = random_rf(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == RationalFunc());
        if (!a.is_zero())
            CHECK(a / a == RationalFunc(Rational(1)));
        const Rational x(2, 7);
        if (a.den().eval(x) != 0 && b.den().eval(x) != 0)
            CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
    }
}

TEST_CASE("rational function from a Laurent polynomial clears negative powers")
{
    // 2/α  →  2/α as num 2, den α
    const RationalFunc f(LaurentPoly::monomial(-1, Rational(2)));
    CHECK(f.num() == Polynomial{Rational(2)});
    CHECK(f.den() == Polynomial{Rational(0), Rational(1)});
    CHECK(f.eval(Rational(1, 2)) == 4);
    CHECK_THROWS_AS(f.eval(Rational(0)), std::domain_error);
}

TEST_CASE("det: identity, repeated column, and the three-pattern matrix")
{
    for (std::size_t n = 0; n <= 5; ++n) {
        CHECK(det(Matrix<Rational>::identity(n)) == 1);
        CHECK(det_rf(Matrix<RationalFunc>::identity(n)) == RationalFunc(Rational(1)));
    }
    Matrix<Rational> b(3, 3);
    const long vals[3][3] = {{8, 4, 2}, {2, 10, 4}, {6, 2, 8}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            b(i, j) = vals[i][j];
    // Frozen from the independent cofactor expansion.
    CHECK(testing::cofactor_det(b) == 496);
    CHECK(det(b) == 496);
    CHECK(det_rf(b.map([](const Rational& x) { return RationalFunc(x); })) == RationalFunc(Rational(496)));

    Matrix<Rational> rep = b.with_column(2, {Rational(8), Rational(2), Rational(6)});
    CHECK(det(rep) == 0);
}

TEST_CASE("det_rf agrees with cofactor expansion on random matrices")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 4;
        Matrix<RationalFunc> m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = (rng() % 4 == 0) ? RationalFunc() : random_rf(rng);
        CHECK(det_rf(m) == testing::cofactor_det(m));
        if (n >= 2) {
            std::vector<RationalFunc> col(n);
            for (std::size_t i = 0; i < n; ++i)
                col[i] = m(i, 0);
            CHECK(det_rf(m.with_column(n - 1, col)).is_zero());
        }
    }
}

TEST_CASE("solve handles several right-hand sides and rejects singular systems")
{
    Matrix<Rational> a(2, 2);
    a(0, 0) = 2; a(0, 1) = 1; a(1, 0) = 1; a(1, 1) = 3;
    Matrix<Rational> rhs(2, 2);
    rhs(0, 0) = 3; rhs(1, 0) = 4; rhs(0, 1) = 1; rhs(1, 1) = 0;
    const auto x = solve(a, rhs);
    CHECK(x(0, 0) == 1);
    CHECK(x(1, 0) == 1);
    CHECK(x(0, 1) == Rational(3, 5));
    CHECK(x(1, 1) == Rational(-1, 5));
    Matrix<Rational> sing(2, 2, Rational(1));
    CHECK_THROWS_AS(solve(sing, rhs), SingularSystem);
}
