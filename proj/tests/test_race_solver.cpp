#include <doctest.h>

#include "patrace/oracle.hpp"
#include "patrace/race_solver.hpp"
#include "support/random_problems.hpp"
#include "support/reference.hpp"

#include <algorithm>
#include <random>

using namespace patrace;
using patrace::testing::pat;

namespace {

std::vector<Rational> rats(std::initializer_list<Rational> xs)
{
    return xs;
}

const RationalFunc one_rf{Rational(1)};

}  // namespace

TEST_CASE("single_pgf for the first head is geometric")
{
    const Alphabet fair = testing::fair_coin();
    const RationalFunc g = single_pgf(std::nullopt, pat(fair, "H"), fair);
    // α/(2−α), monic denominator: (−α)/(α−2)
    CHECK(g == RationalFunc(Polynomial{Rational(0), Rational(1)}, Polynomial{Rational(2), Rational(-1)}));
    const auto c = series_coefficients(g, 6);
    CHECK(c[0] == 0);
    for (std::size_t n = 1; n <= 6; ++n)
        CHECK(c[n] == pow(Rational(1, 2), static_cast<long>(n)));

    const RationalFunc q = single_Q(std::nullopt, pat(fair, "H"), fair);
    CHECK(q == RationalFunc(Polynomial{Rational(2)}, Polynomial{Rational(2), Rational(-1)}));
    CHECK(q.eval(Rational(1)) == 2);
}

TEST_CASE("single pattern already completed by the initial word")
{
    const Alphabet fair = testing::fair_coin();
    const Pattern b = pat(fair, "THH");
    for (const char* a : {"THH", "TTHH", "HTTHH"}) {
        CHECK(single_pgf(pat(fair, a), b, fair) == one_rf);
        CHECK(single_Q(pat(fair, a), b, fair).is_zero());
        CHECK(single_expected(pat(fair, a), b, fair) == 0);
    }
}

TEST_CASE("single-pattern expectations match the absorbing chain")
{
    const Alphabet fair = testing::fair_coin();
    struct Case {
        std::optional<std::string_view> a;
        std::string_view b;
        long expected;
    };
    for (const auto& c : {Case{std::nullopt, "THH", 8}, Case{std::nullopt, "HTH", 10}, Case{"THH", "THTH", 20}}) {
        const std::optional<Pattern> a = c.a ? std::optional(pat(fair, *c.a)) : std::nullopt;
        const Pattern b = pat(fair, c.b);
        CHECK(single_expected(a, b, fair) == c.expected);
        CHECK(absorbing_solve({fair, a, {b}}).expected_tau == c.expected);
        CHECK(single_Q(a, b, fair).eval(Rational(1)) == c.expected);
    }
}

TEST_CASE("single_pgf for THH then THTH sums to one and matches the DP series")
{
    const Alphabet fair = testing::fair_coin();
    const Pattern a = pat(fair, "THH"), b = pat(fair, "THTH");
    const RationalFunc g = single_pgf(a, b, fair);
    CHECK(g.eval(Rational(1)) == 1);
    const auto c = series_coefficients(g, 30);
    const auto dp = exact_distribution({fair, a, {b}}, 30);
    for (std::size_t n = 0; n <= 30; ++n)
        CHECK(c[n] == dp.rows[n].total);
}

TEST_CASE("single_Q equals (1 − g)/(1 − α) on random single-pattern problems")
{
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 80; ++i) {
        auto p = testing::random_problem(rng, {4, 1, 6, 6});
        const auto& b = p.patterns[0];
        const RationalFunc g = single_pgf(p.initial, b, p.alphabet);
        const RationalFunc q = single_Q(p.initial, b, p.alphabet);
        CHECK(q == (one_rf - g) / RationalFunc(one_minus_alpha()));
        CHECK(RationalFunc(one_minus_alpha()) * q + g == one_rf);
    }
}

TEST_CASE("single-pattern operations enforce their precondition")
{
    const Alphabet fair = testing::fair_coin();
    CHECK_THROWS_AS(single_pgf(pat(fair, "HHT"), pat(fair, "HH"), fair), ValidationError);
    CHECK_THROWS_AS(single_expected(pat(fair, "HHT"), pat(fair, "HH"), fair), ValidationError);
}

TEST_CASE("build_system layout")
{
    const auto sys = build_system(testing::three_coin_race("HT"));
    REQUIRE(sys.coeffs.rows() == 4);
    CHECK(sys.coeffs(0, 0) == RationalFunc(one_minus_alpha()));
    for (std::size_t j = 1; j < 4; ++j) {
        CHECK(sys.coeffs(0, j) == one_rf);
        CHECK(sys.coeffs(j, 0) == RationalFunc(Rational(-1)));
    }
    CHECK(sys.rhs[0] == one_rf);
    CHECK(sys.rhs[2].eval(Rational(1)) == 4);  // A∗B_2 for A ending in HT

    // det 𝓐(1) = Σ_j det 𝓑^j(1) = 96
    const auto sys0 = build_system(testing::three_coin_race());
    CHECK(det_rf(sys0.coeffs).eval(Rational(1)) == 96);
}

TEST_CASE("build_system with one pattern reproduces the single-pattern pgf")
{
    const Alphabet fair = testing::fair_coin();
    for (const char* b : {"H", "THH", "HTHT"}) {
        const RaceProblem p{fair, std::nullopt, {pat(fair, b)}};
        const auto sys = build_system(p);
        const auto x = testing::solve_direct(sys.coeffs, sys.rhs);
        CHECK(x[1] == single_pgf(std::nullopt, pat(fair, b), fair));
        CHECK(x[0] == single_Q(std::nullopt, pat(fair, b), fair));
    }
}

TEST_CASE("three-pattern race: winning probabilities for every initial case")
{
    struct Case {
        std::optional<std::string_view> a;
        std::vector<Rational> p;
    };
    const std::vector<Case> cases = {
        {std::nullopt, rats({Rational(5, 12), Rational(1, 3), Rational(1, 4)})},
        {"H", rats({Rational(1, 6), Rational(1, 3), Rational(1, 2)})},
        {"T", rats({Rational(2, 3), Rational(1, 3), 0})},
        {"HHH", rats({0, 0, 1})},
        {"HHHHH", rats({0, 0, 1})},
        {"THT", rats({Rational(1, 3), Rational(2, 3), 0})},
        {"HT", rats({Rational(1, 3), Rational(2, 3), 0})},
        {"TTH", rats({Rational(2, 3), Rational(1, 3), 0})},
        {"TH", rats({Rational(2, 3), Rational(1, 3), 0})},
        {"TT", rats({Rational(2, 3), Rational(1, 3), 0})},
        {"HTT", rats({Rational(2, 3), Rational(1, 3), 0})},
        {"THH", rats({1, 0, 0})},
        {"TTTHH", rats({1, 0, 0})},
        {"HTH", rats({0, 1, 0})},
        {"HHT", rats({0, 0, 1})},
    };
    for (const auto& c : cases) {
        CAPTURE(c.a.value_or("(none)"));
        const auto sol = solve_race(testing::three_coin_race(c.a));
        CHECK(sol.win_probs == c.p);
    }
}

TEST_CASE("three-pattern race: intermediate determinant sums")
{
    const auto hh = solve_race(testing::three_coin_race("HHH"));
    CHECK(hh.at_one.sum_det_b_ones == 96);
    CHECK(hh.at_one.sum_det_b_k_ones == rats({0, 0, 96}));

    const auto ht = solve_race(testing::three_coin_race("HT"));
    CHECK(ht.at_one.sum_det_b_k_ones == rats({32, 64, 0}));

    const auto none = solve_race(testing::three_coin_race());
    CHECK(none.at_one.det_b == 496);
    CHECK(none.expected_tau == Rational(31, 6));
    CHECK(absorbing_solve(testing::three_coin_race()).expected_tau == Rational(31, 6));
}

TEST_CASE("initial word ending in a pattern stops at time zero")
{
    for (const char* a : {"THH", "HTH", "HHT", "TTHH"}) {
        const auto sol = solve_race(testing::three_coin_race(a));
        CHECK(sol.expected_tau == 0);
        CHECK(sol.g_total == one_rf);
        CHECK(sol.q_tau.is_zero());
    }
}

TEST_CASE("solve_race with one pattern agrees with the single-pattern forms")
{
    std::mt19937_64 rng(77);
    for (int i = 0; i < 60; ++i) {
        const auto p = testing::random_problem(rng, {4, 1, 6, 6});
        const auto sol = solve_race(p);
        CHECK(sol.g_total == single_pgf(p.initial, p.patterns[0], p.alphabet));
        CHECK(sol.q_tau == single_Q(p.initial, p.patterns[0], p.alphabet));
        CHECK(sol.expected_tau == single_expected(p.initial, p.patterns[0], p.alphabet));
        CHECK(sol.win_probs == rats({1}));
    }
}

TEST_CASE("structural invariants of solved races")
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 60; ++i) {
        const auto p = testing::random_problem(rng);
        const auto sol = solve_race(p);
        RationalFunc sum;
        Rational psum(0);
        for (std::size_t k = 0; k < p.m(); ++k) {
            sum += sol.g_per_pattern[k];
            psum += sol.win_probs[k];
            CHECK(sol.win_probs[k] >= 0);
            CHECK(sol.g_per_pattern[k].eval(Rational(1)) == sol.win_probs[k]);
        }
        CHECK(sum == sol.g_total);
        CHECK(RationalFunc(one_minus_alpha()) * sol.q_tau + sol.g_total == one_rf);
        CHECK(sol.g_total.eval(Rational(1)) == 1);
        CHECK(psum == 1);
        CHECK(sol.q_tau.eval(Rational(1)) == sol.expected_tau);
        const auto table = series(sol, 25);
        for (const auto& row : table.rows) {
            CHECK(row.total >= 0);
            for (const auto& x : row.per_pattern)
                CHECK(x >= 0);
        }
        CHECK(table.tail_mass >= 0);
    }
}

TEST_CASE("permuting the patterns permutes the per-pattern results")
{
    std::mt19937_64 rng(8);
    for (int i = 0; i < 30; ++i) {
        const auto p = testing::random_problem(rng);
        std::vector<std::size_t> perm(p.m());
        for (std::size_t k = 0; k < perm.size(); ++k)
            perm[k] = k;
        std::shuffle(perm.begin(), perm.end(), rng);
        RaceProblem q = p;
        for (std::size_t k = 0; k < perm.size(); ++k)
            q.patterns[k] = p.patterns[perm[k]];
        const auto a = solve_race(p), b = solve_race(q);
        CHECK(a.q_tau == b.q_tau);
        CHECK(a.g_total == b.g_total);
        CHECK(a.expected_tau == b.expected_tau);
        for (std::size_t k = 0; k < perm.size(); ++k) {
            CHECK(b.win_probs[k] == a.win_probs[perm[k]]);
            CHECK(b.g_per_pattern[k] == a.g_per_pattern[perm[k]]);
        }
    }
}

TEST_CASE("series extraction")
{
    const Alphabet fair = testing::fair_coin();
    const auto geo = series({fair, std::nullopt, {pat(fair, "H")}}, 5);
    CHECK(geo.rows[0].total == 0);
    for (std::size_t n = 1; n <= 5; ++n)
        CHECK(geo.rows[n].total == pow(Rational(1, 2), static_cast<long>(n)));
    CHECK(geo.tail_mass == Rational(1, 32));

    const auto done = series(testing::three_coin_race("HTH"), 4);
    CHECK(done.rows[0].per_pattern == rats({0, 1, 0}));
    for (std::size_t n = 1; n <= 4; ++n)
        CHECK(done.rows[n].total == 0);
    CHECK(done.tail_mass == 0);

    const auto race = series(testing::three_coin_race(), 40);
    CHECK(race == exact_distribution(testing::three_coin_race(), 40));

    CHECK_THROWS_AS(series_coefficients(RationalFunc(Polynomial{Rational(1)}, Polynomial{Rational(0), Rational(1)}), 3),
                    ZeroConstantDenominator);
}
