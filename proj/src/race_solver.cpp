#include "patrace/race_solver.hpp"

#include <algorithm>

namespace patrace {

namespace {

void require_single(const std::optional<Pattern>& initial, const Pattern& b, const Alphabet& alphabet)
{
    require_valid(RaceProblem{alphabet, initial, {b}});
}

long clearing_shift(std::initializer_list<const LaurentPoly*> parts)
{
    long shift = 0;
    for (const auto* p : parts)
        shift = std::max(shift, -p->min_exponent());
    return shift;
}

RationalFunc laurent_ratio(const LaurentPoly& num, const LaurentPoly& den)
{
    const long shift = clearing_shift({&num, &den});
    return RationalFunc(num.cleared(shift), den.cleared(shift));
}

}  // namespace

RationalFunc single_pgf(const std::optional<Pattern>& initial, const Pattern& b, const Alphabet& alphabet)
{
    require_single(initial, b, alphabet);
    const LaurentPoly one(Rational(1));
    const LaurentPoly ab = initial ? correlation(*initial, b, alphabet) : LaurentPoly();
    const LaurentPoly bb = correlation(b, b, alphabet);
    return laurent_ratio(one + LaurentPoly::one_minus_alpha() * ab, one + LaurentPoly::one_minus_alpha() * bb);
}

RationalFunc single_Q(const std::optional<Pattern>& initial, const Pattern& b, const Alphabet& alphabet)
{
    require_single(initial, b, alphabet);
    const LaurentPoly ab = initial ? correlation(*initial, b, alphabet) : LaurentPoly();
    const LaurentPoly bb = correlation(b, b, alphabet);
    return laurent_ratio(bb - ab, LaurentPoly(Rational(1)) + LaurentPoly::one_minus_alpha() * bb);
}

Rational single_expected(const std::optional<Pattern>& initial, const Pattern& b, const Alphabet& alphabet)
{
    require_single(initial, b, alphabet);
    const Rational bb = correlation(b, b, alphabet).eval(Rational(1));
    const Rational ab = initial ? correlation(*initial, b, alphabet).eval(Rational(1)) : Rational(0);
    return bb - ab;
}

LinearSystem build_system(const RaceProblem& problem)
{
    require_valid(problem);
    const std::size_t m = problem.m();
    const auto corr = correlation_matrix(problem).as_rational_funcs();
    const auto init = initial_correlation_vector(problem);

    LinearSystem sys{Matrix<RationalFunc>(m + 1, m + 1), std::vector<RationalFunc>(m + 1)};
    sys.coeffs(0, 0) = RationalFunc(one_minus_alpha());
    sys.rhs[0] = RationalFunc(Rational(1));
    for (std::size_t j = 1; j <= m; ++j)
        sys.coeffs(0, j) = RationalFunc(Rational(1));
    for (std::size_t i = 1; i <= m; ++i) {
        sys.coeffs(i, 0) = RationalFunc(Rational(-1));
        for (std::size_t j = 1; j <= m; ++j)
            sys.coeffs(i, j) = corr(i - 1, j - 1);
        sys.rhs[i] = RationalFunc(init[i - 1]);
    }
    return sys;
}

namespace {

/// Shared Cramér bookkeeping over any scalar with a determinant routine.
template <typename T, typename Det>
struct CramerTerms {
    T det_b;
    T sum_det_b_ones;
    std::vector<T> det_b_k;
    std::vector<T> sum_det_b_k_ones;
    bool reduced = false;  // every A∗B_i vanished

    CramerTerms(const Matrix<T>& b, const std::vector<T>& init, bool init_is_zero, Det det)
    {
        const std::size_t m = b.rows();
        const std::vector<T> ones(m, T(Rational(1)));
        det_b = det(b);

        std::vector<T> det_b_ones(m);
        sum_det_b_ones = T(Rational(0));
        for (std::size_t j = 0; j < m; ++j) {
            det_b_ones[j] = det(b.with_column(j, ones));
            sum_det_b_ones += det_b_ones[j];
        }

        reduced = init_is_zero;
        det_b_k.assign(m, T(Rational(0)));
        sum_det_b_k_ones.assign(m, T(Rational(0)));
        if (reduced) {
            // 𝓑_k has a zero column, so only 𝓑_k^k = 𝓑^k survives.
            sum_det_b_k_ones = det_b_ones;
            return;
        }
        for (std::size_t k = 0; k < m; ++k) {
            const Matrix<T> bk = b.with_column(k, init);
            det_b_k[k] = det(bk);
            for (std::size_t j = 0; j < m; ++j)
                sum_det_b_k_ones[k] += (j == k) ? det_b_ones[k] : det(bk.with_column(j, ones));
        }
    }
};

}  // namespace

RaceSolution solve_race(const RaceProblem& problem, const Limits& limits)
{
    require_valid(problem, limits);
    const std::size_t m = problem.m();
    const CorrMatrix corr = correlation_matrix(problem);
    const auto init = initial_correlation_vector(problem);
    const bool init_is_zero = std::all_of(init.begin(), init.end(), [](const auto& p) { return p.is_zero(); });

    // α = 1 by direct substitution into the matrices.
    std::vector<Rational> init_at_one(m);
    for (std::size_t i = 0; i < m; ++i)
        init_at_one[i] = init[i].eval(Rational(1));
    const CramerTerms<Rational, Rational (*)(Matrix<Rational>)> one(corr.eval(Rational(1)), init_at_one,
                                                                      init_is_zero, &det);
    if (one.sum_det_b_ones == 0)
        throw DegenerateCollection("sum of det B^j(1) vanishes; winning probabilities are undefined");

    RaceSolution sol;
    sol.at_one = {one.det_b, one.sum_det_b_ones, one.det_b_k, one.sum_det_b_k_ones};
    sol.win_probs.resize(m);
    Rational numer = one.det_b;
    for (std::size_t k = 0; k < m; ++k) {
        sol.win_probs[k] = one.sum_det_b_k_ones[k] / one.sum_det_b_ones;
        numer -= one.det_b_k[k];
    }
    sol.expected_tau = numer / one.sum_det_b_ones;

    std::vector<RationalFunc> init_rf(m);
    for (std::size_t i = 0; i < m; ++i)
        init_rf[i] = RationalFunc(init[i]);
    const CramerTerms<RationalFunc, RationalFunc (*)(const Matrix<RationalFunc>&)> fn(
        corr.as_rational_funcs(), init_rf, init_is_zero, &det_rf);

    const RationalFunc oma(one_minus_alpha());
    const RationalFunc denom = oma * fn.det_b + fn.sum_det_b_ones;
    if (denom.is_zero())
        throw DegenerateCollection("system determinant vanishes identically");

    RationalFunc q_num = fn.det_b;
    sol.g_per_pattern.resize(m);
    sol.g_total = RationalFunc();
    for (std::size_t k = 0; k < m; ++k) {
        q_num -= fn.det_b_k[k];
        sol.g_per_pattern[k] = (oma * fn.det_b_k[k] + fn.sum_det_b_k_ones[k]) / denom;
        sol.g_total += sol.g_per_pattern[k];
    }
    sol.q_tau = q_num / denom;
    return sol;
}

std::vector<Rational> series_coefficients(const RationalFunc& f, std::size_t n)
{
    const auto& num = f.num();
    const auto& den = f.den();
    if (den[0] == 0)
        throw ZeroConstantDenominator("denominator has zero constant term");
    const Rational inv = Rational(1) / den[0];
    const auto dd = static_cast<std::size_t>(den.degree());
    std::vector<Rational> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        Rational acc = num[i];
        for (std::size_t j = 1; j <= std::min(i, dd); ++j)
            acc -= den.coeffs()[j] * c[i - j];
        c[i] = acc * inv;
    }
    return c;
}

SeriesTable series(const RaceSolution& solution, std::size_t horizon)
{
    const std::size_t m = solution.g_per_pattern.size();
    std::vector<std::vector<Rational>> per(m);
    for (std::size_t k = 0; k < m; ++k)
        per[k] = series_coefficients(solution.g_per_pattern[k], horizon);
    const auto total = series_coefficients(solution.g_total, horizon);

    SeriesTable table;
    table.horizon = horizon;
    table.rows.resize(horizon + 1);
    Rational mass(0);
    for (std::size_t n = 0; n <= horizon; ++n) {
        auto& row = table.rows[n];
        row.per_pattern.resize(m);
        Rational sum(0);
        for (std::size_t k = 0; k < m; ++k) {
            row.per_pattern[k] = per[k][n];
            sum += per[k][n];
        }
        if (sum != total[n])
            throw std::logic_error("series: per-pattern coefficients disagree with the total");
        row.total = total[n];
        mass += total[n];
    }
    table.tail_mass = Rational(1) - mass;
    return table;
}

SeriesTable series(const RaceProblem& problem, std::size_t horizon)
{
    return series(solve_race(problem), horizon);
}

}  // namespace patrace
