#include "patrace/correlation.hpp"

#include <algorithm>
#include <stdexcept>

namespace patrace {

int overlap_indicator(const Pattern& a, const Pattern& b, std::size_t k)
{
    if (k < 1 || k > std::min(a.size(), b.size()))
        throw std::out_of_range("overlap length out of range");
    return std::equal(a.letters.end() - static_cast<std::ptrdiff_t>(k), a.letters.end(), b.letters.begin()) ? 1 : 0;
}

LaurentPoly correlation(const Pattern& a, const Pattern& b, const Alphabet& alphabet)
{
    LaurentPoly::TermMap terms;
    Rational prefix_prob(1);
    const std::size_t top = std::min(a.size(), b.size());
    for (std::size_t k = 1; k <= top; ++k) {
        prefix_prob *= alphabet.prob(b[k - 1]);
        if (overlap_indicator(a, b, k))
            terms.emplace(-static_cast<long>(k), Rational(1) / prefix_prob);
    }
    return LaurentPoly(std::move(terms));
}

Matrix<Rational> CorrMatrix::eval(const Rational& alpha) const
{
    return entries_.map([&](const LaurentPoly& p) { return p.eval(alpha); });
}

Matrix<RationalFunc> CorrMatrix::as_rational_funcs() const
{
    return entries_.map([](const LaurentPoly& p) { return RationalFunc(p); });
}

CorrMatrix correlation_matrix(const RaceProblem& problem)
{
    const std::size_t m = problem.m();
    Matrix<LaurentPoly> entries(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            entries(i, j) = correlation(problem.patterns[j], problem.patterns[i], problem.alphabet);
    return CorrMatrix(std::move(entries));
}

std::vector<LaurentPoly> initial_correlation_vector(const RaceProblem& problem)
{
    std::vector<LaurentPoly> out(problem.m());
    if (!problem.initial)
        return out;
    for (std::size_t i = 0; i < problem.m(); ++i)
        out[i] = correlation(*problem.initial, problem.patterns[i], problem.alphabet);
    return out;
}

}  // namespace patrace
