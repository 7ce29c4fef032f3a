#pragma once

/**
 * @file correlation.hpp
 * @brief Overlap indicators and correlation functions between patterns.
 *
 * The correlation of A with B is
 *
 *     (A∗B)(α) = Σ_{k=1}^{min(|A|,|B|)} [A^(k) = B_(k)] / (Pr(B_(k)) · α^k)
 *
 * where A^(k) is the last k letters of A and B_(k) the first k letters of B.
 * At α = 1 with a fair coin this is Conway's leading number.
 */

#include "patrace/laurent_poly.hpp"
#include "patrace/matrix.hpp"
#include "patrace/model.hpp"

#include <vector>

namespace patrace {

/// 1 iff the last k letters of a equal the first k letters of b.
/// Throws std::out_of_range unless 1 ≤ k ≤ min(|a|, |b|).
int overlap_indicator(const Pattern& a, const Pattern& b, std::size_t k);

/// (a∗b)(α) as an exact Laurent polynomial.
LaurentPoly correlation(const Pattern& a, const Pattern& b, const Alphabet& alphabet);

/// entry(i, j) = (B_j ∗ B_i)(α): row i is the pattern being bet on, column j
/// the pattern that was observed.
class CorrMatrix {
public:
    CorrMatrix() = default;
    explicit CorrMatrix(Matrix<LaurentPoly> entries) : entries_(std::move(entries)) {}

    std::size_t m() const { return entries_.rows(); }
    const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const Matrix<LaurentPoly>& entries() const { return entries_; }

    Matrix<Rational> eval(const Rational& alpha) const;
    Matrix<RationalFunc> as_rational_funcs() const;

private:
    Matrix<LaurentPoly> entries_;
};

CorrMatrix correlation_matrix(const RaceProblem& problem);

/// ((A∗B_i))_i; all zero when there is no initial pattern.
std::vector<LaurentPoly> initial_correlation_vector(const RaceProblem& problem);

}  // namespace patrace
