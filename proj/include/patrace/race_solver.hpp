#pragma once

/**
 * @file race_solver.hpp
 * @brief Closed-form generating functions for pattern races.
 *
 * Let τ be the first time one of B_1..B_m appears after the initial word A,
 * g^k(α) = E(α^τ; τ = τ_k), g = Σ g^k and Q(α) = (1 − g(α))/(1 − α). The
 * gambling-team martingales give, for each i,
 *
 *     (1 − α) Q + Σ_j g^j            = 1
 *     −Q + Σ_j (B_j∗B_i)(α) g^j      = (A∗B_i)(α)
 *
 * With 𝓑 = ((B_j∗B_i)), 𝓑^j its j-th column replaced by ones, 𝓑_k its k-th
 * column replaced by ((A∗B_i))_i and 𝓑_k^j = (𝓑_k)^j, Cramér's rule reduces to
 *
 *     D   = (1 − α) det 𝓑 + Σ_j det 𝓑^j
 *     Q   = (det 𝓑 − Σ_k det 𝓑_k) / D
 *     g^k = ((1 − α) det 𝓑_k + Σ_j det 𝓑_k^j) / D
 *
 * When every A∗B_i vanishes (in particular A = ∅) this collapses to
 * Q = det 𝓑 / D and g^k = det 𝓑^k / D. Winning probabilities and the mean
 * are the same ratios with α = 1 substituted into the matrices.
 */

#include "patrace/correlation.hpp"
#include "patrace/distribution.hpp"
#include "patrace/matrix.hpp"
#include "patrace/model.hpp"
#include "patrace/rational_func.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace patrace {

/// Σ_j det 𝓑^j(1) vanished, or the system denominator is identically zero.
class DegenerateCollection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A generating function whose series has no α^0 term to divide by.
class ZeroConstantDenominator : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Single pattern B with optional initial word A.

/// E(α^τ) = (1 + (1−α)(A∗B)) / (1 + (1−α)(B∗B)).
RationalFunc single_pgf(const std::optional<Pattern>& initial, const Pattern& b, const Alphabet& alphabet);
/// Q(α) = ((B∗B) − (A∗B)) / (1 + (1−α)(B∗B)).
RationalFunc single_Q(const std::optional<Pattern>& initial, const Pattern& b, const Alphabet& alphabet);
/// Eτ = (B∗B)(1) − (A∗B)(1).
Rational single_expected(const std::optional<Pattern>& initial, const Pattern& b, const Alphabet& alphabet);

/// Coefficient matrix 𝓐(α) and right-hand side of the (m+1)-unknown system
/// in (Q, g^1, .., g^m).
struct LinearSystem {
    Matrix<RationalFunc> coeffs;
    std::vector<RationalFunc> rhs;
};

LinearSystem build_system(const RaceProblem& problem);

/// Plain rational determinants at α = 1.
struct DeterminantsAtOne {
    Rational det_b;                      // det 𝓑(1)
    Rational sum_det_b_ones;             // Σ_j det 𝓑^j(1)
    std::vector<Rational> det_b_k;       // det 𝓑_k(1)
    std::vector<Rational> sum_det_b_k_ones;  // Σ_j det 𝓑_k^j(1)
};

struct RaceSolution {
    RationalFunc q_tau;
    RationalFunc g_total;
    std::vector<RationalFunc> g_per_pattern;
    std::vector<Rational> win_probs;
    Rational expected_tau;
    DeterminantsAtOne at_one;
};

RaceSolution solve_race(const RaceProblem& problem, const Limits& limits = {});

/// First n+1 power-series coefficients of f around α = 0.
std::vector<Rational> series_coefficients(const RationalFunc& f, std::size_t n);

SeriesTable series(const RaceSolution& solution, std::size_t horizon);
SeriesTable series(const RaceProblem& problem, std::size_t horizon);

}  // namespace patrace
