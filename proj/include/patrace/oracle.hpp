#pragma once

/**
 * @file oracle.hpp
 * @brief Independent reference engines for pattern races.
 *
 * Nothing here touches correlation determinants. The prefix automaton
 * tracks the longest suffix of the history that is a proper prefix of some
 * pattern; exact DP and absorbing-chain solves run over it, and the Monte
 * Carlo simulators drive it with sampled letters.
 *
 * τ counts letters generated after the initial word A. Feeding A's last
 * letter is step 0, so a pattern ending exactly at A's end gives τ = 0.
 */

#include "patrace/distribution.hpp"
#include "patrace/model.hpp"
#include "patrace/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace patrace {

/// Broken internal invariant (never expected for validated input).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class PrefixAutomaton {
public:
    using State = std::size_t;

    /// Live states are indexed 0..live_count()-1 (0 is the empty prefix);
    /// accept state for pattern k is live_count() + k.
    std::size_t live_count() const { return prefixes_.size(); }
    std::size_t pattern_count() const { return pattern_count_; }
    std::size_t alphabet_size() const { return alphabet_size_; }
    bool is_accept(State s) const { return s >= live_count(); }
    std::size_t accepted_pattern(State s) const { return s - live_count(); }
    const Pattern& prefix(State s) const { return prefixes_.at(s); }

    State start() const { return start_; }
    State next(State s, Letter c) const { return next_.at(s).at(c); }

private:
    friend PrefixAutomaton build_automaton(const RaceProblem& problem);

    std::vector<Pattern> prefixes_;
    std::vector<std::vector<State>> next_;
    std::size_t pattern_count_ = 0;
    std::size_t alphabet_size_ = 0;
    State start_ = 0;
};

/// Throws InternalError if a pattern would fire before A's last letter or two
/// patterns would complete on the same transition.
PrefixAutomaton build_automaton(const RaceProblem& problem);

/// Exact per-step distribution by evolving the live mass vector; conservation
/// of total mass is checked at every step.
DistributionTable exact_distribution(const RaceProblem& problem, std::size_t horizon);

struct AbsorbingResult {
    std::vector<Rational> win_probs;
    Rational expected_tau;
};

/// First-step analysis on the automaton's transient states.
AbsorbingResult absorbing_solve(const RaceProblem& problem);

struct MonteCarloOptions {
    std::uint64_t reps = 100000;
    std::uint64_t seed = 1;
    std::uint64_t max_steps = 1000000;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct MonteCarloReport {
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 0;
    std::vector<std::uint64_t> wins;
    std::uint64_t truncated = 0;
    Integer sum_tau;     // over completed replicates
    Integer sum_tau_sq;
    std::map<std::uint64_t, std::uint64_t> histogram;  // τ → count

    double win_freq(std::size_t k) const;
    /// Binomial standard deviation of win_freq(k) under probability p.
    double win_stddev(const Rational& p) const;
    double mean_tau() const;
    double tau_std_error() const;

    friend bool operator==(const MonteCarloReport&, const MonteCarloReport&) = default;
};

/// Each replicate draws from its own counter-based stream keyed by
/// (seed, replicate index); counts are merged as integers, so the report does
/// not depend on how replicates are split across threads.
MonteCarloReport monte_carlo(const RaceProblem& problem, const MonteCarloOptions& options);

/// Casino net gain after `history` when a gambling team bets on b with
/// discount α:  (1 − α^n)/(1 − α) − α^n (history ∗ b)(α),  n = |history|.
Rational casino_net_gain(const Pattern& history, const Pattern& b, const Alphabet& alphabet,
                         const Rational& alpha);

struct MartingaleOptions {
    std::uint64_t reps = 10000;
    std::uint64_t seed = 1;
    std::uint64_t max_steps = 1000000;
};

struct MartingaleReport {
    Rational alpha;
    Rational y0;            // exact X_l
    double mean_y_tau = 0;  // over completed paths
    double std_error = 0;
    double z_score = 0;
    double bound = 0;       // 1/((1−α) Pr(B))
    double max_abs_gain = 0;
    std::uint64_t reps = 0;
    std::uint64_t truncated = 0;
    std::uint64_t violations = 0;
    struct Location {
        std::uint64_t replicate;
        std::uint64_t step;
    };
    std::optional<Location> first_violation;
};

/// Simulates the casino's net gain X_n along sample paths up to τ and checks
/// optional stopping (E Y_τ = Y_0) plus the pathwise bound |X_n| ≤ bound.
/// Throws std::invalid_argument unless 0 < α < 1 and reps ≥ 1.
MartingaleReport martingale_check(const Pattern& b, const std::optional<Pattern>& initial, const Alphabet& alphabet,
                                  const Rational& alpha, const MartingaleOptions& options);

}  // namespace patrace
