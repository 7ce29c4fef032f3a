#pragma once

/**
 * @file model.hpp
 * @brief Alphabets, patterns and race problems.
 *
 * A race problem is an i.i.d. letter source (the alphabet with its letter
 * probabilities), an optional initial word A that is already known when
 * observation starts, and competing patterns B_1..B_m. The stopping time τ
 * counts letters generated after A; τ = 0 means a pattern completes exactly
 * at A's last letter.
 */

#include "patrace/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace patrace {

using Letter = std::uint32_t;

/// Input that parses but breaks a domain rule (bad alphabet, invalid race).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Pattern {
    std::vector<Letter> letters;

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    Letter operator[](std::size_t i) const { return letters[i]; }

    /// First k letters (B_(k)).
    Pattern prefix(std::size_t k) const;
    /// Last k letters (A^(k)).
    Pattern suffix(std::size_t k) const;

    friend Pattern operator+(const Pattern& a, const Pattern& b);
    friend bool operator==(const Pattern&, const Pattern&) = default;
    friend auto operator<=>(const Pattern&, const Pattern&) = default;
};

class Alphabet {
public:
    /// Validates: non-empty distinct symbols, positive probabilities summing to 1.
    Alphabet(std::vector<std::string> symbols, std::vector<Rational> probs);

    std::size_t size() const { return symbols_.size(); }
    const std::string& symbol(Letter i) const { return symbols_.at(i); }
    const Rational& prob(Letter i) const { return probs_.at(i); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    const std::vector<Rational>& probs() const { return probs_; }
    std::optional<Letter> index_of(std::string_view symbol) const;

    /// True when every symbol is a single character, enabling string shorthand.
    bool single_char() const;

    /// Shorthand "THH"; requires single_char().
    Pattern parse(std::string_view word) const;
    Pattern parse(const std::vector<std::string>& tokens) const;
    /// Concatenated symbols for single-char alphabets, else comma-separated.
    std::string format(const Pattern& p) const;

    bool contains(const Pattern& p) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> symbols_;
    std::vector<Rational> probs_;
};

/// Builds an alphabet from (symbol, "p/q") entries. Malformed rationals raise
/// ParseError; rule violations raise InvalidInput.
Alphabet make_alphabet(const std::vector<std::pair<std::string, std::string>>& entries);

/// Pr(P) = product of the letter probabilities.
Rational pattern_prob(const Pattern& p, const Alphabet& alphabet);

/// True iff `needle` occurs as a contiguous run in `haystack`.
bool is_subpattern(const Pattern& needle, const Pattern& haystack);

struct RaceProblem {
    Alphabet alphabet;
    std::optional<Pattern> initial;  // A; nullopt is A = ∅
    std::vector<Pattern> patterns;   // B_1..B_m

    std::size_t m() const { return patterns.size(); }
    bool has_initial() const { return initial.has_value(); }
};

struct Limits {
    std::size_t max_pattern_length = 64;
    std::size_t max_patterns = 16;
};

struct Violation {
    enum class Kind {
        NoPatterns,
        EmptyPattern,
        EmptyInitial,
        LetterOutOfRange,
        PatternInPattern,   // B_first ⊂ B_second
        PatternInInitial,   // B_first ⊂ a_1..a_{l-1}
        PatternTooLong,
        TooManyPatterns,
    };
    Kind kind;
    std::optional<std::size_t> first;   // 0-based pattern index
    std::optional<std::size_t> second;  // 0-based pattern index
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Reports every violated constraint rather than stopping at the first one.
ValidationReport validate_race(const RaceProblem& problem, const Limits& limits = {});

class ValidationError : public InvalidInput {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Throws ValidationError when validate_race rejects the problem.
void require_valid(const RaceProblem& problem, const Limits& limits = {});

std::string_view kind_name(Violation::Kind kind);

}  // namespace patrace
