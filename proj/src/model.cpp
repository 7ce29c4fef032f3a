#include "patrace/model.hpp"

#include <algorithm>
#include <set>

namespace patrace {

Pattern Pattern::prefix(std::size_t k) const
{
    return Pattern{{letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(std::min(k, size()))}};
}

Pattern Pattern::suffix(std::size_t k) const
{
    return Pattern{{letters.end() - static_cast<std::ptrdiff_t>(std::min(k, size())), letters.end()}};
}

Pattern operator+(const Pattern& a, const Pattern& b)
{
    Pattern out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

Alphabet::Alphabet(std::vector<std::string> symbols, std::vector<Rational> probs)
    : symbols_(std::move(symbols)), probs_(std::move(probs))
{
    if (symbols_.empty())
        throw InvalidInput("alphabet must contain at least one symbol");
    if (symbols_.size() != probs_.size())
        throw InvalidInput("alphabet needs exactly one probability per symbol");
    std::set<std::string_view> seen;
    Rational total(0);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].empty())
            throw InvalidInput("alphabet symbols must be non-empty");
        if (!seen.insert(symbols_[i]).second)
            throw InvalidInput("duplicate symbol '" + symbols_[i] + "'");
        probs_[i].canonicalize();
        if (probs_[i] <= 0)
            throw InvalidInput("probability of '" + symbols_[i] + "' must be positive");
        total += probs_[i];
    }
    if (total != 1)
        throw InvalidInput("probabilities sum to " + to_string(total) + ", expected 1");
}

std::optional<Letter> Alphabet::index_of(std::string_view symbol) const
{
    auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
    if (it == symbols_.end())
        return std::nullopt;
    return static_cast<Letter>(it - symbols_.begin());
}

bool Alphabet::single_char() const
{
    return std::all_of(symbols_.begin(), symbols_.end(), [](const auto& s) { return s.size() == 1; });
}

Pattern Alphabet::parse(std::string_view word) const
{
    if (!single_char())
        throw ParseError("string shorthand needs single-character symbols; use a symbol list");
    if (word.empty())
        throw ParseError("empty pattern");
    Pattern p;
    for (char c : word) {
        auto idx = index_of(std::string_view(&c, 1));
        if (!idx)
            throw ParseError(std::string("unknown symbol '") + c + "'");
        p.letters.push_back(*idx);
    }
    return p;
}

Pattern Alphabet::parse(const std::vector<std::string>& tokens) const
{
    if (tokens.empty())
        throw ParseError("empty pattern");
    Pattern p;
    for (const auto& t : tokens) {
        auto idx = index_of(t);
        if (!idx)
            throw ParseError("unknown symbol '" + t + "'");
        p.letters.push_back(*idx);
    }
    return p;
}

std::string Alphabet::format(const Pattern& p) const
{
    const bool compact = single_char();
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!compact && i > 0)
            out += ',';
        out += symbol(p[i]);
    }
    return out;
}

bool Alphabet::contains(const Pattern& p) const
{
    return std::all_of(p.letters.begin(), p.letters.end(), [&](Letter c) { return c < size(); });
}

Alphabet make_alphabet(const std::vector<std::pair<std::string, std::string>>& entries)
{
    std::vector<std::string> symbols;
    std::vector<Rational> probs;
    for (const auto& [sym, prob] : entries) {
        symbols.push_back(sym);
        probs.push_back(parse_rational(prob));
    }
    return Alphabet(std::move(symbols), std::move(probs));
}

Rational pattern_prob(const Pattern& p, const Alphabet& alphabet)
{
    Rational pr(1);
    for (Letter c : p.letters)
        pr *= alphabet.prob(c);
    return pr;
}

bool is_subpattern(const Pattern& needle, const Pattern& haystack)
{
    return std::search(haystack.letters.begin(), haystack.letters.end(), needle.letters.begin(),
                       needle.letters.end()) != haystack.letters.end();
}

namespace {

std::string label(std::size_t i)
{
    return "B" + std::to_string(i + 1);
}

}  // namespace

ValidationReport validate_race(const RaceProblem& problem, const Limits& limits)
{
    ValidationReport report;
    auto add = [&](Violation::Kind kind, std::optional<std::size_t> a, std::optional<std::size_t> b,
                   std::string msg) { report.violations.push_back({kind, a, b, std::move(msg)}); };

    const auto& pats = problem.patterns;
    if (pats.empty())
        add(Violation::Kind::NoPatterns, {}, {}, "at least one pattern is required");
    if (pats.size() > limits.max_patterns)
        add(Violation::Kind::TooManyPatterns, {}, {},
            std::to_string(pats.size()) + " patterns exceed the cap of " + std::to_string(limits.max_patterns));

    std::vector<bool> usable(pats.size(), true);
    for (std::size_t i = 0; i < pats.size(); ++i) {
        if (pats[i].empty()) {
            add(Violation::Kind::EmptyPattern, i, {}, label(i) + " is empty");
            usable[i] = false;
        } else if (!problem.alphabet.contains(pats[i])) {
            add(Violation::Kind::LetterOutOfRange, i, {}, label(i) + " uses a letter outside the alphabet");
            usable[i] = false;
        }
        if (pats[i].size() > limits.max_pattern_length)
            add(Violation::Kind::PatternTooLong, i, {},
                label(i) + " has length " + std::to_string(pats[i].size()) + ", cap is " +
                    std::to_string(limits.max_pattern_length));
    }

    for (std::size_t i = 0; i < pats.size(); ++i)
        for (std::size_t j = 0; j < pats.size(); ++j) {
            if (i == j || !usable[i] || !usable[j])
                continue;
            // Report identical patterns once.
            if (pats[i] == pats[j] && j < i)
                continue;
            if (is_subpattern(pats[i], pats[j]))
                add(Violation::Kind::PatternInPattern, i, j, label(i) + " subpattern of " + label(j));
        }

    if (problem.initial) {
        const Pattern& a = *problem.initial;
        if (a.empty()) {
            add(Violation::Kind::EmptyInitial, {}, {}, "initial pattern is present but empty");
        } else if (!problem.alphabet.contains(a)) {
            add(Violation::Kind::LetterOutOfRange, {}, {}, "initial pattern uses a letter outside the alphabet");
        } else {
            const Pattern head = a.prefix(a.size() - 1);
            for (std::size_t i = 0; i < pats.size(); ++i)
                if (usable[i] && is_subpattern(pats[i], head))
                    add(Violation::Kind::PatternInInitial, i, {},
                        label(i) + " occurs before the last letter of the initial pattern");
        }
    }
    return report;
}

namespace {

std::string summarize(const ValidationReport& report)
{
    std::string msg = "invalid race problem";
    for (const auto& v : report.violations)
        msg += "; " + v.message;
    return msg;
}

}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : InvalidInput(summarize(report)), report_(std::move(report))
{
}

void require_valid(const RaceProblem& problem, const Limits& limits)
{
    auto report = validate_race(problem, limits);
    if (!report.ok())
        throw ValidationError(std::move(report));
}

std::string_view kind_name(Violation::Kind kind)
{
    switch (kind) {
    case Violation::Kind::NoPatterns: return "no_patterns";
    case Violation::Kind::EmptyPattern: return "empty_pattern";
    case Violation::Kind::EmptyInitial: return "empty_initial";
    case Violation::Kind::LetterOutOfRange: return "letter_out_of_range";
    case Violation::Kind::PatternInPattern: return "pattern_in_pattern";
    case Violation::Kind::PatternInInitial: return "pattern_in_initial";
    case Violation::Kind::PatternTooLong: return "pattern_too_long";
    case Violation::Kind::TooManyPatterns: return "too_many_patterns";
    }
    return "unknown";
}

}  // namespace patrace
