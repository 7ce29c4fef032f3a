#pragma once

/**
 * @file io.hpp
 * @brief JSON problem and result files.
 *
 * Problem file:
 *
 *     {
 *       "alphabet": [{"symbol": "H", "prob": "1/2"}, {"symbol": "T", "prob": "1/2"}],
 *       "initial": "HT",                 // optional; string shorthand or ["H","T"]
 *       "patterns": ["THH", "HTH", "HHT"]
 *     }
 *
 * Rationals cross the file boundary as strings in both directions; rational
 * functions are {"num": [...], "den": [...]} with ascending coefficients.
 */

#include "patrace/distribution.hpp"
#include "patrace/model.hpp"
#include "patrace/oracle.hpp"
#include "patrace/race_solver.hpp"
#include "patrace/rational_func.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace patrace::io {

using nlohmann::json;

inline constexpr std::string_view tool_name = "patrace";
inline constexpr std::string_view tool_version = "0.1.0";

struct Presentation {
    int digits = 12;
};

/// Reads PATRACE_PRECISION (significant digits), falling back to 12.
Presentation presentation_from_env();

/// Malformed JSON or shape errors raise ParseError; rule violations in the
/// alphabet raise InvalidInput. The race itself is not validated here.
RaceProblem parse_problem(std::string_view text);
Alphabet parse_alphabet(const json& doc);
/// Shorthand string or symbol array; "" and [] mean no pattern.
std::optional<Pattern> parse_pattern(const json& value, const Alphabet& alphabet);
/// Command-line form: shorthand, or comma-separated symbols.
Pattern parse_pattern_arg(std::string_view text, const Alphabet& alphabet);

/// FNV-1a 64 of the raw input, hex encoded.
std::string digest(std::string_view bytes);

json to_json(const Rational& r);
Rational rational_from_json(const json& value);
json to_json(const RationalFunc& f);
RationalFunc rational_func_from_json(const json& value);
json to_json(const LaurentPoly& p);
json to_json(const DistributionTable& table, const Presentation& pres);
DistributionTable distribution_from_json(const json& value);

json validation_to_json(const ValidationReport& report);

json metadata(std::string_view input);

/// ResultFile body for a solved race.
json race_to_json(const RaceProblem& problem, const RaceSolution& solution, const Presentation& pres);

}  // namespace patrace::io
