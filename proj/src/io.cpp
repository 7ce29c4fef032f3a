#include "patrace/io.hpp"

#include "patrace/correlation.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>

namespace patrace::io {

Presentation presentation_from_env()
{
    Presentation pres;
    if (const char* env = std::getenv("PATRACE_PRECISION")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1000)
            pres.digits = static_cast<int>(v);
    }
    return pres;
}

namespace {

const json& require(const json& obj, const char* key)
{
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError(std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::vector<std::string> split_commas(std::string_view text)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.emplace_back(text.substr(start, comma - start));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

Alphabet parse_alphabet(const json& doc)
{
    const json& entries = require(doc, "alphabet");
    if (!entries.is_array())
        throw ParseError("'alphabet' must be an array");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& e : entries) {
        const json& sym = require(e, "symbol");
        const json& prob = require(e, "prob");
        if (!sym.is_string())
            throw ParseError("alphabet symbol must be a string");
        if (!prob.is_string())
            throw ParseError("probability of '" + sym.get<std::string>() + "' must be a rational string");
        pairs.emplace_back(sym.get<std::string>(), prob.get<std::string>());
    }
    return make_alphabet(pairs);
}

std::optional<Pattern> parse_pattern(const json& value, const Alphabet& alphabet)
{
    if (value.is_null())
        return std::nullopt;
    if (value.is_string()) {
        const auto s = value.get<std::string>();
        if (s.empty())
            return std::nullopt;
        return alphabet.parse(s);
    }
    if (value.is_array()) {
        if (value.empty())
            return std::nullopt;
        std::vector<std::string> tokens;
        for (const auto& t : value) {
            if (!t.is_string())
                throw ParseError("pattern symbols must be strings");
            tokens.push_back(t.get<std::string>());
        }
        return alphabet.parse(tokens);
    }
    throw ParseError("pattern must be a string or an array of symbols");
}

Pattern parse_pattern_arg(std::string_view text, const Alphabet& alphabet)
{
    if (text.find(',') != std::string_view::npos || !alphabet.single_char())
        return alphabet.parse(split_commas(text));
    return alphabet.parse(text);
}

RaceProblem parse_problem(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("problem file must be a JSON object");

    RaceProblem problem{parse_alphabet(doc), std::nullopt, {}};
    if (doc.contains("initial"))
        problem.initial = parse_pattern(doc.at("initial"), problem.alphabet);

    const json& pats = require(doc, "patterns");
    if (!pats.is_array())
        throw ParseError("'patterns' must be an array");
    for (const auto& p : pats) {
        auto parsed = parse_pattern(p, problem.alphabet);
        if (!parsed)
            throw ParseError("empty pattern in 'patterns'");
        problem.patterns.push_back(std::move(*parsed));
    }
    return problem;
}

std::string digest(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json to_json(const Rational& r)
{
    return to_string(r);
}

Rational rational_from_json(const json& value)
{
    if (!value.is_string())
        throw ParseError("rational values must be strings");
    return parse_rational(value.get<std::string>());
}

namespace {

json coeffs_to_json(const Polynomial& p)
{
    json arr = json::array();
    for (const auto& c : p.coeffs())
        arr.push_back(to_string(c));
    return arr;
}

Polynomial coeffs_from_json(const json& arr)
{
    if (!arr.is_array())
        throw ParseError("polynomial coefficients must be an array");
    std::vector<Rational> c;
    for (const auto& v : arr)
        c.push_back(rational_from_json(v));
    return Polynomial(std::move(c));
}

json decimals(const std::vector<Rational>& xs, const Presentation& pres)
{
    json arr = json::array();
    for (const auto& x : xs)
        arr.push_back(to_decimal(x, pres.digits));
    return arr;
}

json exacts(const std::vector<Rational>& xs)
{
    json arr = json::array();
    for (const auto& x : xs)
        arr.push_back(to_string(x));
    return arr;
}

}  // namespace

json to_json(const RationalFunc& f)
{
    return json{{"num", coeffs_to_json(f.num())}, {"den", coeffs_to_json(f.den())}};
}

RationalFunc rational_func_from_json(const json& value)
{
    return RationalFunc(coeffs_from_json(require(value, "num")), coeffs_from_json(require(value, "den")));
}

json to_json(const LaurentPoly& p)
{
    json terms = json::object();
    for (const auto& [k, c] : p.terms())
        terms[std::to_string(k)] = to_string(c);
    return terms;
}

json to_json(const DistributionTable& table, const Presentation& pres)
{
    json rows = json::array();
    for (std::size_t n = 0; n < table.rows.size(); ++n) {
        const auto& row = table.rows[n];
        rows.push_back({{"n", n},
                        {"per_pattern", exacts(row.per_pattern)},
                        {"total", to_string(row.total)},
                        {"total_decimal", to_decimal(row.total, pres.digits)}});
    }
    return json{{"horizon", table.horizon},
                {"rows", std::move(rows)},
                {"tail_mass", to_string(table.tail_mass)},
                {"tail_mass_decimal", to_decimal(table.tail_mass, pres.digits)}};
}

DistributionTable distribution_from_json(const json& value)
{
    DistributionTable t;
    t.horizon = require(value, "horizon").get<std::size_t>();
    for (const auto& r : require(value, "rows")) {
        DistributionRow row;
        for (const auto& x : require(r, "per_pattern"))
            row.per_pattern.push_back(rational_from_json(x));
        row.total = rational_from_json(require(r, "total"));
        t.rows.push_back(std::move(row));
    }
    t.tail_mass = rational_from_json(require(value, "tail_mass"));
    return t;
}

json validation_to_json(const ValidationReport& report)
{
    json list = json::array();
    for (const auto& v : report.violations) {
        json idx = json::array();
        if (v.first)
            idx.push_back(*v.first + 1);
        if (v.second)
            idx.push_back(*v.second + 1);
        list.push_back({{"kind", kind_name(v.kind)}, {"patterns", std::move(idx)}, {"message", v.message}});
    }
    return json{{"valid", report.ok()}, {"violations", std::move(list)}};
}

json metadata(std::string_view input)
{
    return json{{"tool", tool_name}, {"version", tool_version}, {"input_digest", "fnv1a64:" + digest(input)}};
}

json race_to_json(const RaceProblem& problem, const RaceSolution& solution, const Presentation& pres)
{
    json patterns = json::array();
    for (const auto& p : problem.patterns)
        patterns.push_back(problem.alphabet.format(p));
    json g_per = json::array();
    for (const auto& g : solution.g_per_pattern)
        g_per.push_back(to_json(g));

    const auto& d = solution.at_one;
    return json{
        {"patterns", std::move(patterns)},
        {"initial", problem.initial ? json(problem.alphabet.format(*problem.initial)) : json(nullptr)},
        {"win_probs", exacts(solution.win_probs)},
        {"win_probs_decimal", decimals(solution.win_probs, pres)},
        {"expected_tau", to_string(solution.expected_tau)},
        {"expected_tau_decimal", to_decimal(solution.expected_tau, pres.digits)},
        {"q_tau", to_json(solution.q_tau)},
        {"g_total", to_json(solution.g_total)},
        {"g_per_pattern", std::move(g_per)},
        {"determinants_at_one",
         {{"det_b", to_string(d.det_b)},
          {"sum_det_b_ones", to_string(d.sum_det_b_ones)},
          {"det_b_k", exacts(d.det_b_k)},
          {"sum_det_b_k_ones", exacts(d.sum_det_b_k_ones)}}},
    };
}

}  // namespace patrace::io
