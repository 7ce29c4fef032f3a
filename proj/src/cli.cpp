#include "patrace/cli.hpp"

#include "patrace/correlation.hpp"
#include "patrace/io.hpp"
#include "patrace/oracle.hpp"
#include "patrace/race_solver.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace patrace::cli {

namespace {

using io::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Input {
    std::string text;
    RaceProblem problem;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Input load(const std::string& path)
{
    std::string text = read_file(path);
    RaceProblem problem = io::parse_problem(text);
    return {std::move(text), std::move(problem)};
}

std::string poly_to_string(const Polynomial& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const Rational& c = p.coeffs()[i];
        if (c == 0)
            continue;
        const bool neg = c < 0;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        const Rational mag = abs(c);
        if (i == 0 || mag != 1)
            out += to_string(mag) + (i ? "*" : "");
        if (i == 1)
            out += "a";
        else if (i > 1)
            out += "a^" + std::to_string(i);
    }
    return out;
}

std::string rf_to_string(const RationalFunc& f)
{
    if (f.den() == Polynomial(Rational(1)))
        return poly_to_string(f.num());
    return "(" + poly_to_string(f.num()) + ") / (" + poly_to_string(f.den()) + ")";
}

Rational parse_alpha(const std::string& text)
{
    return parse_rational(text);
}

// validate ------------------------------------------------------------------

int cmd_validate(const std::string& path, std::ostream& out)
{
    const Input in = load(path);
    const auto report = validate_race(in.problem);
    out << io::validation_to_json(report).dump(2) << '\n';
    return report.ok() ? ExitCode::ok : ExitCode::invalid;
}

// race ----------------------------------------------------------------------

struct RaceArgs {
    std::string input;
    std::string alpha;
    std::optional<std::size_t> series;
    bool oracle = false;
    bool table = false;
    io::Presentation pres;
};

constexpr std::size_t default_oracle_horizon = 40;

void render_race_table(const RaceProblem& problem, const RaceSolution& sol, const json& doc, const RaceArgs& args,
                       std::ostream& out)
{
    const int digits = args.pres.digits;
    out << "initial       " << (problem.initial ? problem.alphabet.format(*problem.initial) : "(none)") << '\n';
    out << "k  pattern           win_prob          decimal\n";
    for (std::size_t k = 0; k < problem.m(); ++k) {
        out << std::left << std::setw(3) << (k + 1) << std::setw(18) << problem.alphabet.format(problem.patterns[k])
            << std::setw(18) << to_string(sol.win_probs[k]) << to_decimal(sol.win_probs[k], digits) << '\n';
    }
    out << "expected_tau  " << to_string(sol.expected_tau) << "  (" << to_decimal(sol.expected_tau, digits) << ")\n";
    out << "Q(a)   = " << rf_to_string(sol.q_tau) << '\n';
    out << "g(a)   = " << rf_to_string(sol.g_total) << '\n';
    for (std::size_t k = 0; k < problem.m(); ++k)
        out << "g" << (k + 1) << "(a)  = " << rf_to_string(sol.g_per_pattern[k]) << '\n';
    if (doc.contains("evaluation")) {
        const auto& ev = doc.at("evaluation");
        out << "at a = " << ev.at("alpha").get<std::string>() << ": Q = " << ev.at("q_tau").get<std::string>()
            << ", g = " << ev.at("g_total").get<std::string>() << '\n';
    }
    if (doc.contains("series")) {
        const auto table = io::distribution_from_json(doc.at("series"));
        out << "n    Pr(tau=n)";
        for (std::size_t k = 0; k < problem.m(); ++k)
            out << "  Pr(tau=tau_" << (k + 1) << "=n)";
        out << '\n';
        for (std::size_t n = 0; n < table.rows.size(); ++n) {
            out << std::left << std::setw(5) << n << to_string(table.rows[n].total);
            for (const auto& x : table.rows[n].per_pattern)
                out << "  " << to_string(x);
            out << '\n';
        }
        out << "tail  " << to_string(table.tail_mass) << '\n';
    }
    if (doc.contains("oracle"))
        out << "oracle agreement: " << (doc.at("oracle").at("agreement").get<bool>() ? "yes" : "NO") << '\n';
}

int cmd_race(const RaceArgs& args, std::ostream& out)
{
    const Input in = load(args.input);
    const RaceSolution sol = solve_race(in.problem);

    json doc = io::race_to_json(in.problem, sol, args.pres);
    doc["metadata"] = io::metadata(in.text);

    if (!args.alpha.empty()) {
        const Rational a = parse_alpha(args.alpha);
        json per = json::array();
        try {
            for (const auto& g : sol.g_per_pattern)
                per.push_back(to_string(g.eval(a)));
            doc["evaluation"] = {{"alpha", to_string(a)},
                                 {"q_tau", to_string(sol.q_tau.eval(a))},
                                 {"g_total", to_string(sol.g_total.eval(a))},
                                 {"g_per_pattern", std::move(per)}};
        } catch (const std::domain_error&) {
            throw UsageError("generating functions have a pole at alpha=" + to_string(a));
        }
    }

    std::optional<SeriesTable> solver_series;
    if (args.series) {
        solver_series = series(sol, *args.series);
        doc["series"] = io::to_json(*solver_series, args.pres);
    }

    bool agreement = true;
    if (args.oracle) {
        const std::size_t horizon = args.series.value_or(default_oracle_horizon);
        const auto absorbing = absorbing_solve(in.problem);
        const auto dp = exact_distribution(in.problem, horizon);
        if (!solver_series || solver_series->horizon != horizon)
            solver_series = series(sol, horizon);
        const bool win_ok = absorbing.win_probs == sol.win_probs;
        const bool mean_ok = absorbing.expected_tau == sol.expected_tau;
        const bool series_ok = dp == *solver_series;
        agreement = win_ok && mean_ok && series_ok;
        json probs = json::array();
        for (const auto& p : absorbing.win_probs)
            probs.push_back(to_string(p));
        doc["oracle"] = {{"win_probs", std::move(probs)},
                         {"expected_tau", to_string(absorbing.expected_tau)},
                         {"distribution_horizon", horizon},
                         {"checks", {{"win_probs", win_ok}, {"expected_tau", mean_ok}, {"series", series_ok}}},
                         {"agreement", agreement}};
    }

    if (args.table)
        render_race_table(in.problem, sol, doc, args, out);
    else
        out << doc.dump(2) << '\n';
    return agreement ? ExitCode::ok : ExitCode::oracle_mismatch;
}

// correlate -----------------------------------------------------------------

struct CorrelateArgs {
    std::string input;
    std::string a;
    std::string b;
    std::string alpha;
    io::Presentation pres;
};

int cmd_correlate(const CorrelateArgs& args, std::ostream& out)
{
    const std::string text = read_file(args.input);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    const Alphabet alphabet = io::parse_alphabet(doc);
    const Pattern a = io::parse_pattern_arg(args.a, alphabet);
    const Pattern b = io::parse_pattern_arg(args.b, alphabet);
    const LaurentPoly c = correlation(a, b, alphabet);

    json res{{"a", alphabet.format(a)}, {"b", alphabet.format(b)}, {"terms", io::to_json(c)}};
    if (!args.alpha.empty()) {
        const Rational al = parse_alpha(args.alpha);
        if (al <= 0)
            throw UsageError("--alpha must be positive");
        const Rational v = c.eval(al);
        res["alpha"] = to_string(al);
        res["value"] = to_string(v);
        res["value_decimal"] = to_decimal(v, args.pres.digits);
    }
    res["metadata"] = io::metadata(text);
    out << res.dump(2) << '\n';
    return ExitCode::ok;
}

// simulate ------------------------------------------------------------------

struct SimulateArgs {
    std::string input;
    MonteCarloOptions mc;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out)
{
    const Input in = load(args.input);
    if (args.mc.reps == 0)
        throw UsageError("--reps must be at least 1");
    const RaceSolution sol = solve_race(in.problem);
    const MonteCarloReport rep = monte_carlo(in.problem, args.mc);

    json per = json::array();
    for (std::size_t k = 0; k < in.problem.m(); ++k) {
        const double sd = rep.win_stddev(sol.win_probs[k]);
        const double diff = rep.win_freq(k) - sol.win_probs[k].get_d();
        per.push_back({{"pattern", in.problem.alphabet.format(in.problem.patterns[k])},
                       {"wins", rep.wins[k]},
                       {"freq", rep.win_freq(k)},
                       {"exact", to_string(sol.win_probs[k])},
                       {"stddev", sd},
                       {"z", sd > 0 ? diff / sd : 0.0}});
    }
    json hist = json::array();
    for (const auto& [t, c] : rep.histogram)
        hist.push_back({t, c});
    const double se = rep.tau_std_error();
    const double tau_diff = rep.mean_tau() - sol.expected_tau.get_d();
    json doc{{"reps", rep.reps},
             {"seed", rep.seed},
             {"max_steps", rep.max_steps},
             {"truncated", rep.truncated},
             {"patterns", std::move(per)},
             {"mean_tau", rep.mean_tau()},
             {"tau_std_error", se},
             {"expected_tau", to_string(sol.expected_tau)},
             {"tau_z", se > 0 ? tau_diff / se : 0.0},
             {"histogram", std::move(hist)},
             {"metadata", io::metadata(in.text)}};
    out << doc.dump(2) << '\n';
    return ExitCode::ok;
}

// martingale ----------------------------------------------------------------

struct MartingaleArgs {
    std::string input;
    std::size_t pattern_index = 1;
    std::string alpha;
    MartingaleOptions opts;
    io::Presentation pres;
};

int cmd_martingale(const MartingaleArgs& args, std::ostream& out)
{
    const Input in = load(args.input);
    if (args.pattern_index < 1 || args.pattern_index > in.problem.m())
        throw UsageError("--pattern-index out of range");
    const Rational alpha = parse_alpha(args.alpha);
    if (alpha <= 0 || alpha >= 1)
        throw UsageError("--alpha must lie strictly between 0 and 1");
    if (args.opts.reps == 0)
        throw UsageError("--reps must be at least 1");

    const Pattern& b = in.problem.patterns[args.pattern_index - 1];
    const auto rep = martingale_check(b, in.problem.initial, in.problem.alphabet, alpha, args.opts);

    json first = nullptr;
    if (rep.first_violation)
        first = {{"replicate", rep.first_violation->replicate}, {"step", rep.first_violation->step}};
    json doc{{"pattern", in.problem.alphabet.format(b)},
             {"initial", in.problem.initial ? json(in.problem.alphabet.format(*in.problem.initial)) : json(nullptr)},
             {"alpha", to_string(alpha)},
             {"reps", rep.reps},
             {"seed", args.opts.seed},
             {"y0", to_string(rep.y0)},
             {"y0_decimal", to_decimal(rep.y0, args.pres.digits)},
             {"mean_y_tau", rep.mean_y_tau},
             {"std_error", rep.std_error},
             {"z_score", rep.z_score},
             {"within_4_se", std::abs(rep.z_score) <= 4.0},
             {"bound", rep.bound},
             {"max_abs_gain", rep.max_abs_gain},
             {"truncated", rep.truncated},
             {"violations", rep.violations},
             {"first_violation", std::move(first)},
             {"metadata", io::metadata(in.text)}};
    out << doc.dump(2) << '\n';
    return rep.violations ? ExitCode::martingale_violation : ExitCode::ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact pattern-race solver: correlations, generating functions, winning odds"};
    app.require_subcommand(1);

    io::Presentation pres = io::presentation_from_env();
    auto add_precision = [&](CLI::App* sub) {
        sub->add_option("--precision", pres.digits, "Significant digits for decimal output")
            ->check(CLI::Range(1, 1000));
    };

    std::string validate_input;
    auto* validate = app.add_subcommand("validate", "Check a problem file");
    validate->add_option("input", validate_input, "Problem file")->required();

    RaceArgs race_args;
    auto* race = app.add_subcommand("race", "Solve a pattern race in closed form");
    race->add_option("input", race_args.input, "Problem file")->required();
    race->add_option("--alpha", race_args.alpha, "Evaluate the generating functions at this rational");
    race->add_option("--series", race_args.series, "Emit Pr(tau = n) for n = 0..N");
    race->add_flag("--oracle", race_args.oracle, "Cross-check against the automaton oracles");
    auto* json_flag = race->add_flag("--json", "JSON output (default)");
    race->add_flag("--table", race_args.table, "Human-readable table output")->excludes(json_flag);
    add_precision(race);

    CorrelateArgs corr_args;
    auto* correlate = app.add_subcommand("correlate", "Correlation function of two patterns");
    correlate->add_option("input", corr_args.input, "File providing the alphabet")->required();
    correlate->add_option("--a", corr_args.a, "First pattern")->required();
    correlate->add_option("--b", corr_args.b, "Second pattern")->required();
    correlate->add_option("--alpha", corr_args.alpha, "Evaluate at this positive rational");
    add_precision(correlate);

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the race");
    simulate->add_option("input", sim_args.input, "Problem file")->required();
    simulate->add_option("--reps", sim_args.mc.reps, "Replicates");
    simulate->add_option("--seed", sim_args.mc.seed, "RNG seed");
    simulate->add_option("--max-steps", sim_args.mc.max_steps, "Per-replicate step cap");
    simulate->add_option("--threads", sim_args.mc.threads, "Worker threads (0 = all cores)");

    MartingaleArgs mart_args;
    auto* martingale = app.add_subcommand("martingale", "Simulate the gambling-team martingale");
    martingale->add_option("input", mart_args.input, "Problem file")->required();
    martingale->add_option("--pattern-index", mart_args.pattern_index, "1-based pattern to bet on");
    martingale->add_option("--alpha", mart_args.alpha, "Discount in (0,1)")->required();
    martingale->add_option("--reps", mart_args.opts.reps, "Replicates");
    martingale->add_option("--seed", mart_args.opts.seed, "RNG seed");
    martingale->add_option("--max-steps", mart_args.opts.max_steps, "Per-path step cap");
    add_precision(martingale);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }
    race_args.pres = corr_args.pres = mart_args.pres = pres;

    try {
        if (*validate)
            return cmd_validate(validate_input, out);
        if (*race)
            return cmd_race(race_args, out);
        if (*correlate)
            return cmd_correlate(corr_args, out);
        if (*simulate)
            return cmd_simulate(sim_args, out);
        if (*martingale)
            return cmd_martingale(mart_args, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return ExitCode::parse_error;
    } catch (const ValidationError& e) {
        out << io::validation_to_json(e.report()).dump(2) << '\n';
        err << "invalid: " << e.what() << '\n';
        return ExitCode::invalid;
    } catch (const InvalidInput& e) {
        err << "invalid: " << e.what() << '\n';
        return ExitCode::invalid;
    } catch (const DegenerateCollection& e) {
        err << "degenerate: " << e.what() << '\n';
        return ExitCode::invalid;
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const std::invalid_argument& e) {
        err << "usage: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    }
    return ExitCode::usage;
}

}  // namespace patrace::cli
