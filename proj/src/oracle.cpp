#include "patrace/oracle.hpp"

#include "patrace/correlation.hpp"
#include "patrace/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

namespace patrace {

PrefixAutomaton build_automaton(const RaceProblem& problem)
{
    require_valid(problem);
    const auto& pats = problem.patterns;

    std::set<Pattern> prefix_set;
    for (const auto& p : pats)
        for (std::size_t k = 0; k < p.size(); ++k)
            prefix_set.insert(p.prefix(k));

    PrefixAutomaton a;
    a.pattern_count_ = pats.size();
    a.alphabet_size_ = problem.alphabet.size();
    // Shortest first, so the empty prefix is state 0.
    a.prefixes_.assign(prefix_set.begin(), prefix_set.end());
    std::stable_sort(a.prefixes_.begin(), a.prefixes_.end(),
                     [](const Pattern& x, const Pattern& y) { return x.size() < y.size(); });
    std::map<Pattern, std::size_t> index;
    for (std::size_t i = 0; i < a.prefixes_.size(); ++i)
        index.emplace(a.prefixes_[i], i);

    a.next_.resize(a.prefixes_.size(), std::vector<std::size_t>(a.alphabet_size_));
    for (std::size_t s = 0; s < a.prefixes_.size(); ++s) {
        for (Letter c = 0; c < a.alphabet_size_; ++c) {
            const Pattern t = a.prefixes_[s] + Pattern{{c}};
            std::optional<std::size_t> done;
            for (std::size_t k = 0; k < pats.size(); ++k) {
                if (pats[k].size() <= t.size() && t.suffix(pats[k].size()) == pats[k]) {
                    if (done)
                        throw InternalError("two patterns complete on one transition");
                    done = k;
                }
            }
            if (done) {
                a.next_[s][c] = a.prefixes_.size() + *done;
                continue;
            }
            for (std::size_t len = t.size() + 1; len-- > 0;) {
                auto it = index.find(t.suffix(len));
                if (it != index.end()) {
                    a.next_[s][c] = it->second;
                    break;
                }
            }
        }
    }

    if (problem.initial) {
        const auto& init = problem.initial->letters;
        std::size_t s = 0;
        for (std::size_t i = 0; i < init.size(); ++i) {
            s = a.next_[s][init[i]];
            if (a.is_accept(s) && i + 1 < init.size())
                throw InternalError("a pattern completes inside the initial word");
        }
        a.start_ = s;
    }
    return a;
}

DistributionTable exact_distribution(const RaceProblem& problem, std::size_t horizon)
{
    const PrefixAutomaton a = build_automaton(problem);
    const std::size_t live = a.live_count();
    const std::size_t m = a.pattern_count();
    const auto& probs = problem.alphabet.probs();

    DistributionTable table;
    table.horizon = horizon;
    table.rows.assign(horizon + 1, DistributionRow{std::vector<Rational>(m), Rational(0)});

    std::vector<Rational> mass(live);
    if (a.is_accept(a.start())) {
        table.rows[0].per_pattern[a.accepted_pattern(a.start())] = 1;
        table.rows[0].total = 1;
    } else {
        mass[a.start()] = 1;
    }

    Rational absorbed = table.rows[0].total;
    for (std::size_t n = 1; n <= horizon; ++n) {
        std::vector<Rational> next(live);
        auto& row = table.rows[n];
        for (std::size_t s = 0; s < live; ++s) {
            if (mass[s] == 0)
                continue;
            for (Letter c = 0; c < a.alphabet_size(); ++c) {
                const Rational flow = mass[s] * probs[c];
                const auto t = a.next(s, c);
                if (a.is_accept(t))
                    row.per_pattern[a.accepted_pattern(t)] += flow;
                else
                    next[t] += flow;
            }
        }
        for (const auto& x : row.per_pattern)
            row.total += x;
        absorbed += row.total;
        mass = std::move(next);

        Rational live_mass(0);
        for (const auto& x : mass)
            live_mass += x;
        if (live_mass + absorbed != 1)
            throw InternalError("probability mass not conserved");
    }

    table.tail_mass = 0;
    for (const auto& x : mass)
        table.tail_mass += x;
    return table;
}

AbsorbingResult absorbing_solve(const RaceProblem& problem)
{
    const PrefixAutomaton a = build_automaton(problem);
    const std::size_t live = a.live_count();
    const std::size_t m = a.pattern_count();
    const auto& probs = problem.alphabet.probs();

    AbsorbingResult out{std::vector<Rational>(m), Rational(0)};
    if (a.is_accept(a.start())) {
        out.win_probs[a.accepted_pattern(a.start())] = 1;
        return out;
    }

    // (I − P_TT) [h_1 .. h_m | t] = [P_T,k .. | 1]
    Matrix<Rational> lhs = Matrix<Rational>::identity(live);
    Matrix<Rational> rhs(live, m + 1, Rational(0));
    for (std::size_t s = 0; s < live; ++s) {
        rhs(s, m) = 1;
        for (Letter c = 0; c < a.alphabet_size(); ++c) {
            const auto t = a.next(s, c);
            if (a.is_accept(t))
                rhs(s, a.accepted_pattern(t)) += probs[c];
            else
                lhs(s, t) -= probs[c];
        }
    }
    Matrix<Rational> x;
    try {
        x = solve(std::move(lhs), std::move(rhs));
    } catch (const SingularSystem&) {
        throw InternalError("absorbing chain system is singular");
    }
    for (std::size_t k = 0; k < m; ++k)
        out.win_probs[k] = x(a.start(), k);
    out.expected_tau = x(a.start(), m);
    return out;
}

namespace {

constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream: output i of replicate r depends only on (seed, r, i).
class ReplicateStream {
public:
    using result_type = std::uint64_t;

    ReplicateStream(std::uint64_t seed, std::uint64_t replicate)
        : key_(mix64(seed ^ mix64(replicate + 0x9e3779b97f4a7c15ULL)))
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Letter sampler with thresholds floor(F_i · 2^64) from the exact CDF.
class LetterSampler {
public:
    explicit LetterSampler(const Alphabet& alphabet)
    {
        Rational cdf(0);
        const Integer two64 = Integer(1) << 64;
        for (std::size_t i = 0; i + 1 < alphabet.size(); ++i) {
            cdf += alphabet.prob(static_cast<Letter>(i));
            const Integer t = Integer(cdf * Rational(two64));
            thresholds_.push_back(static_cast<std::uint64_t>(mpz_get_ui(t.get_mpz_t())));
        }
        static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required");
    }

    Letter operator()(ReplicateStream& rng) const
    {
        const std::uint64_t u = rng();
        Letter c = 0;
        while (c < thresholds_.size() && u >= thresholds_[c])
            ++c;
        return c;
    }

private:
    std::vector<std::uint64_t> thresholds_;
};

unsigned worker_count(unsigned requested, std::uint64_t reps)
{
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(n, reps));
}

}  // namespace

double MonteCarloReport::win_freq(std::size_t k) const
{
    return static_cast<double>(wins.at(k)) / static_cast<double>(reps);
}

double MonteCarloReport::win_stddev(const Rational& p) const
{
    const double pd = p.get_d();
    return std::sqrt(pd * (1.0 - pd) / static_cast<double>(reps));
}

double MonteCarloReport::mean_tau() const
{
    const std::uint64_t done = reps - truncated;
    return done ? Rational(sum_tau, Integer(static_cast<unsigned long>(done))).get_d() : 0.0;
}

double MonteCarloReport::tau_std_error() const
{
    const std::uint64_t done = reps - truncated;
    if (done < 2)
        return 0.0;
    const auto n = Integer(static_cast<unsigned long>(done));
    // Unbiased variance computed exactly, then rounded once.
    Rational var(sum_tau_sq * n - sum_tau * sum_tau, n * (n - 1));
    var.canonicalize();
    return std::sqrt(var.get_d() / static_cast<double>(done));
}

MonteCarloReport monte_carlo(const RaceProblem& problem, const MonteCarloOptions& options)
{
    if (options.reps == 0)
        throw std::invalid_argument("reps must be at least 1");
    const PrefixAutomaton a = build_automaton(problem);
    const LetterSampler sample(problem.alphabet);
    const std::size_t m = a.pattern_count();

    struct Partial {
        std::vector<std::uint64_t> wins;
        std::uint64_t truncated = 0;
        Integer sum_tau{0};
        Integer sum_tau_sq{0};
        std::map<std::uint64_t, std::uint64_t> histogram;
    };

    const unsigned workers = worker_count(options.threads, options.reps);
    std::vector<Partial> partials(workers);
    for (auto& p : partials)
        p.wins.assign(m, 0);

    auto run = [&](unsigned w) {
        Partial& part = partials[w];
        const std::uint64_t lo = options.reps * w / workers;
        const std::uint64_t hi = options.reps * (w + 1) / workers;
        for (std::uint64_t r = lo; r < hi; ++r) {
            ReplicateStream rng(options.seed, r);
            auto s = a.start();
            std::uint64_t tau = 0;
            while (!a.is_accept(s) && tau < options.max_steps) {
                s = a.next(s, sample(rng));
                ++tau;
            }
            if (!a.is_accept(s)) {
                ++part.truncated;
                continue;
            }
            ++part.wins[a.accepted_pattern(s)];
            const Integer t(static_cast<unsigned long>(tau));
            part.sum_tau += t;
            part.sum_tau_sq += t * t;
            ++part.histogram[tau];
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
    }

    MonteCarloReport rep;
    rep.reps = options.reps;
    rep.seed = options.seed;
    rep.max_steps = options.max_steps;
    rep.wins.assign(m, 0);
    rep.sum_tau = 0;
    rep.sum_tau_sq = 0;
    for (const auto& part : partials) {
        for (std::size_t k = 0; k < m; ++k)
            rep.wins[k] += part.wins[k];
        rep.truncated += part.truncated;
        rep.sum_tau += part.sum_tau;
        rep.sum_tau_sq += part.sum_tau_sq;
        for (const auto& [t, c] : part.histogram)
            rep.histogram[t] += c;
    }
    return rep;
}

Rational casino_net_gain(const Pattern& history, const Pattern& b, const Alphabet& alphabet, const Rational& alpha)
{
    if (alpha == 1)
        throw std::invalid_argument("alpha must differ from 1");
    const long n = static_cast<long>(history.size());
    const Rational an = pow(alpha, n);
    const Rational owed = history.empty() ? Rational(0) : correlation(history, b, alphabet).eval(alpha);
    return (Rational(1) - an) / (Rational(1) - alpha) - an * owed;
}

MartingaleReport martingale_check(const Pattern& b, const std::optional<Pattern>& initial, const Alphabet& alphabet,
                                  const Rational& alpha, const MartingaleOptions& options)
{
    if (alpha <= 0 || alpha >= 1)
        throw std::invalid_argument("alpha must lie strictly between 0 and 1");
    if (options.reps == 0)
        throw std::invalid_argument("reps must be at least 1");

    const RaceProblem single{alphabet, initial, {b}};
    const PrefixAutomaton a = build_automaton(single);
    const LetterSampler sample(alphabet);
    const double al = alpha.get_d();
    const double geo = 1.0 / (1.0 - al);

    // Team capital per unit α^n in each live state: (prefix ∗ B)(α).
    std::vector<double> owed(a.live_count());
    for (std::size_t s = 1; s < a.live_count(); ++s)
        owed[s] = correlation(a.prefix(s), b, alphabet).eval(al);
    const double owed_full = correlation(b, b, alphabet).eval(al);

    MartingaleReport rep;
    rep.alpha = alpha;
    rep.reps = options.reps;
    const long l = initial ? static_cast<long>(initial->size()) : 0;
    rep.y0 = initial ? casino_net_gain(*initial, b, alphabet, alpha) : Rational(0);
    rep.bound = Rational(Rational(1) / ((Rational(1) - alpha) * pattern_prob(b, alphabet))).get_d();
    const double slack = 1e-9 * rep.bound;

    auto gain = [&](std::uint64_t n, std::size_t state) {
        const double an = std::pow(al, static_cast<double>(n));
        const double team = a.is_accept(state) ? owed_full : owed[state];
        return (1.0 - an) * geo - an * team;
    };
    auto check = [&](std::uint64_t r, std::uint64_t n, double x) {
        rep.max_abs_gain = std::max(rep.max_abs_gain, std::abs(x));
        if (std::abs(x) > rep.bound + slack) {
            ++rep.violations;
            if (!rep.first_violation)
                rep.first_violation = MartingaleReport::Location{r, n};
        }
    };

    // The walk through A is deterministic; check it once per path anyway so
    // every reported path is fully covered.
    std::vector<std::size_t> prefix_states{0};
    if (initial)
        for (Letter c : initial->letters)
            prefix_states.push_back(a.next(prefix_states.back(), c));

    std::vector<double> y_tau(options.reps, 0.0);
    std::vector<bool> completed(options.reps, false);
    for (std::uint64_t r = 0; r < options.reps; ++r) {
        ReplicateStream rng(options.seed, r);
        for (std::size_t n = 0; n < prefix_states.size(); ++n)
            check(r, n, gain(n, prefix_states[n]));
        auto s = a.start();
        std::uint64_t tau = 0;
        while (!a.is_accept(s) && tau < options.max_steps) {
            s = a.next(s, sample(rng));
            ++tau;
            check(r, static_cast<std::uint64_t>(l) + tau, gain(static_cast<std::uint64_t>(l) + tau, s));
        }
        if (!a.is_accept(s)) {
            ++rep.truncated;
            continue;
        }
        completed[r] = true;
        y_tau[r] = gain(static_cast<std::uint64_t>(l) + tau, s);
    }

    const std::uint64_t done = rep.reps - rep.truncated;
    if (done == 0)
        return rep;
    double sum = 0.0;
    for (std::uint64_t r = 0; r < rep.reps; ++r)
        if (completed[r])
            sum += y_tau[r];
    rep.mean_y_tau = sum / static_cast<double>(done);
    double ss = 0.0;
    for (std::uint64_t r = 0; r < rep.reps; ++r)
        if (completed[r])
            ss += (y_tau[r] - rep.mean_y_tau) * (y_tau[r] - rep.mean_y_tau);
    if (done > 1)
        rep.std_error = std::sqrt(ss / static_cast<double>(done - 1) / static_cast<double>(done));
    const double diff = rep.mean_y_tau - rep.y0.get_d();
    rep.z_score = rep.std_error > 0 ? diff / rep.std_error : (diff == 0 ? 0.0 : std::copysign(INFINITY, diff));
    return rep;
}

}  // namespace patrace
