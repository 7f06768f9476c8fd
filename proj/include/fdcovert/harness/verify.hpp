#ifndef FDCOVERT_HARNESS_VERIFY_HPP
#define FDCOVERT_HARNESS_VERIFY_HPP

// Closed form versus independent oracle comparisons, grouped in suites.
// Every random choice is drawn from streams derived from the config seed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "fdcovert/core_model.hpp"
#include "fdcovert/covertness.hpp"
#include "fdcovert/detection.hpp"
#include "fdcovert/harness/config.hpp"
#include "fdcovert/harness/table.hpp"
#include "fdcovert/link.hpp"

namespace fdcovert::harness {

/// Aggregate of one kind of comparison over many cases. The reported
/// deviation/tolerance pair is the case with the largest dev / tol.
struct CheckResult {
    std::string suite;
    std::string name;
    std::size_t cases = 0;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = true;

    void add(double dev, double tol) {
        auto ratio = [](double d, double t) {
            if (t > 0.0) return d / t;
            return d > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        };
        if (cases == 0 || ratio(dev, tol) > ratio(deviation, tolerance)) {
            deviation = dev;
            tolerance = tol;
        }
        pass = pass && dev <= tol;
        ++cases;
    }
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }
};

inline const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"lemma1", "theorem1", "lemma2", "theorem2", "theorem3"};
    return names;
}

namespace detail {

enum StreamTag : std::uint64_t { kLemma1 = 1001, kTheorem1, kLemma2, kTheorem2, kTheorem3 };

inline double uniform(RandomSource& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); }

inline double mc_tolerance(double p, std::size_t n) { return 3.0 * binomial_stderr(p, n) + 1e-3; }

inline std::size_t mc_trials(const ScenarioConfig& cfg) { return cfg.trials == 0 ? 100000 : cfg.trials; }

inline ChannelDraw random_willie_draw(const ChannelStats& stats, RandomSource& rng) {
    ChannelDraw d;
    d.g_aw = sample_gain(stats.lambda_aw, rng);
    d.g_bw = sample_gain(stats.lambda_bw, rng);
    return d;
}

}  // namespace detail

/// Lemma-style check of the false-alarm / miss-detection closed forms.
inline std::vector<CheckResult> verify_lemma1(const ScenarioConfig& cfg, std::size_t cases = 200) {
    CheckResult alpha{"lemma1", "alpha_closed_vs_mc"};
    CheckResult beta{"lemma1", "beta_closed_vs_mc"};
    const std::size_t trials = detail::mc_trials(cfg);
    const RandomSource base(cfg.seed, detail::kLemma1);
    for (std::size_t k = 0; k < cases; ++k) {
        RandomSource rng = base.substream(k);
        const ChannelDraw d = detail::random_willie_draw(cfg.stats, rng);
        const Rho rho = breakpoints(d, cfg.params);
        const double tau = detail::uniform(rng, 0.9 * cfg.params.sigma2_w, 1.05 * rho.rho3);
        const DetectionResult closed = detection_error(tau, d, cfg.params);
        const DetectionResult mc = mc_detection_error(tau, d, cfg.params, trials, base.substream(k + cases), cfg.threads);
        alpha.add(std::abs(closed.alpha - mc.alpha), detail::mc_tolerance(closed.alpha, trials));
        beta.add(std::abs(closed.beta - mc.beta), detail::mc_tolerance(closed.beta, trials));
    }
    return {alpha, beta};
}

inline std::vector<CheckResult> verify_theorem1(const ScenarioConfig& cfg, std::size_t cases = 1000,
                                                std::size_t grid_points = 10000) {
    CheckResult value{"theorem1", "grid_min_vs_xi_star"};
    CheckResult argmin{"theorem1", "grid_argmin_in_interval"};
    CheckResult remark{"theorem1", "xi_star_independent_of_sigma2_w"};
    CheckResult scaling{"theorem1", "xi_star_scale_invariant"};
    const RandomSource base(cfg.seed, detail::kTheorem1);
    for (std::size_t k = 0; k < cases; ++k) {
        RandomSource rng = base.substream(k);
        const ChannelDraw d = detail::random_willie_draw(cfg.stats, rng);
        const ThresholdSolution exact = optimal_threshold(d, cfg.params);
        const ThresholdSolution grid = grid_search_threshold(d, cfg.params, grid_points);
        const double step = grid_step(d, cfg.params, grid_points);
        const double span = cfg.params.p_b_max * d.g_bw;
        value.add(std::abs(grid.xi_star - exact.xi_star), span > 0.0 ? 2.0 * step / span : 0.0);
        const double outside = std::max({0.0, (exact.tau_lo - step) - grid.tau_lo, grid.tau_hi - (exact.tau_hi + step)});
        argmin.add(outside, 0.0);

        if (k < 100) {
            double spread = 0.0;
            for (double s2 : {0.01, 1.0, 100.0}) {
                SystemParams p = cfg.params;
                p.sigma2_w = s2;
                spread = std::max(spread, std::abs(optimal_threshold(d, p).xi_star - exact.xi_star));
            }
            remark.add(spread, 0.0);
            for (double c : {0.1, 10.0}) {
                SystemParams p = cfg.params;
                p.p_a *= c;
                p.p_b_max *= c;
                p.sigma2_w *= c;
                scaling.add(std::abs(optimal_threshold(d, p).xi_star - exact.xi_star), 1e-12);
            }
        }
    }
    return {value, argmin, remark, scaling};
}

inline std::vector<CheckResult> verify_lemma2(const ScenarioConfig& cfg, std::size_t cases = 50) {
    CheckResult mc_check{"lemma2", "delta_closed_vs_mc"};
    CheckResult limit{"lemma2", "delta_small_p_b_max_limit"};
    CheckResult monotone{"lemma2", "delta_nondecreasing_in_p_b_max"};
    const std::size_t trials = detail::mc_trials(cfg);
    const RandomSource base(cfg.seed, detail::kLemma2);
    for (std::size_t k = 0; k < cases; ++k) {
        RandomSource rng = base.substream(k);
        SystemParams p = cfg.params;
        p.p_a = db_to_linear(detail::uniform(rng, -10.0, 20.0));
        p.p_b_max = db_to_linear(detail::uniform(rng, -10.0, 30.0));
        p.sigma2_b = db_to_linear(detail::uniform(rng, -10.0, 10.0));
        p.phi = std::pow(10.0, detail::uniform(rng, -3.0, 0.0));
        p.rate = detail::uniform(rng, 0.1, 3.0);
        const auto in = make_outage_inputs(p, cfg.stats);
        const double closed = outage_probability(in);
        const Estimate mc = mc_outage(in, trials, base.substream(k + cases), cfg.threads);
        mc_check.add(std::abs(closed - mc.value), detail::mc_tolerance(closed, trials));

        double prev = 0.0;
        double worst_drop = 0.0;
        for (double pb_db = -30.0; pb_db <= 40.0; pb_db += 5.0) {
            SystemParams q = p;
            q.p_b_max = db_to_linear(pb_db);
            const double delta = outage_probability(make_outage_inputs(q, cfg.stats));
            worst_drop = std::max(worst_drop, prev - delta);
            prev = delta;
        }
        monotone.add(worst_drop, 0.0);
    }

    SystemParams p = cfg.params;
    p.p_b_max = 1e-8;
    const auto in = make_outage_inputs(p, cfg.stats);
    const double no_an = -std::expm1(-in.mu * p.sigma2_b / cfg.stats.lambda_ab);
    limit.add(std::abs(outage_probability(in) - no_an) / no_an, 1e-6);
    return {mc_check, limit, monotone};
}

inline std::vector<CheckResult> verify_theorem2(const ScenarioConfig& cfg, std::size_t cases = 50) {
    CheckResult published{"theorem2", "published_closed_form_vs_mc"};
    CheckResult exact{"theorem2", "exact_closed_form_vs_mc"};
    CheckResult prob{"theorem2", "prob_rho1_geq_rho2_vs_mc"};
    CheckResult factor{"theorem2", "factorization_vs_mc"};
    const std::size_t draws = detail::mc_trials(cfg);
    const RandomSource base(cfg.seed, detail::kTheorem2);
    for (std::size_t k = 0; k < cases; ++k) {
        RandomSource rng = base.substream(k);
        SystemParams p = cfg.params;
        ChannelStats s = cfg.stats;
        p.p_a = db_to_linear(detail::uniform(rng, -10.0, 20.0));
        p.p_b_max = db_to_linear(detail::uniform(rng, -10.0, 30.0));
        s.lambda_aw = std::pow(10.0, detail::uniform(rng, -0.7, 0.7));
        s.lambda_bw = std::pow(10.0, detail::uniform(rng, -0.7, 0.7));
        const double t = t_of_powers(p, s);
        const ExpectedXiEstimate mc = mc_expected_xi(p, s, draws, base.substream(k + cases), cfg.threads);
        const double tol = 3.0 * mc.xi.std_error + 1e-3;
        published.add(std::abs(expected_xi_star(t) - mc.xi.value), tol);
        exact.add(std::abs(exact_expected_xi_star(t) - mc.xi.value), tol);
        const double pg = prob_rho1_geq_rho2(p, s);
        prob.add(std::abs(pg - mc.prob_rho1_geq.value), detail::mc_tolerance(pg, draws));
        factor.add(std::abs(mc.xi.value - pg * mc.conditional_xi.value),
                   3.0 * (mc.xi.std_error + pg * mc.conditional_xi.std_error) + 1e-3);
    }
    return {published, exact, prob, factor};
}

inline std::vector<CheckResult> verify_theorem3(const ScenarioConfig& cfg) {
    CheckResult active{"theorem3", "constraint_active_at_optimum"};
    CheckResult routes{"theorem3", "closed_form_vs_composition"};
    CheckResult direction{"theorem3", "optimality_direction"};
    CheckResult corollary{"theorem3", "limit_at_p_a_1e6"};
    CheckResult ladder{"theorem3", "rate_nondecreasing_in_p_a"};
    CheckResult saturation{"theorem3", "gap_to_limit_at_40db"};
    const XiModel model = cfg.xi_model;
    for (double eps : {0.05, 0.1, 0.2, 0.5}) {
        const SystemParams& p = cfg.params;
        const ChannelStats& s = cfg.stats;
        const double pb_star = optimal_pb_max(p.p_a, s, eps, model);
        SystemParams at = p;
        at.p_b_max = pb_star;
        active.add(std::abs(expected_xi_star(t_of_powers(at, s), model) - (1.0 - eps)), 1e-9);

        const double composed = max_covert_rate(p, s, eps, model);
        const double closed = max_covert_rate_closed_form(p, s, eps, model);
        routes.add(std::abs(closed - composed) / std::max(std::abs(composed), 1e-300), 1e-10);

        auto rate_at = [&](double pb) {
            SystemParams q = p;
            q.p_b_max = pb;
            return p.rate * outage_success_probability(make_outage_inputs(q, s));
        };
        SystemParams below = p;
        below.p_b_max = 0.95 * pb_star;
        int violations = 0;
        if (p.phi > 0.0 ? !(rate_at(1.05 * pb_star) < rate_at(pb_star)) : rate_at(1.05 * pb_star) > rate_at(pb_star))
            ++violations;
        if (!(expected_xi_star(t_of_powers(below, s), model) < 1.0 - eps)) ++violations;
        direction.add(violations, 0.0);

        const double limit = covert_rate_limit(s, p.rate, p.phi, eps, model);
        double prev = 0.0;
        double worst_drop = 0.0;
        for (double pa : {1.0, 10.0, 1e2, 1e4, 1e6}) {
            SystemParams q = p;
            q.p_a = pa;
            const double ratio = max_covert_rate(q, s, eps, model) / limit;
            worst_drop = std::max(worst_drop, prev - ratio);
            prev = ratio;
            if (pa == 1e4) saturation.add(1.0 - ratio, 0.01);
            if (pa == 1e6) corollary.add(std::abs(1.0 - ratio), 1e-4);
        }
        ladder.add(worst_drop, 0.0);
    }
    return {active, routes, direction, corollary, ladder, saturation};
}

/// Runs `suite` (one of verify_suites() or "all").
inline VerifyReport verify(const ScenarioConfig& cfg, std::string_view suite) {
    VerifyReport r;
    auto append = [&](std::vector<CheckResult> v) { r.checks.insert(r.checks.end(), v.begin(), v.end()); };
    const bool all = suite == "all";
    bool known = all;
    if (all || suite == "lemma1") known = true, append(verify_lemma1(cfg));
    if (all || suite == "theorem1") known = true, append(verify_theorem1(cfg));
    if (all || suite == "lemma2") known = true, append(verify_lemma2(cfg));
    if (all || suite == "theorem2") known = true, append(verify_theorem2(cfg));
    if (all || suite == "theorem3") known = true, append(verify_theorem3(cfg));
    if (!known) throw ConfigError("unknown verify suite '" + std::string(suite) + "'");
    return r;
}

inline Table to_table(const VerifyReport& report) {
    Table t;
    t.header = {"suite", "check", "cases", "deviation", "tolerance", "pass"};
    for (const auto& c : report.checks)
        t.rows.push_back({c.suite, c.name, std::to_string(c.cases), format_number(c.deviation),
                          format_number(c.tolerance), c.pass ? "pass" : "FAIL"});
    return t;
}

}  // namespace fdcovert::harness

#endif
