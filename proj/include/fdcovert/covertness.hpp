#ifndef FDCOVERT_COVERTNESS_HPP
#define FDCOVERT_COVERTNESS_HPP

// Covertness over fading: expected minimum detection error at Willie as a
// function of t = p_a*lambda_aw / (p_a*lambda_aw + p_b_max*lambda_bw), the
// root-solve for the covert constraint, and the AN-power cap maximizing the
// effective covert rate R*(1 - delta).

#include <cmath>
#include <cstddef>
#include <string>

#include "fdcovert/core_model.hpp"
#include "fdcovert/detection.hpp"
#include "fdcovert/link.hpp"
#include "fdcovert/monte_carlo.hpp"

namespace fdcovert {

/// Which closed form of the expected detection error to use.
///
/// `published` is -t^2 + t ln t + 1. `exact` is 1 + t ln t / (1 - t), the
/// mean of xi* over exponential g_aw, g_bw (what the Monte-Carlo oracle
/// measures). Both are strictly decreasing on (0, 1) with the same limits.
enum class XiModel { published, exact };

inline std::string to_string(XiModel m) { return m == XiModel::published ? "published" : "exact"; }

struct CovertDesign {
    double epsilon = 1.0;
    double t_eps = 1.0;
    double p_b_max_star = 0.0;
    double r_c_star = 0.0;
};

inline double t_of_powers(const SystemParams& params, const ChannelStats& stats) {
    const double a = params.p_a * stats.lambda_aw;
    const double b = params.p_b_max * stats.lambda_bw;
    return a / (a + b);
}

namespace detail {

inline void require_t(double t) {
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("t must lie in (0, 1]");
}

}  // namespace detail

inline double expected_xi_star(double t) {
    detail::require_t(t);
    return -t * t + t * std::log(t) + 1.0;
}

inline double exact_expected_xi_star(double t) {
    detail::require_t(t);
    const double u = 1.0 - t;
    // -ln(t) / (1 - t) -> 1 + u/2 + u^2/3 as t -> 1
    if (u < 1e-8) return 1.0 - t * (1.0 + u / 2.0 + u * u / 3.0);
    return 1.0 + t * std::log(t) / u;
}

inline double expected_xi_star(double t, XiModel model) {
    return model == XiModel::published ? expected_xi_star(t) : exact_expected_xi_star(t);
}

inline double prob_rho1_geq_rho2(const SystemParams& params, const ChannelStats& stats) {
    return 1.0 - t_of_powers(params, stats);
}

struct ExpectedXiEstimate {
    Estimate xi;                // E[xi*]
    Estimate prob_rho1_geq;     // P[rho1 >= rho2]
    Estimate conditional_xi;    // E[xi* | rho1 >= rho2]
};

namespace detail {

struct ExpectedXiAcc {
    mc::Moments xi;
    std::size_t geq = 0;
    mc::Moments xi_given_geq;
    ExpectedXiAcc& operator+=(const ExpectedXiAcc& o) {
        xi += o.xi;
        geq += o.geq;
        xi_given_geq += o.xi_given_geq;
        return *this;
    }
};

}  // namespace detail

/// Averages Willie's per-draw minimum detection error over (g_aw, g_bw).
inline ExpectedXiEstimate mc_expected_xi(const SystemParams& params, const ChannelStats& stats, std::size_t draws,
                                         const RandomSource& rng, unsigned threads = 0) {
    if (draws < 1000) throw ParameterError("draws must be >= 1000");
    auto acc = mc::run_chunked<detail::ExpectedXiAcc>(draws, rng, threads, [&](RandomSource& sub, std::size_t n) {
        detail::ExpectedXiAcc a;
        ChannelDraw d;
        for (std::size_t i = 0; i < n; ++i) {
            d.g_aw = sample_gain(stats.lambda_aw, sub);
            d.g_bw = sample_gain(stats.lambda_bw, sub);
            const double xi = optimal_threshold(d, params).xi_star;
            a.xi.add(xi);
            const double span = params.p_b_max * d.g_bw;
            if (span > 0.0 && span >= params.p_a * d.g_aw) {
                ++a.geq;
                a.xi_given_geq.add(xi);
            }
        }
        return a;
    });
    ExpectedXiEstimate e;
    e.xi = {acc.xi.mean(), acc.xi.stderr_of_mean(), acc.xi.n};
    const double p = static_cast<double>(acc.geq) / static_cast<double>(draws);
    e.prob_rho1_geq = {p, binomial_stderr(p, draws), draws};
    e.conditional_xi = {acc.xi_given_geq.mean(), acc.xi_given_geq.stderr_of_mean(), acc.xi_given_geq.n};
    return e;
}

/// Root of xi_bar*(t) = 1 - epsilon by bisection on [1e-15, 1].
inline double solve_t_epsilon(double epsilon, XiModel model = XiModel::published) {
    if (epsilon == 0.0) throw UnsatisfiableError("epsilon = 0 requires unbounded AN power");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
    if (epsilon == 1.0) return 1.0;

    const double target = 1.0 - epsilon;
    auto residual = [&](double t) { return expected_xi_star(t, model) - target; };
    double lo = 1e-15;
    double hi = 1.0;
    double best = lo;
    double best_res = std::abs(residual(lo));
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double r = residual(mid);
        if (std::abs(r) < best_res) {
            best = mid;
            best_res = std::abs(r);
        }
        if (best_res <= 1e-12 || mid == lo || mid == hi) break;
        // residual is decreasing in t
        (r > 0.0 ? lo : hi) = mid;
    }
    return best;
}

inline double optimal_pb_max(double p_a, const ChannelStats& stats, double epsilon,
                             XiModel model = XiModel::published) {
    const double t = solve_t_epsilon(epsilon, model);
    return p_a * stats.lambda_aw * (1.0 - t) / (t * stats.lambda_bw);
}

/// R*(1 - delta) at the optimal AN cap; params.p_b_max is ignored.
inline double max_covert_rate(const SystemParams& params, const ChannelStats& stats, double epsilon,
                              XiModel model = XiModel::published) {
    SystemParams at_opt = params;
    at_opt.p_b_max = optimal_pb_max(params.p_a, stats, epsilon, model);
    return params.rate * outage_success_probability(make_outage_inputs(at_opt, stats));
}

namespace detail {

/// R * lambda_ab * ln(k/lambda_ab + 1) / k, with k the interference term at t_eps.
inline double covert_rate_factor(const ChannelStats& stats, double rate, double phi, double t_eps) {
    const double k = std::expm1(rate * std::log(2.0)) * phi * stats.lambda_bb * stats.lambda_aw * (1.0 - t_eps) /
                     (stats.lambda_bw * t_eps);
    return rate * detail::log1p_ratio(k / stats.lambda_ab);
}

}  // namespace detail

/// The long closed form for the maximum effective covert rate, kept separate
/// from max_covert_rate() so the two routes can be checked against each other.
inline double max_covert_rate_closed_form(const SystemParams& params, const ChannelStats& stats, double epsilon,
                                          XiModel model = XiModel::published) {
    const double t = solve_t_epsilon(epsilon, model);
    const double c = std::expm1(params.rate * std::log(2.0));
    return std::exp(-c * params.sigma2_b / (params.p_a * stats.lambda_ab)) *
           detail::covert_rate_factor(stats, params.rate, params.phi, t);
}

/// Limit of the maximum effective covert rate as p_a -> infinity.
inline double covert_rate_limit(const ChannelStats& stats, double rate, double phi, double epsilon,
                                XiModel model = XiModel::published) {
    return detail::covert_rate_factor(stats, rate, phi, solve_t_epsilon(epsilon, model));
}

inline CovertDesign design_covert(const SystemParams& params, const ChannelStats& stats, double epsilon,
                                  XiModel model = XiModel::published) {
    CovertDesign d;
    d.epsilon = epsilon;
    d.t_eps = solve_t_epsilon(epsilon, model);
    d.p_b_max_star = params.p_a * stats.lambda_aw * (1.0 - d.t_eps) / (d.t_eps * stats.lambda_bw);
    SystemParams at_opt = params;
    at_opt.p_b_max = d.p_b_max_star;
    d.r_c_star = params.rate * outage_success_probability(make_outage_inputs(at_opt, stats));
    return d;
}

}  // namespace fdcovert

#endif
