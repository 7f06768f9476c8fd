#ifndef FDCOVERT_DETECTION_HPP
#define FDCOVERT_DETECTION_HPP

// Willie's radiometer: false-alarm and miss-detection rates for a fixed
// (g_aw, g_bw) with P_b ~ U[0, p_b_max], the optimal threshold interval, and
// two independent oracles (threshold grid search, Monte-Carlo).

#include <algorithm>
#include <cstddef>
#include <limits>

#include "fdcovert/core_model.hpp"
#include "fdcovert/monte_carlo.hpp"

namespace fdcovert {

struct DetectionResult {
    double alpha = 0.0;  // false alarm, P(decide H1 | H0)
    double beta = 0.0;   // miss detection, P(decide H0 | H1)
    double xi = 0.0;     // alpha + beta
};

/// Threshold interval minimizing xi, and the minimum itself.
struct ThresholdSolution {
    double tau_lo = 0.0;
    double tau_hi = 0.0;
    double xi_star = 0.0;
};

namespace detail {

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

/// Width of the uniform AN contribution seen by Willie.
inline double an_span(const ChannelDraw& draw, const SystemParams& params) {
    return params.p_b_max * draw.g_bw;
}

}  // namespace detail

// With no AN at Willie (p_b_max*g_bw == 0) T_w is deterministic under each
// hypothesis and the rates reduce to the exact step probabilities
// P(T_w > tau | H0) and P(T_w < tau | H1).

inline double false_alarm_rate(double tau, const ChannelDraw& draw, const SystemParams& params) {
    const double span = detail::an_span(draw, params);
    if (span == 0.0) return tau < params.sigma2_w ? 1.0 : 0.0;
    if (tau < params.sigma2_w) return 1.0;
    const Rho rho = breakpoints(draw, params);
    if (tau > rho.rho1) return 0.0;
    return detail::clamp01(1.0 - (tau - params.sigma2_w) / span);
}

inline double miss_detection_rate(double tau, const ChannelDraw& draw, const SystemParams& params) {
    const Rho rho = breakpoints(draw, params);
    const double span = detail::an_span(draw, params);
    if (span == 0.0) return tau > rho.rho2 ? 1.0 : 0.0;
    if (tau < rho.rho2) return 0.0;
    if (tau > rho.rho3) return 1.0;
    return detail::clamp01((tau - rho.rho2) / span);
}

inline DetectionResult detection_error(double tau, const ChannelDraw& draw, const SystemParams& params) {
    DetectionResult r;
    r.alpha = false_alarm_rate(tau, draw, params);
    r.beta = miss_detection_rate(tau, draw, params);
    r.xi = r.alpha + r.beta;
    return r;
}

inline double xi_of_threshold(double tau, const ChannelDraw& draw, const SystemParams& params) {
    return false_alarm_rate(tau, draw, params) + miss_detection_rate(tau, draw, params);
}

/// Willie's best threshold. xi_star depends only on p_a*g_aw / (p_b_max*g_bw),
/// so it is computed from the two products and is exactly independent of sigma2_w.
inline ThresholdSolution optimal_threshold(const ChannelDraw& draw, const SystemParams& params) {
    const Rho rho = breakpoints(draw, params);
    const double span = detail::an_span(draw, params);
    const double signal = params.p_a * draw.g_aw;
    if (span == 0.0) return {params.sigma2_w, rho.rho2, 0.0};
    if (span < signal) return {rho.rho1, rho.rho2, 0.0};
    return {rho.rho2, rho.rho1, detail::clamp01(1.0 - signal / span)};
}

/// Brute-force minimization of xi over a uniform grid on [0, 1.1*rho3].
/// tau_lo/tau_hi are the first and last grid points attaining the minimum.
inline ThresholdSolution grid_search_threshold(const ChannelDraw& draw, const SystemParams& params,
                                               std::size_t grid_points) {
    if (grid_points < 100) throw ParameterError("grid_points must be >= 100");
    const double top = 1.1 * breakpoints(draw, params).rho3;
    const double step = top / static_cast<double>(grid_points - 1);
    ThresholdSolution best{0.0, 0.0, std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < grid_points; ++k) {
        const double tau = step * static_cast<double>(k);
        const double xi = xi_of_threshold(tau, draw, params);
        if (xi < best.xi_star) {
            best = {tau, tau, xi};
        } else if (xi == best.xi_star) {
            best.tau_hi = tau;
        }
    }
    return best;
}

inline double grid_step(const ChannelDraw& draw, const SystemParams& params, std::size_t grid_points) {
    return 1.1 * breakpoints(draw, params).rho3 / static_cast<double>(grid_points - 1);
}

namespace detail {

struct DetectionCounts {
    std::size_t false_alarms = 0;
    std::size_t misses = 0;
    DetectionCounts& operator+=(const DetectionCounts& o) {
        false_alarms += o.false_alarms;
        misses += o.misses;
        return *this;
    }
};

}  // namespace detail

/// Monte-Carlo oracle: gains fixed, P_b redrawn per trial; `trials` slots are
/// simulated under each hypothesis.
inline DetectionResult mc_detection_error(double tau, const ChannelDraw& draw, const SystemParams& params,
                                          std::size_t trials, const RandomSource& rng, unsigned threads = 0) {
    if (trials < 1000) throw ParameterError("trials must be >= 1000");
    auto counts = mc::run_chunked<detail::DetectionCounts>(
        trials, rng, threads, [&](RandomSource& sub, std::size_t n) {
            detail::DetectionCounts c;
            ChannelDraw slot = draw;
            for (std::size_t i = 0; i < n; ++i) {
                slot.p_b = sample_pb(params, sub);
                if (test_statistic(slot, params, false) > tau) ++c.false_alarms;
                slot.p_b = sample_pb(params, sub);
                if (test_statistic(slot, params, true) < tau) ++c.misses;
            }
            return c;
        });
    DetectionResult r;
    r.alpha = static_cast<double>(counts.false_alarms) / static_cast<double>(trials);
    r.beta = static_cast<double>(counts.misses) / static_cast<double>(trials);
    r.xi = r.alpha + r.beta;
    return r;
}

}  // namespace fdcovert

#endif
