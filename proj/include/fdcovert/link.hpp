#ifndef FDCOVERT_LINK_HPP
#define FDCOVERT_LINK_HPP

// Alice -> Bob link: SINR under residual self-interference and the
// transmission outage probability for Rayleigh fading with P_b ~ U[0, p_b_max].

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "fdcovert/core_model.hpp"
#include "fdcovert/monte_carlo.hpp"

namespace fdcovert {

struct OutageInputs {
    SystemParams params;
    ChannelStats stats;
    double mu = 0.0;  // (2^R - 1) / p_a
};

inline OutageInputs make_outage_inputs(const SystemParams& params, const ChannelStats& stats) {
    validate(params);
    validate(stats);
    return {params, stats, std::expm1(params.rate * std::log(2.0)) / params.p_a};
}

inline double sinr_bob(const ChannelDraw& draw, const SystemParams& params) {
    return params.p_a * draw.g_ab / (params.phi * draw.p_b * draw.g_bb + params.sigma2_b);
}

namespace detail {

/// ln(1 + r) / r, continuous at r = 0.
inline double log1p_ratio(double r) {
    if (r < 1e-6) return 1.0 - r / 2.0 + r * r / 3.0;
    return std::log1p(r) / r;
}

}  // namespace detail

/// 1 - delta, evaluated directly so tiny success probabilities keep their precision.
inline double outage_success_probability(const OutageInputs& in) {
    const double x = in.mu * in.params.phi * in.stats.lambda_bb * in.params.p_b_max;
    return std::clamp(std::exp(-in.mu * in.params.sigma2_b / in.stats.lambda_ab) *
                          detail::log1p_ratio(x / in.stats.lambda_ab),
                      0.0, 1.0);
}

/// Closed-form outage probability P(log2(1 + gamma_b) < R).
inline double outage_probability(const OutageInputs& in) { return 1.0 - outage_success_probability(in); }

/// Monte-Carlo outage oracle over (g_ab, g_bb, P_b).
inline Estimate mc_outage(const OutageInputs& in, std::size_t samples, const RandomSource& rng,
                          unsigned threads = 0) {
    if (samples < 1000) throw ParameterError("samples must be >= 1000");
    const std::size_t outages = mc::run_chunked<std::size_t>(
        samples, rng, threads, [&](RandomSource& sub, std::size_t n) {
            std::size_t count = 0;
            ChannelDraw d;
            for (std::size_t i = 0; i < n; ++i) {
                d.g_ab = sample_gain(in.stats.lambda_ab, sub);
                d.g_bb = sample_gain(in.stats.lambda_bb, sub);
                d.p_b = sample_pb(in.params, sub);
                if (std::log2(1.0 + sinr_bob(d, in.params)) < in.params.rate) ++count;
            }
            return count;
        });
    const double p = static_cast<double>(outages) / static_cast<double>(samples);
    return {p, binomial_stderr(p, samples), samples};
}

}  // namespace fdcovert

#endif
