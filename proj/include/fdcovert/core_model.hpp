#ifndef FDCOVERT_CORE_MODEL_HPP
#define FDCOVERT_CORE_MODEL_HPP

// Scenario types, Rayleigh/uniform samplers and Willie's received-power
// statistic for the full-duplex covert link Alice -> Bob watched by Willie.
// All powers are linear (W); dB conversion belongs to the CLI.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "fdcovert/errors.hpp"

namespace fdcovert {

/// Mean squared gains of the four Rayleigh links.
struct ChannelStats {
    double lambda_ab = 1.0;  // Alice -> Bob
    double lambda_bb = 1.0;  // Bob self-interference
    double lambda_aw = 1.0;  // Alice -> Willie
    double lambda_bw = 1.0;  // Bob -> Willie
};

struct SystemParams {
    double p_a = 1.0;       // Alice transmit power
    double p_b_max = 1.0;   // upper limit of Bob's uniformly drawn AN power
    double sigma2_b = 1.0;  // noise variance at Bob
    double sigma2_w = 1.0;  // noise variance at Willie
    double phi = 0.01;      // self-interference cancellation coefficient
    double rate = 1.0;      // predetermined rate R, bits/channel use
};

/// One slot: squared channel magnitudes plus the AN power Bob used.
struct ChannelDraw {
    double g_ab = 0.0;
    double g_bb = 0.0;
    double g_aw = 0.0;
    double g_bw = 0.0;
    double p_b = 0.0;
};

/// Willie's received-power breakpoints for a fixed (g_aw, g_bw).
struct Rho {
    double rho1 = 0.0;  // p_b_max*g_bw + sigma2_w
    double rho2 = 0.0;  // p_a*g_aw + sigma2_w
    double rho3 = 0.0;  // rho1 + rho2 - sigma2_w
};

namespace detail {

inline bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ParameterError(what);
}

}  // namespace detail

inline void validate(const ChannelStats& s) {
    using detail::positive_finite;
    detail::require(positive_finite(s.lambda_ab), "lambda_ab must be positive and finite");
    detail::require(positive_finite(s.lambda_bb), "lambda_bb must be positive and finite");
    detail::require(positive_finite(s.lambda_aw), "lambda_aw must be positive and finite");
    detail::require(positive_finite(s.lambda_bw), "lambda_bw must be positive and finite");
}

inline void validate(const SystemParams& p) {
    using detail::positive_finite;
    detail::require(positive_finite(p.p_a), "p_a must be positive and finite");
    detail::require(std::isfinite(p.p_b_max) && p.p_b_max >= 0.0, "p_b_max must be >= 0 and finite");
    detail::require(positive_finite(p.sigma2_b), "sigma2_b must be positive and finite");
    detail::require(positive_finite(p.sigma2_w), "sigma2_w must be positive and finite");
    detail::require(std::isfinite(p.phi) && p.phi >= 0.0 && p.phi <= 1.0, "phi must lie in [0, 1]");
    detail::require(positive_finite(p.rate), "rate must be positive and finite");
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seeded Mersenne-Twister stream. The same (seed, stream) pair always
/// yields the same sequence; substream() derives independent children so
/// parallel work can be split without sharing state.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    RandomSource substream(std::uint64_t index) const {
        return RandomSource(seed_, splitmix64(splitmix64(stream_) ^ (index + 0x632BE59BD9B4E019ULL)));
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        return std::mt19937_64(seq);
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

/// |h|^2 of a Rayleigh link: exponential with the given mean.
inline double sample_gain(double mean, RandomSource& rng) {
    if (!detail::positive_finite(mean)) throw ParameterError("gain mean must be positive and finite");
    return -mean * std::log1p(-rng.uniform01());
}

/// Bob's AN power for one slot, uniform on [0, p_b_max].
inline double sample_pb(const SystemParams& params, RandomSource& rng) {
    if (params.p_b_max == 0.0) return 0.0;
    return params.p_b_max * rng.uniform01();
}

inline ChannelDraw sample_draw(const SystemParams& params, const ChannelStats& stats, RandomSource& rng) {
    ChannelDraw d;
    d.g_ab = sample_gain(stats.lambda_ab, rng);
    d.g_bb = sample_gain(stats.lambda_bb, rng);
    d.g_aw = sample_gain(stats.lambda_aw, rng);
    d.g_bw = sample_gain(stats.lambda_bw, rng);
    d.p_b = sample_pb(params, rng);
    return d;
}

/// Average received power at Willie for n -> infinity channel uses.
inline double test_statistic(const ChannelDraw& draw, const SystemParams& params, bool alice_transmits) {
    const double h0 = draw.p_b * draw.g_bw + params.sigma2_w;
    return alice_transmits ? params.p_a * draw.g_aw + h0 : h0;
}

inline Rho breakpoints(const ChannelDraw& draw, const SystemParams& params) {
    Rho r;
    r.rho1 = params.p_b_max * draw.g_bw + params.sigma2_w;
    r.rho2 = params.p_a * draw.g_aw + params.sigma2_w;
    r.rho3 = r.rho1 + r.rho2 - params.sigma2_w;
    return r;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace fdcovert

#endif
