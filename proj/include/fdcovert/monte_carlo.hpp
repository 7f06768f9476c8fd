#ifndef FDCOVERT_MONTE_CARLO_HPP
#define FDCOVERT_MONTE_CARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <thread>
#include <vector>

#include "fdcovert/core_model.hpp"

namespace fdcovert {

/// Monte-Carlo estimate of a mean with its standard error.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Binomial standard error sqrt(p(1-p)/n).
inline double binomial_stderr(double p, std::size_t n) {
    if (n == 0) return 0.0;
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

namespace mc {

inline constexpr std::size_t kChunkSize = 16384;

inline unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits `samples` into fixed-size chunks; chunk k runs `body(rng.substream(k), n_k)`
/// and the per-chunk accumulators are summed in chunk order. The chunk layout
/// depends only on `samples`, so the result does not depend on `threads`.
template <class Acc, class Body>
Acc run_chunked(std::size_t samples, const RandomSource& rng, unsigned threads, Body body) {
    const std::size_t chunks = (samples + kChunkSize - 1) / kChunkSize;
    std::vector<Acc> partial(chunks);
    auto run_range = [&](std::size_t first, std::size_t last) {
        for (std::size_t k = first; k < last; ++k) {
            RandomSource sub = rng.substream(k);
            const std::size_t n = std::min(kChunkSize, samples - k * kChunkSize);
            partial[k] = body(sub, n);
        }
    };

    const unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(chunks, 1));
    if (workers <= 1) {
        run_range(0, chunks);
    } else {
        std::vector<std::future<void>> jobs;
        const std::size_t per = (chunks + workers - 1) / workers;
        for (std::size_t first = 0; first < chunks; first += per)
            jobs.push_back(std::async(std::launch::async, run_range, first, std::min(chunks, first + per)));
        for (auto& j : jobs) j.get();
    }

    Acc total{};
    for (const auto& p : partial) total += p;
    return total;
}

/// Running sum and sum of squares.
struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;

    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    Moments& operator+=(const Moments& o) {
        sum += o.sum;
        sum_sq += o.sum_sq;
        n += o.n;
        return *this;
    }
    double mean() const { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
    double stderr_of_mean() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double var = std::max(sum_sq / static_cast<double>(n) - m * m, 0.0);
        return std::sqrt(var * static_cast<double>(n) / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

}  // namespace mc
}  // namespace fdcovert

#endif
