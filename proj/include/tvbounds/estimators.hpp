#pragma once

// Stochastic baselines: importance-sampled TV with a confidence interval,
// a Monte Carlo KL estimate, and the Pinsker upper bound derived from it.
// None of these are deterministic bounds; they exist for comparison.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

#include "tvbounds/errors.hpp"
#include "tvbounds/mixture.hpp"

namespace tvbounds {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

namespace detail {

inline MCEstimate summarize(double sum, double sum_sq, std::size_t n, std::uint64_t seed) {
    MCEstimate e;
    e.n = n;
    e.seed = seed;
    e.mean = sum / static_cast<double>(n);
    const double var =
        n > 1 ? std::max(0.0, (sum_sq - sum * e.mean) / static_cast<double>(n - 1)) : 0.0;
    e.std_error = std::sqrt(var / static_cast<double>(n));
    e.ci95_lo = e.mean - 1.96 * e.std_error;
    e.ci95_hi = e.mean + 1.96 * e.std_error;
    return e;
}

// Equal-weight blend of the two mixtures, the default proposal; it
// dominates |m - m'| wherever that is nonzero.
inline Mixture blend(const Mixture& m, const Mixture& m_prime) {
    std::vector<Component> comps = m.components();
    std::vector<double> w;
    for (double wi : m.weights()) w.push_back(0.5 * wi);
    for (std::size_t i = 0; i < m_prime.size(); ++i) {
        comps.push_back(m_prime.component(i));
        w.push_back(0.5 * m_prime.weight(i));
    }
    return Mixture(std::move(comps), std::move(w));
}

}  // namespace detail

// Importance-sampling estimate of TV(m, m') using `proposal` (default: the
// equal blend of m and m'). Deterministic per seed.
inline MCEstimate mc_tv(const Mixture& m, const Mixture& m_prime, std::size_t n,
                        std::uint64_t seed, const std::optional<Mixture>& proposal = {}) {
    if (n < 1) throw std::invalid_argument("mc_tv: n must be >= 1");
    const Mixture r = proposal ? *proposal : detail::blend(m, m_prime);
    std::mt19937_64 rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = r.sample_one(rng);
        const double diff = std::abs(m.pdf(x) - m_prime.pdf(x));
        double v = 0.0;
        if (diff != 0.0) {
            const double rx = r.pdf(x);
            if (rx <= 0.0)
                throw numerical_error("mc_tv: proposal density is zero at a sampled point");
            v = 0.5 * diff / rx;
        }
        sum += v;
        sum_sq += v * v;
    }
    return detail::summarize(sum, sum_sq, n, seed);
}

// Monte Carlo KL(m : m') in nats, sampling from m.
inline MCEstimate mc_kl(const Mixture& m, const Mixture& m_prime, std::size_t n,
                        std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("mc_kl: n must be >= 1");
    std::mt19937_64 rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = m.sample_one(rng);
        const double num = m.pdf(x);
        const double den = m_prime.pdf(x);
        double v = 0.0;
        if (num != den) {
            if (den <= 0.0)
                throw numerical_error("mc_kl: second mixture has zero density at a sampled point");
            v = std::log(num / den);
        }
        sum += v;
        sum_sq += v * v;
    }
    return detail::summarize(sum, sum_sq, n, seed);
}

// TV <= sqrt(KL / 2) with KL in nats. Uncapped; callers may min with 1.
inline double pinsker_upper(double kl_nats) {
    if (!(kl_nats >= 0.0)) throw std::invalid_argument("pinsker_upper: KL must be nonnegative");
    return std::sqrt(0.5 * kl_nats);
}

}  // namespace tvbounds
