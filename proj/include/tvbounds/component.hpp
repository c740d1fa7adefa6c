#pragma once

// Univariate exponential-family components: Gaussian on the real line,
// Gamma and Rayleigh on the positive half-line. Densities, CDFs and
// survival functions, interval masses, the natural parameterization
// (theta, t(x), F(theta), carrier), and seeded sampling.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <variant>

#include "tvbounds/special_functions.hpp"

namespace tvbounds {

inline constexpr double kPi = 3.14159265358979323846;

struct Gaussian {
    double mu = 0.0;
    double sigma = 1.0;
    friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

struct Gamma {
    double shape = 1.0;  // k
    double rate = 1.0;   // lambda; density rate^shape x^{shape-1} e^{-rate x} / Gamma(shape)
    friend bool operator==(const Gamma&, const Gamma&) = default;
};

struct Rayleigh {
    double scale = 1.0;  // sigma; density (x/sigma^2) e^{-x^2 / (2 sigma^2)}
    friend bool operator==(const Rayleigh&, const Rayleigh&) = default;
};

using Component = std::variant<Gaussian, Gamma, Rayleigh>;

enum class Family { gaussian, gamma, rayleigh };

inline Family family_of(const Component& c) {
    if (std::holds_alternative<Gaussian>(c)) return Family::gaussian;
    if (std::holds_alternative<Gamma>(c)) return Family::gamma;
    return Family::rayleigh;
}

// True when the support is (0, inf) rather than the whole real line.
inline bool positive_support(const Component& c) {
    return !std::holds_alternative<Gaussian>(c);
}

inline void validate(const Component& c) {
    auto bad = [](const char* msg) { return std::invalid_argument(msg); };
    if (const auto* g = std::get_if<Gaussian>(&c)) {
        if (!std::isfinite(g->mu)) throw bad("Gaussian: mu must be finite");
        if (!(g->sigma > 0.0) || !std::isfinite(g->sigma)) throw bad("Gaussian: sigma must be positive and finite");
    } else if (const auto* g = std::get_if<Gamma>(&c)) {
        if (!(g->shape > 0.0) || !std::isfinite(g->shape)) throw bad("Gamma: shape must be positive and finite");
        if (!(g->rate > 0.0) || !std::isfinite(g->rate)) throw bad("Gamma: rate must be positive and finite");
    } else {
        const auto& r = std::get<Rayleigh>(c);
        if (!(r.scale > 0.0) || !std::isfinite(r.scale)) throw bad("Rayleigh: scale must be positive and finite");
    }
}

// Natural parameterization p(x) = carrier(x) exp(theta . t(x) - F(theta)):
//   Gaussian: theta = (mu/sigma^2, -1/(2 sigma^2)), t(x) = (x, x^2),  carrier 1
//   Gamma:    theta = (shape-1, -rate),             t(x) = (ln x, x), carrier 1
//   Rayleigh: theta = -1/(2 scale^2),               t(x) = x^2,       carrier x
struct NaturalForm {
    Family family;
    std::array<double, 2> theta{0.0, 0.0};
    int stat_arity = 0;
    double log_normalizer = 0.0;  // F(theta)
};

inline NaturalForm natural_form(const Component& c) {
    NaturalForm nf;
    if (const auto* g = std::get_if<Gaussian>(&c)) {
        const double s2 = g->sigma * g->sigma;
        nf.family = Family::gaussian;
        nf.theta = {g->mu / s2, -0.5 / s2};
        nf.stat_arity = 2;
        nf.log_normalizer = g->mu * g->mu / (2.0 * s2) + std::log(g->sigma * std::sqrt(2.0 * kPi));
    } else if (const auto* g = std::get_if<Gamma>(&c)) {
        nf.family = Family::gamma;
        nf.theta = {g->shape - 1.0, -g->rate};
        nf.stat_arity = 2;
        nf.log_normalizer = log_gamma(g->shape) - g->shape * std::log(g->rate);
    } else {
        const auto& r = std::get<Rayleigh>(c);
        nf.family = Family::rayleigh;
        nf.theta = {-0.5 / (r.scale * r.scale), 0.0};
        nf.stat_arity = 1;
        nf.log_normalizer = 2.0 * std::log(r.scale);
    }
    return nf;
}

// ln p(x); -inf outside the support.
inline double log_pdf(const Component& c, double x) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    if (const auto* g = std::get_if<Gaussian>(&c)) {
        const double z = (x - g->mu) / g->sigma;
        return -0.5 * z * z - std::log(g->sigma * std::sqrt(2.0 * kPi));
    }
    if (x <= 0.0) return neg_inf;
    if (const auto* g = std::get_if<Gamma>(&c)) {
        return (g->shape - 1.0) * std::log(x) - g->rate * x + g->shape * std::log(g->rate) -
               log_gamma(g->shape);
    }
    const auto& r = std::get<Rayleigh>(c);
    const double s2 = r.scale * r.scale;
    return std::log(x / s2) - 0.5 * x * x / s2;
}

inline double pdf(const Component& c, double x) {
    if (positive_support(c) && x <= 0.0) return 0.0;
    // Gamma with shape < 1 diverges at 0+; the density is defined on the open support.
    const double lp = log_pdf(c, x);
    return std::exp(lp);
}

inline double cdf(const Component& c, double x) {
    if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
    if (const auto* g = std::get_if<Gaussian>(&c)) {
        const double z = (x - g->mu) / (g->sigma * std::sqrt(2.0));
        return 0.5 * erfc(-z);
    }
    if (x <= 0.0) return 0.0;
    if (const auto* g = std::get_if<Gamma>(&c)) return reg_lower_incomplete_gamma(g->shape, g->rate * x);
    const auto& r = std::get<Rayleigh>(c);
    return -std::expm1(-0.5 * x * x / (r.scale * r.scale));
}

// Survival function 1 - cdf, computed without cancellation in the right tail.
inline double sf(const Component& c, double x) {
    if (std::isinf(x)) return x > 0.0 ? 0.0 : 1.0;
    if (const auto* g = std::get_if<Gaussian>(&c)) {
        const double z = (x - g->mu) / (g->sigma * std::sqrt(2.0));
        return 0.5 * erfc(z);
    }
    if (x <= 0.0) return 1.0;
    if (const auto* g = std::get_if<Gamma>(&c)) return reg_upper_incomplete_gamma(g->shape, g->rate * x);
    const auto& r = std::get<Rayleigh>(c);
    return std::exp(-0.5 * x * x / (r.scale * r.scale));
}

// Phi(b) - Phi(a), picking the tail that keeps precision.
inline double interval_mass(const Component& c, double a, double b) {
    if (!(a <= b)) throw std::invalid_argument("interval_mass: requires a <= b");
    const double mass = cdf(c, a) >= 0.5 ? sf(c, a) - sf(c, b) : cdf(c, b) - cdf(c, a);
    return mass < 0.0 ? 0.0 : mass;
}

namespace detail {

// Uniform in [0, 1) with 53 random bits; the basis of every sampler here,
// so streams are reproducible bit-for-bit given the seed.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; consumes exactly two draws.
inline double standard_normal(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// Marsaglia-Tsang squeeze for shape >= 1; boosted below 1.
inline double gamma_draw(double shape, double rate, std::mt19937_64& rng) {
    if (shape < 1.0) {
        const double u = uniform01(rng);
        return gamma_draw(shape + 1.0, rate, rng) * std::pow(1.0 - u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double cc = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = standard_normal(rng);
            v = 1.0 + cc * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01(rng);
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

}  // namespace detail

inline double sample(const Component& c, std::mt19937_64& rng) {
    if (const auto* g = std::get_if<Gaussian>(&c)) return g->mu + g->sigma * detail::standard_normal(rng);
    if (const auto* g = std::get_if<Gamma>(&c)) return detail::gamma_draw(g->shape, g->rate, rng);
    const auto& r = std::get<Rayleigh>(c);
    const double u = detail::uniform01(rng);
    return r.scale * std::sqrt(-2.0 * std::log1p(-u));  // inverse CDF
}

}  // namespace tvbounds
