#pragma once

// Random mixture generators for the experiment harness and the test
// suites. Gaussian mixtures follow the protocol: component means drawn
// from N(0, mean_std^2), precisions 1/sigma^2 from a Gamma law given by
// shape and scale (defaults: shape 5, scale 0.2, so mean precision 1),
// equal weights. Gamma and Rayleigh mixtures draw their parameters
// log-uniformly.

#include <cmath>
#include <random>
#include <vector>

#include "tvbounds/mixture.hpp"

namespace tvbounds {

struct GaussianProtocol {
    double mean_std = 1.0;     // dataset 1: 1.0, dataset 2: 5.0
    double prec_shape = 5.0;   // precision ~ Gamma(shape, scale)
    double prec_scale = 0.2;
};

inline Mixture random_gaussian_mixture(int k, const GaussianProtocol& proto,
                                       std::mt19937_64& rng) {
    if (k < 1) throw std::invalid_argument("random_gaussian_mixture: k must be >= 1");
    std::vector<Component> comps;
    std::vector<double> weights(k, 1.0 / k);
    for (int i = 0; i < k; ++i) {
        const double mu = proto.mean_std * detail::standard_normal(rng);
        const double precision = detail::gamma_draw(proto.prec_shape, 1.0 / proto.prec_scale, rng);
        comps.push_back(Gaussian{mu, 1.0 / std::sqrt(precision)});
    }
    return Mixture(std::move(comps), std::move(weights));
}

namespace detail {

inline double log_uniform(double lo, double hi, std::mt19937_64& rng) {
    return lo * std::exp(uniform01(rng) * std::log(hi / lo));
}

}  // namespace detail

inline Mixture random_gamma_mixture(int k, double param_lo, double param_hi,
                                    std::mt19937_64& rng) {
    if (k < 1) throw std::invalid_argument("random_gamma_mixture: k must be >= 1");
    std::vector<Component> comps;
    std::vector<double> weights(k, 1.0 / k);
    for (int i = 0; i < k; ++i) {
        const double shape = detail::log_uniform(param_lo, param_hi, rng);
        const double rate = detail::log_uniform(param_lo, param_hi, rng);
        comps.push_back(Gamma{shape, rate});
    }
    return Mixture(std::move(comps), std::move(weights));
}

inline Mixture random_rayleigh_mixture(int k, double param_lo, double param_hi,
                                       std::mt19937_64& rng) {
    if (k < 1) throw std::invalid_argument("random_rayleigh_mixture: k must be >= 1");
    std::vector<Component> comps;
    std::vector<double> weights(k, 1.0 / k);
    for (int i = 0; i < k; ++i)
        comps.push_back(Rayleigh{detail::log_uniform(param_lo, param_hi, rng)});
    return Mixture(std::move(comps), std::move(weights));
}

}  // namespace tvbounds
