#pragma once

// Finite mixture models over the components of component.hpp. Mixtures are
// immutable after construction; weights are validated and renormalized to
// sum to one exactly (a relaxed positive-measure mode skips that, for the
// shared-component weight bound).

#include <cstddef>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "tvbounds/component.hpp"
#include "tvbounds/summation.hpp"

namespace tvbounds {

class Mixture {
public:
    Mixture(std::vector<Component> components, std::vector<double> weights)
        : Mixture(std::move(components), std::move(weights), true) {}

    // Positive-measure mode: weights need not sum to one.
    static Mixture positive_measure(std::vector<Component> components,
                                    std::vector<double> weights) {
        return Mixture(std::move(components), std::move(weights), false);
    }

    std::size_t size() const { return components_.size(); }
    const Component& component(std::size_t i) const { return components_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<Component>& components() const { return components_; }
    const std::vector<double>& weights() const { return weights_; }
    bool normalized() const { return normalized_; }

    // True when any component lives on the full real line.
    bool spans_real_line() const {
        for (const auto& c : components_)
            if (!positive_support(c)) return true;
        return false;
    }

    // The single family shared by all components, if there is one.
    std::optional<Family> homogeneous_family() const {
        const Family f = family_of(components_.front());
        for (const auto& c : components_)
            if (family_of(c) != f) return std::nullopt;
        return f;
    }

    double pdf(double x) const {
        KahanSum s;
        for (std::size_t i = 0; i < components_.size(); ++i)
            s.add(weights_[i] * tvbounds::pdf(components_[i], x));
        return s.value();
    }

    double mass(double a, double b) const {
        if (!(a <= b)) throw std::invalid_argument("Mixture::mass: requires a <= b");
        KahanSum s;
        for (std::size_t i = 0; i < components_.size(); ++i)
            s.add(weights_[i] * interval_mass(components_[i], a, b));
        return s.value();
    }

    double sample_one(std::mt19937_64& rng) const {
        const double u = detail::uniform01(rng) * weight_total_;
        double acc = 0.0;
        std::size_t pick = components_.size() - 1;
        for (std::size_t i = 0; i < components_.size(); ++i) {
            acc += weights_[i];
            if (u < acc) {
                pick = i;
                break;
            }
        }
        return tvbounds::sample(components_[pick], rng);
    }

    std::vector<double> sample(std::mt19937_64& rng, std::size_t n) const {
        std::vector<double> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(sample_one(rng));
        return out;
    }

    // [lo, hi] holding all but tail_eps of the mass, via doubling searches on
    // the component tails. Used for plotting grids and bin partitions.
    std::pair<double, double> support_bracket(double tail_eps = 1e-12) const {
        const double per = tail_eps / (2.0 * static_cast<double>(components_.size()));
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& c : components_) {
            double center, step;
            if (const auto* g = std::get_if<Gaussian>(&c)) {
                center = g->mu;
                step = g->sigma;
            } else if (const auto* g = std::get_if<Gamma>(&c)) {
                center = g->shape / g->rate;
                step = (std::sqrt(g->shape) + 1.0) / g->rate;
            } else {
                center = std::get<Rayleigh>(c).scale;
                step = std::get<Rayleigh>(c).scale;
            }
            double l = positive_support(c) ? 0.0 : center - step;
            double h = center + step;
            while (!positive_support(c) && cdf(c, l) > per) l = center - (center - l) * 2.0;
            while (sf(c, h) > per) h = center + (h - center) * 2.0;
            lo = std::min(lo, l);
            hi = std::max(hi, h);
        }
        return {lo, hi};
    }

private:
    Mixture(std::vector<Component> components, std::vector<double> weights, bool normalize)
        : components_(std::move(components)), weights_(std::move(weights)),
          normalized_(normalize) {
        if (components_.empty() || components_.size() != weights_.size())
            throw std::invalid_argument("Mixture: needs one weight per component, at least one");
        for (const auto& c : components_) validate(c);
        double total = 0.0;
        for (double w : weights_) {
            // Positive-measure mode admits zero weights (zero-padded shared
            // component lists); normalized mixtures require strictly positive.
            if (!(normalize ? w > 0.0 : w >= 0.0) || !std::isfinite(w))
                throw std::invalid_argument("Mixture: weights must be positive and finite");
            total += w;
        }
        if (normalize) {
            if (std::abs(total - 1.0) > 1e-6)
                throw std::invalid_argument("Mixture: weights must sum to 1 within 1e-6");
            for (double& w : weights_) w /= total;
            weight_total_ = 1.0;
        } else {
            weight_total_ = total;
        }
    }

    std::vector<Component> components_;
    std::vector<double> weights_;
    double weight_total_ = 1.0;
    bool normalized_ = true;
};

}  // namespace tvbounds
