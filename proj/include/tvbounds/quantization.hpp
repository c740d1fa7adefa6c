#pragma once

// Coarse-grained quantized lower bound: lumping two mixtures onto a finite
// interval partition can only decrease their TV, so the discrete TV of the
// cell masses is a guaranteed lower bound. Refining the partition can only
// help, which gives the nested telescoping chain.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tvbounds/mixture.hpp"
#include "tvbounds/summation.hpp"

namespace tvbounds {

struct Partition {
    std::vector<double> cuts;  // strictly increasing interior cut points

    Partition() = default;
    explicit Partition(std::vector<double> c) : cuts(std::move(c)) {
        for (double x : cuts)
            if (!std::isfinite(x)) throw std::invalid_argument("Partition: cuts must be finite");
        for (std::size_t i = 1; i < cuts.size(); ++i)
            if (!(cuts[i - 1] < cuts[i]))
                throw std::invalid_argument("Partition: cuts must be strictly increasing");
    }

    std::size_t cells() const { return cuts.size() + 1; }
};

// TV of the two lumped discrete distributions; always <= TV(m, m').
inline double cgqlb(const Mixture& m, const Mixture& m_prime, const Partition& partition) {
    const double inf = std::numeric_limits<double>::infinity();
    KahanSum sum;
    double prev = -inf;
    for (std::size_t i = 0; i <= partition.cuts.size(); ++i) {
        const double next = i < partition.cuts.size() ? partition.cuts[i] : inf;
        sum.add(std::abs(m.mass(prev, next) - m_prime.mass(prev, next)));
        prev = next;
    }
    return std::clamp(0.5 * sum.value(), 0.0, 1.0);
}

// Chain of nested refinements: each level bisects every finite cell and
// pushes one new cut into each unbounded end cell, stepping outward by the
// width of the base partition's adjacent cell. Returns cgqlb per level
// (level 0 = base); the sequence is nondecreasing.
inline std::vector<double> nested_cgqlb(const Mixture& m, const Mixture& m_prime,
                                        const Partition& base, int levels) {
    if (levels < 1) throw std::invalid_argument("nested_cgqlb: levels must be >= 1");
    std::vector<double> values;
    values.reserve(levels);

    std::vector<double> cuts = base.cuts;
    const double left_step =
        base.cuts.size() >= 2 ? base.cuts[1] - base.cuts[0] : 1.0;
    const double right_step =
        base.cuts.size() >= 2 ? base.cuts[base.cuts.size() - 1] - base.cuts[base.cuts.size() - 2]
                              : 1.0;
    values.push_back(cgqlb(m, m_prime, Partition(cuts)));
    for (int level = 1; level < levels; ++level) {
        std::vector<double> next;
        if (!cuts.empty()) next.push_back(cuts.front() - left_step);
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            next.push_back(cuts[i]);
            if (i + 1 < cuts.size()) next.push_back(0.5 * (cuts[i] + cuts[i + 1]));
        }
        if (!cuts.empty()) next.push_back(cuts.back() + right_step);
        if (cuts.empty()) next.push_back(0.0);
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cuts = std::move(next);
        values.push_back(cgqlb(m, m_prime, Partition(cuts)));
    }
    return values;
}

// Partition induced by n pooled samples: ceil(n/2) from m, the rest from
// m_prime, combined, sorted, deduplicated.
inline Partition sample_partition(const Mixture& m, const Mixture& m_prime, std::size_t n,
                                  std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_partition: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<double> cuts = m.sample(rng, (n + 1) / 2);
    const std::vector<double> other = m_prime.sample(rng, n / 2);
    cuts.insert(cuts.end(), other.begin(), other.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return Partition(std::move(cuts));
}

// For mixtures over an identical component list (weights may differ, and may
// be positive measures): TV <= min(1, half the L1 weight gap).
inline double shared_component_upper(const Mixture& m, const Mixture& m_prime) {
    if (m.size() != m_prime.size())
        throw std::invalid_argument("shared_component_upper: component lists differ in length");
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.component(i) != m_prime.component(i))
            throw std::invalid_argument("shared_component_upper: component lists differ");
    KahanSum sum;
    for (std::size_t i = 0; i < m.size(); ++i)
        sum.add(std::abs(m.weight(i) - m_prime.weight(i)));
    return std::min(1.0, 0.5 * sum.value());
}

}  // namespace tvbounds
