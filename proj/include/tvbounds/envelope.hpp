#pragma once

// Decomposition of the common support into elementary intervals on which
// the identity of each mixture's pointwise lowest and highest component
// density is constant. Breakpoints are the pairwise density crossings
// within each mixture (plus the support boundary when support classes are
// mixed); between consecutive breakpoints no two curves swap order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "tvbounds/crossings.hpp"
#include "tvbounds/mixture.hpp"

namespace tvbounds {

struct ElementaryInterval {
    double a = 0.0;
    double b = 0.0;
    // Component indices (zero-based): l/u into the first mixture's lowest and
    // highest density on (a, b), l_prime/u_prime into the second mixture's.
    int l = 0;
    int u = 0;
    int l_prime = 0;
    int u_prime = 0;
};

struct EnvelopeDecomposition {
    std::vector<ElementaryInterval> intervals;
    std::size_t k_first = 0;   // component counts of the mixtures decomposed
    std::size_t k_second = 0;

    std::size_t size() const { return intervals.size(); }
};

namespace detail {

// argmin/argmax of the raw (unweighted) component log densities at x.
// Dead components (outside their support) evaluate to -inf. Ties go to the
// lowest index.
inline std::pair<int, int> envelope_indices_at(const std::vector<LogDensityForm>& forms,
                                               const std::vector<bool>& positive, double x) {
    int lo = 0, hi = 0;
    double lo_v = kInf, hi_v = -kInf;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        const double v = (positive[i] && x <= 0.0) ? -kInf : forms[i](x);
        if (v < lo_v) {
            lo_v = v;
            lo = static_cast<int>(i);
        }
        if (v > hi_v) {
            hi_v = v;
            hi = static_cast<int>(i);
        }
    }
    return {lo, hi};
}

inline std::vector<LogDensityForm> raw_forms(const Mixture& m) {
    std::vector<LogDensityForm> forms;
    forms.reserve(m.size());
    for (const auto& c : m.components()) forms.push_back(weighted_log_density_form(c, 1.0));
    return forms;
}

inline std::vector<bool> positive_flags(const Mixture& m) {
    std::vector<bool> flags;
    flags.reserve(m.size());
    for (const auto& c : m.components()) flags.push_back(positive_support(c));
    return flags;
}

}  // namespace detail

inline EnvelopeDecomposition decompose(const Mixture& m, const Mixture& m_prime) {
    std::vector<double> cuts;
    auto add_crossings = [&](const Mixture& mix) {
        for (std::size_t i = 0; i < mix.size(); ++i)
            for (std::size_t j = i + 1; j < mix.size(); ++j)
                for (double r : weighted_crossings_on(mix.component(i), 1.0, mix.component(j), 1.0,
                                                      -detail::kInf, detail::kInf))
                    cuts.push_back(r);
    };
    add_crossings(m);
    add_crossings(m_prime);

    const bool any_real = m.spans_real_line() || m_prime.spans_real_line();
    bool any_positive = false;
    for (const auto& c : m.components()) any_positive |= positive_support(c);
    for (const auto& c : m_prime.components()) any_positive |= positive_support(c);
    const double support_lo = any_real ? -detail::kInf : 0.0;
    if (any_real && any_positive) cuts.push_back(0.0);  // half-line components die here

    std::sort(cuts.begin(), cuts.end());
    std::vector<double> uniq;
    for (double c : cuts) {
        if (!(c > support_lo)) continue;
        if (uniq.empty() || c - uniq.back() > 1e-12) uniq.push_back(c);
    }

    const auto forms_m = detail::raw_forms(m);
    const auto forms_mp = detail::raw_forms(m_prime);
    const auto pos_m = detail::positive_flags(m);
    const auto pos_mp = detail::positive_flags(m_prime);

    EnvelopeDecomposition dec;
    dec.k_first = m.size();
    dec.k_second = m_prime.size();
    for (std::size_t s = 0; s <= uniq.size(); ++s) {
        ElementaryInterval iv;
        iv.a = s == 0 ? support_lo : uniq[s - 1];
        iv.b = s == uniq.size() ? detail::kInf : uniq[s];
        double probe;
        if (std::isfinite(iv.a) && std::isfinite(iv.b))
            probe = 0.5 * (iv.a + iv.b);
        else if (std::isfinite(iv.a))
            probe = iv.a + 1.0;
        else if (std::isfinite(iv.b))
            probe = iv.b - 1.0;
        else
            probe = 0.0;
        auto [l, u] = detail::envelope_indices_at(forms_m, pos_m, probe);
        auto [lp, up] = detail::envelope_indices_at(forms_mp, pos_mp, probe);
        iv.l = l;
        iv.u = u;
        iv.l_prime = lp;
        iv.u_prime = up;
        dec.intervals.push_back(iv);
    }
    return dec;
}

// Split every finite interval into `factor` equal parts; semi-infinite end
// intervals are left whole (their masses are already exact CDF tails).
inline EnvelopeDecomposition refine(const EnvelopeDecomposition& dec, int factor) {
    if (factor < 1) throw std::invalid_argument("refine: factor must be >= 1");
    if (factor == 1) return dec;
    EnvelopeDecomposition out;
    out.k_first = dec.k_first;
    out.k_second = dec.k_second;
    for (const auto& iv : dec.intervals) {
        if (!std::isfinite(iv.a) || !std::isfinite(iv.b)) {
            out.intervals.push_back(iv);
            continue;
        }
        const double width = iv.b - iv.a;
        double left = iv.a;
        for (int k = 1; k <= factor; ++k) {
            ElementaryInterval part = iv;
            part.a = left;
            part.b = k == factor ? iv.b : iv.a + width * static_cast<double>(k) / factor;
            left = part.b;
            out.intervals.push_back(part);
        }
    }
    return out;
}

}  // namespace tvbounds
