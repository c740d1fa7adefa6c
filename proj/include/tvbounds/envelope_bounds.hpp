#pragma once

// Deterministic TV bounds from an envelope decomposition.
//
// Basic bounds: on each elementary interval the mixtures are pinched
// between their lowest and highest raw component densities (a convex
// combination never leaves [min_i p_i, max_i p_i]), so CDF differences of
// the four candidate components bracket both integral(min(m, m')) and
// integral(max(m, m')). That yields two independent two-sided brackets of
// the TV through TV = 1 - integral(min) = integral(max) - 1.
//
// Ratio bounds: for family-homogeneous inputs, each interval picks a
// reference component density r_s and brackets (m - m')/r_s by bounding
// every component's exponent difference; multiplying back by the exact
// reference mass gives per-interval bounds on integral(|m - m'|) that
// sharpen under refinement.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "tvbounds/envelope.hpp"
#include "tvbounds/summation.hpp"

namespace tvbounds {

enum class ReferenceRule {
    best_of_both,     // evaluate both mixtures' upper-envelope components, keep the tighter
    upper_of_first,   // reference is the first mixture's upper-envelope component
    upper_of_second,  // reference is the second mixture's upper-envelope component
};

enum class BoundMethod { trivial, basic, ratio };

struct BasicEnvelopeBounds {
    double min_mass_lo = 0.0;  // A: lower bound of integral(min(m, m'))
    double min_mass_hi = 0.0;  // upper bound of integral(min(m, m'))
    double max_mass_lo = 0.0;  // lower bound of integral(max(m, m'))
    double max_mass_hi = 0.0;  // B: upper bound of integral(max(m, m'))
    double lower = 0.0;        // TV lower bound
    double upper = 1.0;        // TV upper bound
};

struct IntervalBound {
    double a = 0.0;
    double b = 0.0;
    double min_env_mass = 0.0;  // interval share of A
    double max_env_mass = 0.0;  // interval share of B

    // Ratio diagnostics under the reporting reference (the one the upper
    // side used). The lower side may use the other candidate reference;
    // lower_contribution records what actually entered the sum.
    bool ratio_evaluated = false;
    double ratio_lo = 0.0;  // L_s
    double ratio_hi = 0.0;  // U_s
    double mu = 0.0;        // mu_s
    double omega = 0.0;     // Omega_s (inf when the exponent range is unbounded)
    double reference_mass = 0.0;
    int reference_component = -1;
    bool reference_from_first = true;
    bool ratio_upper_used = false;  // false -> basic fallback on this interval
    double lower_contribution = 0.0;
    double upper_contribution = 0.0;
};

struct RatioBounds {
    double lower = 0.0;
    double upper = 1.0;
};

struct BoundReport {
    double celb = 0.0;
    double ceub = 1.0;
    double min_envelope_mass = 0.0;  // A
    double max_envelope_mass = 0.0;  // B
    double basic_lower = 0.0;
    double basic_upper = 1.0;
    bool ratio_available = false;
    double ratio_lower = 0.0;
    double ratio_upper = 1.0;
    BoundMethod method_lower = BoundMethod::trivial;
    BoundMethod method_upper = BoundMethod::trivial;
    double bayes_error_lo = 0.0;
    double bayes_error_hi = 0.5;
    int refine_factor = 1;
    std::vector<IntervalBound> per_interval;
};

namespace detail {

inline double interval_probe(double p, double q) {
    if (std::isfinite(p) && std::isfinite(q)) return 0.5 * (p + q);
    if (std::isfinite(p)) return p + 1.0;
    if (std::isfinite(q)) return q - 1.0;
    return 0.0;
}

struct PairMasses {
    double min_mass = 0.0;
    double max_mass = 0.0;
};

// Exact integrals of min and max of two raw component densities over (a, b),
// splitting at their crossings so each piece is a pure CDF difference.
inline PairMasses integrate_pair_extrema(const Component& c1, const Component& c2, double a,
                                         double b) {
    PairMasses out;
    const bool pos1 = positive_support(c1);
    const bool pos2 = positive_support(c2);
    const bool alive1 = !pos1 || b > 0.0;
    const bool alive2 = !pos2 || b > 0.0;
    if (!alive1 && !alive2) return out;
    if (!alive1 || !alive2) {
        out.max_mass = interval_mass(alive1 ? c1 : c2, a, b);
        return out;
    }
    if ((pos1 || pos2) && a < 0.0) {
        // One density is zero below 0: that part contributes only to max.
        out.max_mass = interval_mass(pos1 ? c2 : c1, a, 0.0);
        a = 0.0;
    }
    const LogDensityForm f1 = weighted_log_density_form(c1, 1.0);
    const LogDensityForm f2 = weighted_log_density_form(c2, 1.0);

    std::vector<double> pts;
    pts.push_back(a);
    for (double r : weighted_crossings_on(c1, 1.0, c2, 1.0, a, b)) pts.push_back(r);
    pts.push_back(b);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double p = pts[i];
        const double q = pts[i + 1];
        if (!(p < q)) continue;
        const double probe = interval_probe(p, q);
        const bool first_smaller = f1(probe) <= f2(probe);
        out.min_mass += interval_mass(first_smaller ? c1 : c2, p, q);
        out.max_mass += interval_mass(first_smaller ? c2 : c1, p, q);
    }
    return out;
}

struct IntervalBasic {
    double min_lo, min_hi, max_lo, max_hi;
};

inline IntervalBasic basic_interval_masses(const ElementaryInterval& iv, const Mixture& m,
                                           const Mixture& mp) {
    const PairMasses low = integrate_pair_extrema(m.component(iv.l), mp.component(iv.l_prime),
                                                  iv.a, iv.b);
    const PairMasses high = integrate_pair_extrema(m.component(iv.u), mp.component(iv.u_prime),
                                                   iv.a, iv.b);
    return {low.min_mass, high.min_mass, low.max_mass, high.max_mass};
}

inline void check_matching(const EnvelopeDecomposition& dec, const Mixture& m,
                           const Mixture& mp) {
    if (dec.intervals.empty() || dec.k_first != m.size() || dec.k_second != mp.size())
        throw std::invalid_argument("decomposition does not match the given mixtures");
    // The envelope inequalities use that a mixture is a convex combination.
    if (!m.normalized() || !mp.normalized())
        throw std::invalid_argument("envelope bounds require weight-normalized mixtures");
}

// One reference component's view of an interval.
struct ReferenceEval {
    double L = 0.0;  // lower bound of (m - m')/r_s on the interval
    double U = 0.0;  // upper bound, may be +inf
    double mu = 0.0;
    double omega = 0.0;  // may be +inf
    double ref_mass = 0.0;
    int ref_index = -1;
    bool from_first = true;
};

inline ReferenceEval eval_reference(const Mixture& m, const Mixture& mp,
                                    const std::vector<NaturalForm>& nf_m,
                                    const std::vector<NaturalForm>& nf_mp, Family family,
                                    bool ref_from_first, int ref_index, double a, double b) {
    const NaturalForm& ref = ref_from_first ? nf_m[ref_index] : nf_mp[ref_index];

    auto accumulate = [&](const std::vector<NaturalForm>& nfs, const Mixture& mix, KahanSum& lo,
                          KahanSum& hi, bool& lo_unbounded, bool& hi_unbounded) {
        for (std::size_t i = 0; i < nfs.size(); ++i) {
            const std::array<double, 2> dtheta{nfs[i].theta[0] - ref.theta[0],
                                               nfs[i].theta[1] - ref.theta[1]};
            const ValueRange r = exponent_range(family, dtheta,
                                                nfs[i].log_normalizer - ref.log_normalizer,
                                                false, a, b);
            // exp can overflow for finite exponent ranges; keep infinities
            // out of the compensated sums and track them as flags.
            const double down = std::exp(r.lo);
            if (std::isinf(down))
                lo_unbounded = true;
            else
                lo.add(mix.weight(i) * down);
            const double up = std::exp(r.hi);
            if (std::isinf(up))
                hi_unbounded = true;
            else
                hi.add(mix.weight(i) * up);
        }
    };

    KahanSum m_lo, m_hi, mp_lo, mp_hi;
    bool m_lo_inf = false, m_hi_inf = false, mp_lo_inf = false, mp_hi_inf = false;
    accumulate(nf_m, m, m_lo, m_hi, m_lo_inf, m_hi_inf);
    accumulate(nf_mp, mp, mp_lo, mp_hi, mp_lo_inf, mp_hi_inf);

    ReferenceEval ev;
    ev.ref_index = ref_index;
    ev.from_first = ref_from_first;
    ev.L = mp_hi_inf ? -kInf : (m_lo_inf ? kInf : m_lo.value() - mp_hi.value());
    ev.U = m_hi_inf ? kInf : (mp_lo_inf ? -kInf : m_hi.value() - mp_lo.value());
    // A positive-infinite L or negative-infinite U only arises from overflow;
    // there is no usable ratio information on such an interval.
    if (!(ev.L <= ev.U) || ev.L == kInf || ev.U == -kInf) {
        ev.L = -kInf;
        ev.U = kInf;
    }
    if (ev.L <= 0.0 && ev.U >= 0.0)
        ev.mu = 0.0;
    else
        ev.mu = std::min(std::abs(ev.L), std::abs(ev.U));
    ev.omega = std::max(std::abs(ev.L), std::abs(ev.U));
    ev.ref_mass = interval_mass(ref_from_first ? m.component(ref_index) : mp.component(ref_index),
                                a, b);
    return ev;
}

}  // namespace detail

// A, B and the TV bounds they imply, from exact per-interval CDF masses.
inline BasicEnvelopeBounds basic_envelope_bounds(const EnvelopeDecomposition& dec,
                                                 const Mixture& m, const Mixture& m_prime) {
    detail::check_matching(dec, m, m_prime);
    KahanSum min_lo, min_hi, max_lo, max_hi;
    for (const auto& iv : dec.intervals) {
        const auto ib = detail::basic_interval_masses(iv, m, m_prime);
        min_lo.add(ib.min_lo);
        min_hi.add(ib.min_hi);
        max_lo.add(ib.max_lo);
        max_hi.add(ib.max_hi);
    }
    BasicEnvelopeBounds out;
    out.min_mass_lo = min_lo.value();
    out.min_mass_hi = min_hi.value();
    out.max_mass_lo = max_lo.value();
    out.max_mass_hi = max_hi.value();
    out.lower = std::max({1.0 - out.min_mass_hi, out.max_mass_lo - 1.0, 0.0});
    out.upper = std::min({1.0 - out.min_mass_lo, out.max_mass_hi - 1.0, 1.0});
    return out;
}

// Density-ratio refinement. Available only when every component of both
// mixtures belongs to one exponential family; callers treat nullopt as
// "refinement unavailable", not as an error.
inline std::optional<RatioBounds> ratio_bounds(
    const EnvelopeDecomposition& dec, const Mixture& m, const Mixture& m_prime,
    ReferenceRule rule = ReferenceRule::best_of_both,
    std::vector<IntervalBound>* diagnostics = nullptr) {
    detail::check_matching(dec, m, m_prime);
    const auto fam = m.homogeneous_family();
    const auto fam_p = m_prime.homogeneous_family();
    if (!fam || !fam_p || *fam != *fam_p) return std::nullopt;

    std::vector<NaturalForm> nf_m, nf_mp;
    for (const auto& c : m.components()) nf_m.push_back(natural_form(c));
    for (const auto& c : m_prime.components()) nf_mp.push_back(natural_form(c));

    KahanSum lower_sum, upper_sum;
    for (std::size_t s = 0; s < dec.intervals.size(); ++s) {
        const auto& iv = dec.intervals[s];
        std::vector<detail::ReferenceEval> evals;
        if (rule != ReferenceRule::upper_of_second)
            evals.push_back(detail::eval_reference(m, m_prime, nf_m, nf_mp, *fam, true, iv.u,
                                                   iv.a, iv.b));
        if (rule != ReferenceRule::upper_of_first)
            evals.push_back(detail::eval_reference(m, m_prime, nf_m, nf_mp, *fam, false,
                                                   iv.u_prime, iv.a, iv.b));

        double lower_c = 0.0;
        for (const auto& ev : evals) lower_c = std::max(lower_c, 0.5 * ev.mu * ev.ref_mass);

        // Upper side: tightest finite ratio contribution, capped by the basic
        // envelope gap on this interval. The cap is what an unbounded (or
        // overflowed) exponent range falls back to, and taking the minimum
        // everywhere keeps the aggregate monotone under refinement.
        const detail::ReferenceEval* upper_best = nullptr;
        double ratio_up = detail::kInf;
        for (const auto& ev : evals) {
            if (!std::isfinite(ev.omega)) continue;
            const double candidate = 0.5 * ev.omega * ev.ref_mass;
            if (candidate < ratio_up) {
                ratio_up = candidate;
                upper_best = &ev;
            }
        }
        const auto ib = detail::basic_interval_masses(iv, m, m_prime);
        const double basic_up = 0.5 * (ib.max_hi - ib.min_lo);
        const bool ratio_upper_used = ratio_up <= basic_up;
        const double upper_c = std::min(ratio_up, basic_up);

        lower_sum.add(lower_c);
        upper_sum.add(upper_c);

        if (diagnostics) {
            IntervalBound& d = (*diagnostics)[s];
            const detail::ReferenceEval& rep = upper_best ? *upper_best : evals.front();
            d.a = iv.a;
            d.b = iv.b;
            d.min_env_mass = ib.min_lo;
            d.max_env_mass = ib.max_hi;
            d.ratio_evaluated = true;
            d.ratio_lo = rep.L;
            d.ratio_hi = rep.U;
            d.mu = rep.mu;
            d.omega = rep.omega;
            d.reference_mass = rep.ref_mass;
            d.reference_component = rep.ref_index;
            d.reference_from_first = rep.from_first;
            d.ratio_upper_used = ratio_upper_used;
            d.lower_contribution = lower_c;
            d.upper_contribution = upper_c;
        }
    }
    return RatioBounds{lower_sum.value(), upper_sum.value()};
}

// Full pipeline: decompose, refine, bound, combine.
inline BoundReport celb_ceub(const Mixture& m, const Mixture& m_prime, int refine_factor = 10,
                             ReferenceRule rule = ReferenceRule::best_of_both) {
    const EnvelopeDecomposition dec = refine(decompose(m, m_prime), refine_factor);

    BoundReport rep;
    rep.refine_factor = refine_factor;
    rep.per_interval.resize(dec.intervals.size());
    for (std::size_t s = 0; s < dec.intervals.size(); ++s) {
        rep.per_interval[s].a = dec.intervals[s].a;
        rep.per_interval[s].b = dec.intervals[s].b;
        const auto ib = detail::basic_interval_masses(dec.intervals[s], m, m_prime);
        rep.per_interval[s].min_env_mass = ib.min_lo;
        rep.per_interval[s].max_env_mass = ib.max_hi;
    }

    const BasicEnvelopeBounds basic = basic_envelope_bounds(dec, m, m_prime);
    rep.min_envelope_mass = basic.min_mass_lo;
    rep.max_envelope_mass = basic.max_mass_hi;
    rep.basic_lower = basic.lower;
    rep.basic_upper = basic.upper;

    const auto ratio = ratio_bounds(dec, m, m_prime, rule, &rep.per_interval);
    rep.ratio_available = ratio.has_value();

    double lo = basic.lower;
    rep.method_lower = lo > 0.0 ? BoundMethod::basic : BoundMethod::trivial;
    double hi = basic.upper;
    rep.method_upper = hi < 1.0 ? BoundMethod::basic : BoundMethod::trivial;
    if (ratio) {
        rep.ratio_lower = ratio->lower;
        rep.ratio_upper = ratio->upper;
        if (ratio->lower >= lo && ratio->lower > 0.0) {
            lo = ratio->lower;
            rep.method_lower = BoundMethod::ratio;
        }
        if (ratio->upper <= hi && ratio->upper < 1.0) {
            hi = ratio->upper;
            rep.method_upper = BoundMethod::ratio;
        }
    }
    rep.celb = std::clamp(lo, 0.0, 1.0);
    rep.ceub = std::clamp(hi, 0.0, 1.0);
    rep.bayes_error_lo = 0.5 * (1.0 - rep.ceub);
    rep.bayes_error_hi = 0.5 * (1.0 - rep.celb);
    return rep;
}

}  // namespace tvbounds
