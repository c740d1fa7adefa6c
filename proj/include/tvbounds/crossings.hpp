#pragma once

// Root and extremum analysis of weighted log densities. Every supported
// family has ln(w p(x)) = quad x^2 + lin x + logx ln x + constant on its
// support, so crossings between two weighted components and the range of
// an exponent difference both reduce to the same small algebra: solve a
// quadratic for the critical points, then bisect monotone pieces.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "tvbounds/component.hpp"
#include "tvbounds/errors.hpp"

namespace tvbounds {

struct LogDensityForm {
    double quad = 0.0;
    double lin = 0.0;
    double logx = 0.0;  // must be 0 on full-line supports
    double constant = 0.0;

    double operator()(double x) const {
        double v = (quad * x + lin) * x + constant;
        if (logx != 0.0) v += logx * std::log(x);
        return v;
    }

    LogDensityForm operator-(const LogDensityForm& o) const {
        return {quad - o.quad, lin - o.lin, logx - o.logx, constant - o.constant};
    }

    bool is_zero() const { return quad == 0.0 && lin == 0.0 && logx == 0.0 && constant == 0.0; }
};

// ln(w p(x)) as a LogDensityForm, exact on the component's support.
inline LogDensityForm weighted_log_density_form(const Component& c, double w) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weight must be positive and finite");
    const double lw = std::log(w);
    if (const auto* g = std::get_if<Gaussian>(&c)) {
        const double s2 = g->sigma * g->sigma;
        return {-0.5 / s2, g->mu / s2,
                0.0, -0.5 * g->mu * g->mu / s2 - std::log(g->sigma * std::sqrt(2.0 * kPi)) + lw};
    }
    if (const auto* g = std::get_if<Gamma>(&c)) {
        return {0.0, -g->rate, g->shape - 1.0,
                g->shape * std::log(g->rate) - log_gamma(g->shape) + lw};
    }
    const auto& r = std::get<Rayleigh>(c);
    const double s2 = r.scale * r.scale;
    return {-0.5 / s2, 0.0, 1.0, -std::log(s2) + lw};
}

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Numerically stable roots of quad x^2 + lin x + constant = 0, ascending.
inline std::vector<double> quadratic_roots(double a, double b, double c) {
    std::vector<double> roots;
    if (a == 0.0) {
        if (b != 0.0) roots.push_back(-c / b);
        return roots;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return roots;
    if (disc == 0.0) {
        roots.push_back(-0.5 * b / a);
        return roots;
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b == 0.0 ? 1.0 : b));
    roots.push_back(q / a);
    if (q != 0.0) roots.push_back(c / q);
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Stationary points of f inside the open interval (lo, hi).
inline std::vector<double> critical_points(const LogDensityForm& f, double lo, double hi,
                                           bool positive_domain) {
    std::vector<double> pts;
    if (positive_domain) {
        // f' = 2 quad x + lin + logx / x = 0  <=>  2 quad x^2 + lin x + logx = 0
        for (double r : quadratic_roots(2.0 * f.quad, f.lin, f.logx))
            if (r > 0.0 && r > lo && r < hi) pts.push_back(r);
    } else if (f.quad != 0.0) {
        const double v = -0.5 * f.lin / f.quad;
        if (v > lo && v < hi) pts.push_back(v);
    }
    return pts;
}

// Value of f at an interval end, as a limit when the end is not interior.
inline double end_value(const LogDensityForm& f, double x, bool positive_domain) {
    if (x == kInf) {
        if (f.quad != 0.0) return f.quad > 0.0 ? kInf : -kInf;
        if (f.lin != 0.0) return f.lin > 0.0 ? kInf : -kInf;
        if (f.logx != 0.0) return f.logx > 0.0 ? kInf : -kInf;
        return f.constant;
    }
    if (x == -kInf) {
        if (f.quad != 0.0) return f.quad > 0.0 ? kInf : -kInf;
        if (f.lin != 0.0) return f.lin > 0.0 ? -kInf : kInf;
        return f.constant;
    }
    if (positive_domain && x == 0.0) {
        if (f.logx != 0.0) return f.logx > 0.0 ? -kInf : kInf;
        return f.constant;
    }
    return f(x);
}

inline int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// March from `from` toward an open end until f changes sign; f is monotone
// on the piece, so geometric stepping cannot overshoot a second root.
inline std::optional<double> bracket_toward(const LogDensityForm& f, double from, double toward,
                                            int want_sign) {
    double x = from;
    for (int i = 0; i < 4200; ++i) {
        if (toward == kInf) {
            x = x > 1.0 ? x * 2.0 : x + 1.0;
            if (x > 1e300) break;
        } else if (toward == -kInf) {
            x = x < -1.0 ? x * 2.0 : x - 1.0;
            if (x < -1e300) break;
        } else {  // toward 0 from above
            x *= 0.5;
            if (x < 1e-300) break;
        }
        if (sign_of(f(x)) == want_sign) return x;
    }
    return std::nullopt;
}

// Bisection to ulp resolution; assumes opposite signs at the ends.
inline double bisect(const LogDensityForm& f, double lo, double hi) {
    int slo = sign_of(f(lo));
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const int sm = sign_of(f(mid));
        if (sm == 0) return mid;
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// All roots of f in the open interval (lo, hi) (intersected with the
// domain), ascending. Assumes f is not identically zero.
inline std::vector<double> form_roots(const LogDensityForm& f, double lo, double hi,
                                      bool positive_domain) {
    if (positive_domain && lo < 0.0) lo = 0.0;
    std::vector<double> roots;
    if (!(lo < hi)) return roots;

    if (f.logx == 0.0) {
        // Polynomial case: closed form, no bisection needed.
        for (double r : quadratic_roots(f.quad, f.lin, f.constant))
            if (r > lo && r < hi && (!positive_domain || r > 0.0)) roots.push_back(r);
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    // Transcendental case: split into monotone pieces at the critical points.
    std::vector<double> cuts = critical_points(f, lo, hi, positive_domain);
    std::vector<double> ends;
    ends.push_back(lo);
    for (double c : cuts) ends.push_back(c);
    ends.push_back(hi);

    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
        const double p = ends[i];
        const double q = ends[i + 1];
        const double fp = end_value(f, p, positive_domain);
        const double fq = end_value(f, q, positive_domain);
        const int sp = sign_of(fp);
        const int sq = sign_of(fq);
        if (sp == 0) {
            // Tangency at a critical point counts; the requested edge does not.
            if (i > 0 && (roots.empty() || roots.back() != p)) roots.push_back(p);
            continue;
        }
        if (sq == 0 || sp == sq) continue;
        // Need finite evaluable bracket ends.
        double blo = p, bhi = q;
        if (!std::isfinite(p) || (positive_domain && p == 0.0)) {
            auto b = bracket_toward(f, std::isfinite(q) ? q : 1.0,
                                    positive_domain && p == 0.0 ? 0.0 : p, sp);
            if (!b) continue;
            blo = *b;
        }
        if (!std::isfinite(q)) {
            auto b = bracket_toward(f, blo, q, sq);
            if (!b) continue;
            bhi = *b;
        }
        roots.push_back(bisect(f, blo, bhi));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace detail

struct CrossingResult {
    bool everywhere_equal = false;
    std::vector<double> roots;  // ascending, within the open common support
};

// Solutions of ln(w1 p1(x)) = ln(w2 p2(x)) over the common support.
// Requires both components on the same support class.
inline CrossingResult weighted_log_density_crossings(const Component& c1, double w1,
                                                     const Component& c2, double w2) {
    validate(c1);
    validate(c2);
    const bool pos1 = positive_support(c1);
    const bool pos2 = positive_support(c2);
    if (pos1 != pos2)
        throw std::invalid_argument(
            "weighted_log_density_crossings: components have incompatible supports");
    const LogDensityForm delta =
        weighted_log_density_form(c1, w1) - weighted_log_density_form(c2, w2);
    if (delta.is_zero()) return {true, {}};
    const double lo = pos1 ? 0.0 : -detail::kInf;
    return {false, detail::form_roots(delta, lo, detail::kInf, pos1)};
}

// Crossings of two weighted components restricted to (a, b), computed on the
// intersection with both supports. Unlike the full-support variant this
// accepts components from different support classes.
inline std::vector<double> weighted_crossings_on(const Component& c1, double w1,
                                                 const Component& c2, double w2, double a,
                                                 double b) {
    const bool pos = positive_support(c1) || positive_support(c2);
    const LogDensityForm delta =
        weighted_log_density_form(c1, w1) - weighted_log_density_form(c2, w2);
    if (delta.is_zero()) return {};
    return detail::form_roots(delta, a, b, pos);
}

struct ValueRange {
    double lo = 0.0;
    double hi = 0.0;  // may be +inf on unbounded intervals
};

// Exact range of f over [a, b] (intersected with the domain) from the
// closed-form critical points and the end limits.
inline ValueRange form_range(const LogDensityForm& f, double a, double b, bool positive_domain) {
    if (positive_domain && a < 0.0) a = 0.0;
    if (!(a <= b)) throw std::invalid_argument("form_range: requires a <= b");
    double lo = detail::kInf;
    double hi = -detail::kInf;
    auto feed = [&](double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    feed(detail::end_value(f, a, positive_domain));
    feed(detail::end_value(f, b, positive_domain));
    for (double c : detail::critical_points(f, a, b, positive_domain)) feed(f(c));
    return {lo, hi};
}

// Range of g(x) = delta_theta . t(x) - delta_log_normalizer over [a, b] for
// the given family's sufficient statistic. carrier_delta adds the ln x
// carrier exponent (it cancels for within-family ratios).
inline ValueRange exponent_range(Family family, const std::array<double, 2>& delta_theta,
                                 double delta_log_normalizer, bool carrier_delta, double a,
                                 double b) {
    LogDensityForm g;
    switch (family) {
        case Family::gaussian:
            g.lin = delta_theta[0];
            g.quad = delta_theta[1];
            break;
        case Family::gamma:
            g.logx = delta_theta[0];
            g.lin = delta_theta[1];
            break;
        case Family::rayleigh:
            g.quad = delta_theta[0];
            break;
    }
    if (carrier_delta) g.logx += 1.0;
    g.constant = -delta_log_normalizer;
    const bool positive = family != Family::gaussian || carrier_delta;
    return form_range(g, a, b, positive);
}

}  // namespace tvbounds
