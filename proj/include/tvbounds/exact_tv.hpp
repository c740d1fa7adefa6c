#pragma once

// Closed-form total variation distance between two univariate Gaussians.
// The densities cross where a quadratic in x vanishes; the TV is then a
// sum of CDF differences evaluated at the crossing points.

#include <algorithm>
#include <cmath>

#include "tvbounds/component.hpp"

namespace tvbounds {

inline double gaussian_tv_exact(const Gaussian& a, const Gaussian& b) {
    validate(Component{a});
    validate(Component{b});
    const double sqrt2 = std::sqrt(2.0);
    if (a.mu == b.mu && a.sigma == b.sigma) return 0.0;
    // Canonical argument order makes the result exactly symmetric; the
    // rounded quadratic coefficients otherwise differ in the last ulp.
    const bool swap = a.sigma < b.sigma || (a.sigma == b.sigma && a.mu < b.mu);
    const Gaussian& g1 = swap ? b : a;
    const Gaussian& g2 = swap ? a : b;

    // The quadratic-root path loses all precision as the leading coefficient
    // vanishes, so near-equal variances take the single-crossing branch.
    if (std::abs(g1.sigma - g2.sigma) < 1e-12 * std::max(g1.sigma, g2.sigma)) {
        const double sigma = 0.5 * (g1.sigma + g2.sigma);
        return erf(std::abs(g1.mu - g2.mu) / (2.0 * sigma * sqrt2));
    }

    const double v1 = g1.sigma * g1.sigma;
    const double v2 = g2.sigma * g2.sigma;
    const double qa = 1.0 / v1 - 1.0 / v2;
    const double qb = 2.0 * (g2.mu / v2 - g1.mu / v1);
    const double r1 = g1.mu / g1.sigma;
    const double r2 = g2.mu / g2.sigma;
    const double qc = r1 * r1 - r2 * r2 + 2.0 * std::log(g1.sigma / g2.sigma);

    const double disc = std::max(qb * qb - 4.0 * qa * qc, 0.0);
    const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb == 0.0 ? 1.0 : qb));
    const double x1 = q / qa;
    const double x2 = q != 0.0 ? qc / q : x1;

    auto half_abs_cdf_gap = [&](double x) {
        return 0.5 * std::abs(erf((x - g1.mu) / (g1.sigma * sqrt2)) -
                              erf((x - g2.mu) / (g2.sigma * sqrt2)));
    };
    const double tv = half_abs_cdf_gap(x1) + half_abs_cdf_gap(x2);
    return std::clamp(tv, 0.0, 1.0);
}

}  // namespace tvbounds
