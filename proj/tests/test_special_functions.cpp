#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "tvbounds/special_functions.hpp"

using namespace tvbounds;

namespace {

// Maclaurin series oracle: erf(x) = 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1)),
// summed to machine precision. Reliable for |x| <= 3.
double erf_series(double x) {
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= -x * x / n;
        const double add = term / (2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum * 2.0 / std::sqrt(M_PI);
}

}  // namespace

TEST_CASE("erf at the origin and the tabulated point") {
    CHECK(tvbounds::erf(0.0) == 0.0);
    CHECK_THAT(tvbounds::erf(1.0), Catch::Matchers::WithinAbs(0.8427007929497149, 1e-13));
    for (double x : {0.1, 0.5, 1.0, 1.7, 2.5})
        CHECK_THAT(tvbounds::erf(x), Catch::Matchers::WithinAbs(erf_series(x), 1e-13));
}

TEST_CASE("erf is odd, bounded and monotone") {
    std::mt19937_64 rng(1);
    // Strictly monotone and strictly inside (-1, 1) while the gap to +-1 is
    // representable; saturated beyond that.
    double prev = tvbounds::erf(-5.0);
    for (double x = -5.0 + 0.25; x <= 5.0; x += 0.25) {
        const double v = tvbounds::erf(x);
        CHECK(v > prev);
        CHECK(std::abs(v) < 1.0);
        prev = v;
    }
    for (double x = 5.25; x <= 40.0; x += 2.0) {
        CHECK(tvbounds::erf(x) >= prev);
        CHECK(tvbounds::erf(x) <= 1.0);
        prev = tvbounds::erf(x);
    }
    for (int i = 0; i < 50; ++i) {
        const double x = (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 10.0 - 5.0;
        CHECK(tvbounds::erf(-x) == -tvbounds::erf(x));
    }
}

TEST_CASE("erf saturates at extreme arguments") {
    CHECK(tvbounds::erf(38.0) == 1.0);
    CHECK(tvbounds::erf(-38.0) == -1.0);
    CHECK(tvbounds::erf(1e6) == 1.0);
    CHECK_THROWS_AS(tvbounds::erf(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(tvbounds::erf(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("incomplete gamma analytic identities") {
    for (double x : {0.01, 0.3, 1.0, 2.5, 10.0, 40.0}) {
        CHECK_THAT(reg_lower_incomplete_gamma(1.0, x),
                   Catch::Matchers::WithinAbs(-std::expm1(-x), 1e-12));
        CHECK_THAT(reg_lower_incomplete_gamma(0.5, x),
                   Catch::Matchers::WithinAbs(tvbounds::erf(std::sqrt(x)), 1e-12));
    }
    for (double a : {0.2, 1.0, 3.7, 25.0}) CHECK(reg_lower_incomplete_gamma(a, 0.0) == 0.0);
}

TEST_CASE("incomplete gamma is a CDF in x") {
    for (double a : {0.2, 0.7, 1.0, 2.0, 8.5, 60.0}) {
        double prev = 0.0;
        for (double x = 0.0; x <= 8.0 * a + 40.0; x += 0.1 * a + 0.05) {
            const double v = reg_lower_incomplete_gamma(a, x);
            CHECK(v >= prev - 1e-15);
            CHECK(v <= 1.0);
            prev = v;
        }
        CHECK_THAT(reg_lower_incomplete_gamma(a, 100.0 * a + 700.0),
                   Catch::Matchers::WithinAbs(1.0, 1e-12));
        // P + Q = 1 without cancellation on both sides of the mean
        for (double x : {0.3 * a, a, 4.0 * a}) {
            CHECK_THAT(reg_lower_incomplete_gamma(a, x) + reg_upper_incomplete_gamma(a, x),
                       Catch::Matchers::WithinAbs(1.0, 1e-13));
        }
    }
}

TEST_CASE("incomplete gamma rejects bad arguments") {
    CHECK_THROWS_AS(reg_lower_incomplete_gamma(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reg_lower_incomplete_gamma(-2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reg_lower_incomplete_gamma(1.0, -0.1), std::domain_error);
}

TEST_CASE("log_gamma values") {
    CHECK_THAT(log_gamma(1.0), Catch::Matchers::WithinAbs(0.0, 1e-13));
    CHECK_THAT(log_gamma(2.0), Catch::Matchers::WithinAbs(0.0, 1e-13));
    CHECK_THAT(log_gamma(0.5), Catch::Matchers::WithinAbs(0.5723649429247001, 1e-13));
    // Independent reference: the C library's lgamma.
    for (double a : {0.1, 0.37, 1.5, 4.0, 11.3, 57.0, 100.0}) {
        CHECK_THAT(log_gamma(a),
                   Catch::Matchers::WithinRel(std::lgamma(a), 1e-12) ||
                       Catch::Matchers::WithinAbs(std::lgamma(a), 1e-13));
    }
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.0), std::domain_error);
}

TEST_CASE("log_gamma recurrence over [0.1, 100]") {
    for (double a = 0.1; a <= 100.0; a *= 1.17) {
        const double lhs = log_gamma(a + 1.0);
        const double rhs = log_gamma(a) + std::log(a);
        CHECK_THAT(lhs, Catch::Matchers::WithinRel(rhs, 1e-12) ||
                            Catch::Matchers::WithinAbs(rhs, 1e-12));
    }
}
