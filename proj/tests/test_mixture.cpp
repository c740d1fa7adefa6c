#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "support/oracle.hpp"
#include "tvbounds/mixture.hpp"

using namespace tvbounds;

TEST_CASE("mixture pdf basics") {
    const Mixture single({Gaussian{1.0, 2.0}}, {1.0});
    CHECK(single.pdf(0.7) == pdf(Gaussian{1.0, 2.0}, 0.7));

    const Mixture dup({Gaussian{0, 1}, Gaussian{0, 1}}, {0.5, 0.5});
    CHECK_THAT(dup.pdf(0.3), Catch::Matchers::WithinRel(pdf(Gaussian{0, 1}, 0.3), 1e-15));

    const Mixture m({Gaussian{0, 1}, Gaussian{3, 2}}, {0.3, 0.7});
    const double want = 0.3 * oracle::comp_pdf({oracle::Kind::gauss, 0, 1, 1}, 1.0) +
                        0.7 * oracle::comp_pdf({oracle::Kind::gauss, 3, 2, 1}, 1.0);
    CHECK_THAT(m.pdf(1.0), Catch::Matchers::WithinRel(want, 1e-13));
}

TEST_CASE("mixture mass") {
    const double inf = std::numeric_limits<double>::infinity();
    const Mixture m({Gaussian{0, 1}, Gaussian{3, 2}}, {0.3, 0.7});
    CHECK_THAT(m.mass(-inf, inf), Catch::Matchers::WithinAbs(1.0, 1e-14));

    const Mixture sym({Gaussian{-2, 1}, Gaussian{2, 1}}, {0.5, 0.5});
    CHECK_THAT(sym.mass(-inf, 0.0), Catch::Matchers::WithinAbs(0.5, 1e-14));

    // CDF arithmetic with the C library's erf as reference.
    auto phi = [](double x, double mu, double s) { return 0.5 * std::erfc(-(x - mu) / (s * std::sqrt(2.0))); };
    const double want = 0.3 * (phi(3, 0, 1) - phi(0, 0, 1)) + 0.7 * (phi(3, 3, 2) - phi(0, 3, 2));
    CHECK_THAT(m.mass(0.0, 3.0), Catch::Matchers::WithinAbs(want, 1e-13));
    CHECK_THROWS_AS(m.mass(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("mixture mass is additive and pdf integrates to one") {
    const Mixture m({Gamma{2.0, 1.0}, Rayleigh{3.0}, Gamma{0.5, 0.8}}, {0.25, 0.45, 0.3});
    std::mt19937_64 rng(13);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<double> cuts{0.0, 40.0};
    for (int i = 0; i < 23; ++i) cuts.push_back(40.0 * u());
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += m.mass(cuts[i], cuts[i + 1]);
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(m.mass(0.0, 40.0), 1e-12));

    const auto [lo, hi] = m.support_bracket(1e-12);
    const double total = oracle::integrate([&](double x) { return m.pdf(x); }, lo, hi, 1e-10);
    CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-8));
    for (double x = 0.01; x < 20.0; x += 0.37) CHECK(m.pdf(x) >= 0.0);
}

TEST_CASE("mixture sampling") {
    const Mixture m({Gaussian{-5, 1}, Gaussian{5, 1}}, {0.5, 0.5});
    std::mt19937_64 a(42), b(42);
    CHECK(m.sample(a, 0).empty());
    const auto xs = m.sample(a, 1000);
    const auto ys = m.sample(b, 1000);
    CHECK(xs == ys);  // bitwise reproducible

    std::mt19937_64 rng(7);
    const auto big = m.sample(rng, 100000);
    const double below = static_cast<double>(std::count_if(big.begin(), big.end(),
                                                           [](double x) { return x < 0.0; }));
    CHECK(std::abs(below / 100000.0 - 0.5) < 0.01);
}

TEST_CASE("mixture construction validates weights") {
    CHECK_THROWS_AS(Mixture({Gaussian{0, 1}, Gaussian{1, 1}}, {0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(Mixture({Gaussian{0, 1}}, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Mixture({Gaussian{0, 1}}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Mixture({}, {}), std::invalid_argument);

    // Near-one weight sums are renormalized to exactly one.
    const Mixture m({Gaussian{0, 1}, Gaussian{1, 1}}, {0.5000001, 0.5});
    CHECK(m.weight(0) + m.weight(1) == 1.0);

    // Positive-measure mode keeps weights as given.
    const Mixture pm = Mixture::positive_measure({Gaussian{0, 1}}, {0.25});
    CHECK(pm.weight(0) == 0.25);
    CHECK_FALSE(pm.normalized());
}

TEST_CASE("support bracket captures the mass") {
    const Mixture m({Gaussian{-3, 0.5}, Gamma{2.0, 0.5}}, {0.5, 0.5});
    const auto [lo, hi] = m.support_bracket(1e-12);
    CHECK(lo < -3.0);
    CHECK(hi > 10.0);
    CHECK_THAT(m.mass(lo, hi), Catch::Matchers::WithinAbs(1.0, 1e-11));
}
