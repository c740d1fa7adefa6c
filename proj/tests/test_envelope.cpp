#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "support/oracle.hpp"
#include "tvbounds/envelope.hpp"

using namespace tvbounds;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Brute-force argmin/argmax of the raw component densities at x.
std::pair<int, int> brute_indices(const oracle::Mix& m, double x) {
    int lo = 0, hi = 0;
    double lov = kInf, hiv = -kInf;
    for (std::size_t i = 0; i < m.comps.size(); ++i) {
        const double v = oracle::comp_pdf(m.comps[i], x);
        if (v < lov) {
            lov = v;
            lo = static_cast<int>(i);
        }
        if (v > hiv) {
            hiv = v;
            hi = static_cast<int>(i);
        }
    }
    return {lo, hi};
}

}  // namespace

TEST_CASE("single-component pair decomposes to one interval") {
    const Mixture m({Gaussian{0, 1}}, {1.0});
    const auto dec = decompose(m, m);
    REQUIRE(dec.size() == 1);
    CHECK(dec.intervals[0].a == -kInf);
    CHECK(dec.intervals[0].b == kInf);
    CHECK(dec.intervals[0].l == 0);
    CHECK(dec.intervals[0].u == 0);
    CHECK(dec.intervals[0].l_prime == 0);
    CHECK(dec.intervals[0].u_prime == 0);
}

TEST_CASE("equal-variance pair swaps envelope roles at the midpoint") {
    const Mixture m({Gaussian{0, 1}, Gaussian{1, 1}}, {0.5, 0.5});
    const Mixture mp({Gaussian{0, 1}}, {1.0});
    const auto dec = decompose(m, mp);
    REQUIRE(dec.size() == 2);
    CHECK_THAT(dec.intervals[0].b, Catch::Matchers::WithinAbs(0.5, 1e-12));
    // Left of 0.5 the N(0,1) curve is the higher one, right of it the lower.
    CHECK(dec.intervals[0].u == 0);
    CHECK(dec.intervals[0].l == 1);
    CHECK(dec.intervals[1].u == 1);
    CHECK(dec.intervals[1].l == 0);
}

TEST_CASE("gamma pair indices match a dense grid") {
    std::mt19937_64 rng(7);
    auto mk = [&] {
        auto lu = [&] {
            return 0.3 * std::exp((static_cast<double>(rng() >> 11) * 0x1.0p-53) * std::log(10.0));
        };
        return Mixture({Gamma{lu(), lu()}, Gamma{lu(), lu()}}, {0.5, 0.5});
    };
    const Mixture m = mk(), mp = mk();
    const auto dec = decompose(m, mp);
    const auto om = oracle::from(m);
    const auto omp = oracle::from(mp);
    int checked = 0;
    for (int i = 1; i < 10000; ++i) {
        const double x = 30.0 * i / 10000.0;
        // Skip points too close to a breakpoint to attribute.
        bool near = false;
        for (const auto& iv : dec.intervals)
            if (std::isfinite(iv.b) && std::abs(x - iv.b) < 1e-6) near = true;
        if (near) continue;
        const auto* iv = &dec.intervals.back();
        for (const auto& candidate : dec.intervals)
            if (x > candidate.a && x < candidate.b) iv = &candidate;
        const auto [blo, bhi] = brute_indices(om, x);
        const auto [plo, phi] = brute_indices(omp, x);
        CHECK(oracle::comp_pdf(om.comps[iv->l], x) <=
              oracle::comp_pdf(om.comps[blo], x) * (1.0 + 1e-12));
        CHECK(oracle::comp_pdf(om.comps[iv->u], x) >=
              oracle::comp_pdf(om.comps[bhi], x) * (1.0 - 1e-12));
        CHECK(oracle::comp_pdf(omp.comps[iv->l_prime], x) <=
              oracle::comp_pdf(omp.comps[plo], x) * (1.0 + 1e-12));
        CHECK(oracle::comp_pdf(omp.comps[iv->u_prime], x) >=
              oracle::comp_pdf(omp.comps[phi], x) * (1.0 - 1e-12));
        ++checked;
    }
    CHECK(checked > 9900);
}

TEST_CASE("refine splits finite intervals only") {
    const Mixture m({Gaussian{0, 1}, Gaussian{2, 1}, Gaussian{-2, 2}},
                    {1.0 / 3, 1.0 / 3, 1.0 / 3});
    const Mixture mp({Gaussian{1, 1.5}}, {1.0});
    const auto dec = decompose(m, mp);
    const auto same = refine(dec, 1);
    REQUIRE(same.size() == dec.size());
    for (std::size_t i = 0; i < dec.size(); ++i) {
        CHECK(same.intervals[i].a == dec.intervals[i].a);
        CHECK(same.intervals[i].b == dec.intervals[i].b);
    }
    std::size_t finite = 0;
    for (const auto& iv : dec.intervals)
        if (std::isfinite(iv.a) && std::isfinite(iv.b)) ++finite;
    const auto fine = refine(dec, 10);
    CHECK(fine.size() == finite * 10 + (dec.size() - finite));
}

TEST_CASE("refine splits evenly and keeps the tiling") {
    ElementaryInterval iv{0.0, 1.0, 0, 0, 0, 0};
    EnvelopeDecomposition dec;
    dec.intervals = {iv};
    dec.k_first = dec.k_second = 1;
    const auto fine = refine(dec, 10);
    REQUIRE(fine.size() == 10);
    for (int i = 0; i < 10; ++i) {
        CHECK_THAT(fine.intervals[i].b - fine.intervals[i].a,
                   Catch::Matchers::WithinAbs(0.1, 1e-15));
        if (i > 0) CHECK(fine.intervals[i].a == fine.intervals[i - 1].b);
    }
    CHECK(fine.intervals[0].a == 0.0);
    CHECK(fine.intervals[9].b == 1.0);
}

TEST_CASE("refine leaves unbounded ends whole") {
    // Five intervals, two of them unbounded: refine 10 gives 3*10 + 2.
    const double inf = std::numeric_limits<double>::infinity();
    EnvelopeDecomposition dec;
    dec.k_first = dec.k_second = 1;
    double edges[] = {-inf, -1.0, 0.0, 2.0, 5.0, inf};
    for (int i = 0; i < 5; ++i)
        dec.intervals.push_back({edges[i], edges[i + 1], 0, 0, 0, 0});
    CHECK(refine(dec, 10).size() == 32);
    CHECK_THROWS_AS(refine(dec, 0), std::invalid_argument);
}

TEST_CASE("tiling invariant on a random GMM pair") {
    std::mt19937_64 rng(31);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto mk = [&](int k) {
        std::vector<Component> cs;
        for (int i = 0; i < k; ++i) cs.push_back(Gaussian{-3.0 + 6.0 * u(), 0.4 + 2.0 * u()});
        return Mixture(std::move(cs), std::vector<double>(k, 1.0 / k));
    };
    const Mixture m = mk(4), mp = mk(3);
    for (int factor : {1, 7}) {
        const auto dec = refine(decompose(m, mp), factor);
        CHECK(dec.intervals.front().a == -kInf);
        CHECK(dec.intervals.back().b == kInf);
        for (std::size_t i = 1; i < dec.size(); ++i)
            CHECK(dec.intervals[i].a == dec.intervals[i - 1].b);
        // Index correctness at 32 probes per interval.
        const auto om = oracle::from(m);
        const auto omp = oracle::from(mp);
        for (const auto& iv : dec.intervals) {
            const double lo = std::isfinite(iv.a) ? iv.a : iv.b - 8.0;
            const double hi = std::isfinite(iv.b) ? iv.b : iv.a + 8.0;
            for (int j = 0; j < 32; ++j) {
                const double x = lo + (hi - lo) * (j + 0.5) / 32.0;
                const auto [blo, bhi] = brute_indices(om, x);
                const double vl = oracle::comp_pdf(om.comps[iv.l], x);
                const double vu = oracle::comp_pdf(om.comps[iv.u], x);
                CHECK(vl <= oracle::comp_pdf(om.comps[blo], x) * (1.0 + 1e-12));
                CHECK(vu >= oracle::comp_pdf(om.comps[bhi], x) * (1.0 - 1e-12));
                const auto [plo, phi] = brute_indices(omp, x);
                CHECK(oracle::comp_pdf(omp.comps[iv.l_prime], x) <=
                      oracle::comp_pdf(omp.comps[plo], x) * (1.0 + 1e-12));
                CHECK(oracle::comp_pdf(omp.comps[iv.u_prime], x) >=
                      oracle::comp_pdf(omp.comps[phi], x) * (1.0 - 1e-12));
            }
        }
    }
}

TEST_CASE("decompose is symmetric up to exchanging index roles") {
    const Mixture m({Gaussian{0, 1}, Gaussian{2, 0.7}}, {0.4, 0.6});
    const Mixture mp({Gaussian{-1, 1.3}, Gaussian{1, 2.2}}, {0.5, 0.5});
    const auto ab = decompose(m, mp);
    const auto ba = decompose(mp, m);
    REQUIRE(ab.size() == ba.size());
    for (std::size_t i = 0; i < ab.size(); ++i) {
        CHECK(ab.intervals[i].a == ba.intervals[i].a);
        CHECK(ab.intervals[i].b == ba.intervals[i].b);
        CHECK(ab.intervals[i].l == ba.intervals[i].l_prime);
        CHECK(ab.intervals[i].u == ba.intervals[i].u_prime);
        CHECK(ab.intervals[i].l_prime == ba.intervals[i].l);
        CHECK(ab.intervals[i].u_prime == ba.intervals[i].u);
    }
}

TEST_CASE("mixed support classes get a breakpoint at zero") {
    const Mixture m({Gaussian{1.0, 1.0}}, {1.0});
    const Mixture mp({Gamma{2.0, 1.0}, Gamma{4.0, 3.0}}, {0.5, 0.5});
    const auto dec = decompose(m, mp);
    bool has_zero = false;
    for (const auto& iv : dec.intervals) has_zero |= iv.b == 0.0 || iv.a == 0.0;
    CHECK(has_zero);
    CHECK(dec.intervals.front().a == -kInf);
}
