#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ridgelab/errors.hpp"
#include "ridgelab/transforms.hpp"
#include "ridgelab/verify.hpp"

using namespace ridgelab;

namespace {

// <g, r> for the normalized ramp and normalized tanh(10 x / 127) on Z_127,
// evaluated independently with numpy.
constexpr double kRampTanhC127 = 0.16228902199466252;

} // namespace

TEST_CASE("normalize_activation") {
    SUBCASE("zero sum and unit norm") {
        const auto g = normalize_activation(ramp_activation(127));
        double sum = 0.0;
        double ss = 0.0;
        for (double v : g) {
            sum += v;
            ss += v * v;
        }
        CHECK(std::abs(sum) < 1e-12);
        CHECK(std::abs(ss - 1.0) < 1e-12);
        const auto expected = oracle::normalized(ramp_activation(127));
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == doctest::Approx(expected[i]).epsilon(1e-13));
    }
    SUBCASE("idempotent") {
        const auto g = normalize_activation(tanh_activation(31));
        const auto g2 = normalize_activation(g);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(g[i] - g2[i]) < 1e-15);
    }
    SUBCASE("delta at 0, p = 5") {
        const auto g = normalize_activation(std::vector<double>{1, 0, 0, 0, 0});
        // (delta - 1/5) has entries 4/5, -1/5 x4 and norm sqrt(20)/5.
        const double n = std::sqrt(20.0) / 5.0;
        CHECK(g[0] == doctest::Approx(0.8 / n));
        for (int i = 1; i < 5; ++i) CHECK(g[i] == doctest::Approx(-0.2 / n));
    }
    SUBCASE("degenerate inputs") {
        CHECK_THROWS_AS(normalize_activation(std::vector<double>{2, 2, 2}), DegenerateActivation);
        CHECK_THROWS_AS(normalize_activation(std::vector<double>{}), DegenerateActivation);
        CHECK_THROWS_AS(normalize_activation(std::vector<double>{1, NAN, 0}), DegenerateActivation);
    }
    SUBCASE("ramp shape") {
        const auto r = ramp_activation(7);
        CHECK(r == std::vector<double>{0, 1, 2, 3, 0, 0, 0});
    }
}

TEST_CASE("admissibility constant") {
    const auto g = normalize_activation(ramp_activation(127));
    const auto r = normalize_activation(tanh_activation(127));
    CHECK(std::abs(admissibility_constant(g, g) - 1.0) < 1e-12);
    const cplx c = admissibility_constant(g, r);
    double direct = 0.0;
    for (std::size_t b = 0; b < g.size(); ++b) direct += g[b] * r[b];
    CHECK(std::abs(c - direct) < 1e-12);
    CHECK(c.real() == doctest::Approx(kRampTanhC127).epsilon(1e-12));
    CHECK(std::abs(c.imag()) < 1e-12);

    // r orthogonal to g: C vanishes.
    const std::vector<double> g3{1, -1, 0};
    const std::vector<double> r3{1, 1, -2};
    CHECK_THROWS_AS(admissibility_constant(normalize_activation(g3), normalize_activation(r3)), NotAdmissible);
    CHECK_THROWS_AS(ActivationPair(PrimeModulus(3), g3, r3), NotAdmissible);
}

TEST_CASE("ActivationPair") {
    const ActivationPair pair(PrimeModulus(11), ramp_activation(11));
    CHECK(pair.self_dual());
    CHECK(std::abs(pair.c_gr() - 1.0) < 1e-12);
    CHECK(std::abs(pair.g_hat()[0]) < 1e-14);
    const ActivationPair mixed(PrimeModulus(11), ramp_activation(11), tanh_activation(11));
    CHECK_FALSE(mixed.self_dual());
    CHECK_THROWS_AS(ActivationPair(PrimeModulus(11), ramp_activation(7)), DimensionError);
}

TEST_CASE("ridgelet analysis") {
    std::mt19937_64 rng(21);
    SUBCASE("f = 0") {
        const ActivationPair pair(PrimeModulus(5), ramp_activation(5));
        for (auto path : {AnalysisPath::Direct, AnalysisPath::Fourier})
            CHECK(ridgelet_analyze(GridFunction(PrimeModulus(5), 2), pair, path).max_abs() == 0.0);
    }
    SUBCASE("delta input gives a shifted copy of r") {
        const PrimeModulus pm(5);
        const ActivationPair pair(pm, ramp_activation(5), tanh_activation(5));
        GridFunction f(pm, 2);
        const GridIndex x0{{2, 3}};
        f[linear_index(x0, pm)] = 1.0;
        const auto w = ridgelet_analyze(f, pair);
        for (std::size_t a = 0; a < 25; ++a)
            for (std::uint64_t b = 0; b < 5; ++b) {
                const auto ac = grid_index(a, pm, 2);
                const double expected = pair.r()[(dot_mod(ac.coords, x0.coords, pm) + 5 - b) % 5] / 5.0;
                CHECK(std::abs(w.at(a, b) - expected) < 1e-14);
            }
    }
    SUBCASE("fourier and direct paths match the literal sum") {
        for (auto [p, d] : {std::pair{5ULL, 1UL}, std::pair{3ULL, 2UL}, std::pair{7ULL, 2UL}, std::pair{3ULL, 3UL}}) {
            const PrimeModulus pm(p);
            const ActivationPair pair(pm, ramp_activation(p), tanh_activation(p));
            const GridFunction f = random_real_function(pm, d, rng);
            const auto expected = oracle::literal_analyze(f.values(), pair.r(), p, d);
            CHECK(max_abs_diff(ridgelet_analyze(f, pair, AnalysisPath::Direct).values(), expected) < 1e-10);
            CHECK(max_abs_diff(ridgelet_analyze(f, pair, AnalysisPath::Fourier).values(), expected) < 1e-10);
        }
    }
    SUBCASE("modulus mismatch") {
        const ActivationPair pair(PrimeModulus(5), ramp_activation(5));
        CHECK_THROWS_AS(ridgelet_analyze(GridFunction(PrimeModulus(7), 1), pair), DimensionError);
    }
}

TEST_CASE("ridgelet synthesis") {
    std::mt19937_64 rng(22);
    const PrimeModulus pm(5);
    const ActivationPair pair(pm, ramp_activation(5), tanh_activation(5));
    SUBCASE("w = 0") { CHECK(ridgelet_synthesize(RidgeletCoeffs(pm, 2), pair).max_abs() == 0.0); }
    SUBCASE("single node") {
        RidgeletCoeffs w(pm, 2);
        const GridIndex a0{{1, 4}};
        const std::uint64_t b0 = 3;
        w.at(linear_index(a0, pm), b0) = 1.0;
        const auto s = ridgelet_synthesize(w, pair);
        for (std::size_t x = 0; x < 25; ++x) {
            const auto xc = grid_index(x, pm, 2);
            CHECK(std::abs(s[x] - pair.g()[(dot_mod(a0.coords, xc.coords, pm) + 5 - b0) % 5] / 5.0) < 1e-14);
        }
    }
    SUBCASE("matches the literal sum") {
        RidgeletCoeffs w(pm, 2);
        std::normal_distribution<double> normal;
        for (auto& v : w.values()) v = {normal(rng), normal(rng)};
        CHECK(max_abs_diff(ridgelet_synthesize(w, pair).values(), oracle::literal_synthesize(w.values(), pair.g(), 5, 2)) <
              1e-10);
    }
}

TEST_CASE("exact reconstruction, p = 7") {
    std::mt19937_64 rng(23);
    const PrimeModulus pm(7);
    for (const auto& pair : {ActivationPair(pm, ramp_activation(7)), ActivationPair(pm, ramp_activation(7), tanh_activation(7))}) {
        for (int t = 0; t < 10; ++t) {
            const GridFunction f = random_real_function(pm, 1, rng);
            auto back = ridgelet_synthesize(ridgelet_analyze(f, pair), pair);
            for (auto& v : back.values()) v /= pair.c_gr();
            CHECK(max_abs_diff(back.values(), f.values()) < 1e-9 * f.max_abs());
            CHECK(back.max_imag() < 1e-10);
        }
    }
}

TEST_CASE("Fourier slice residual") {
    std::mt19937_64 rng(24);
    const PrimeModulus p5(5);
    const ActivationPair pair5(p5, ramp_activation(5));
    CHECK(fourier_slice_check(GridFunction(p5, 1), pair5) == 0.0);
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
        const PrimeModulus pm(p);
        const ActivationPair pair(pm, ramp_activation(p), tanh_activation(p));
        for (std::size_t d : {1UL, 2UL})
            for (int t = 0; t < 50; ++t) CHECK(fourier_slice_check(random_real_function(pm, d, rng), pair) < 1e-9);
    }
}

TEST_CASE("isometry of the analysis map") {
    std::mt19937_64 rng(25);
    for (std::uint64_t p : {3ULL, 11ULL, 127ULL}) {
        const PrimeModulus pm(p);
        const ActivationPair pair(pm, tanh_activation(p));
        const GridFunction f = random_real_function(pm, 1, rng);
        CHECK(std::abs(ridgelet_analyze(f, pair).norm2() / f.norm2() - 1.0) < 1e-10);
    }
}

TEST_CASE("kernel helpers are adjoint") {
    std::mt19937_64 rng(26);
    const PrimeModulus pm(5);
    const auto g = normalize_activation(tanh_activation(5));
    const GridFunction f = random_real_function(pm, 2, rng);
    RidgeletCoeffs w(pm, 2);
    std::normal_distribution<double> normal;
    for (auto& v : w.values()) v = normal(rng);
    // <w, A f> = <S w, f> for A = analysis with g and S = synthesis with g.
    const auto af = analyze_with_kernel(f, g, AnalysisPath::Fourier);
    const auto sw = synthesize_with_kernel(w, g);
    cplx lhs{};
    cplx rhs{};
    for (std::size_t i = 0; i < w.size(); ++i) lhs += w[i] * af[i];
    for (std::size_t x = 0; x < f.size(); ++x) rhs += sw[x] * f[x];
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK(max_abs_diff(af.values(), oracle::literal_analyze(f.values(), g, 5, 2)) < 1e-12);
}
