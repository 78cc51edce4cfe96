#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ridgelab/dft.hpp"
#include "ridgelab/errors.hpp"

using namespace ridgelab;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    std::vector<cplx> v(n);
    for (auto& x : v) x = {normal(rng), normal(rng)};
    return v;
}

} // namespace

TEST_CASE("impulse and constant are a transform pair") {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 127ULL}) {
        const PrimeModulus pm(p);
        std::vector<cplx> delta(p);
        delta[0] = 1.0;
        const auto f = dft1(delta, pm, Direction::Forward);
        for (const auto& v : f) CHECK(std::abs(v - 1.0 / std::sqrt(static_cast<double>(p))) < 1e-14);
        const auto back = dft1(f, pm, Direction::Inverse);
        CHECK(max_abs_diff(back, delta) < 1e-14);
    }
}

TEST_CASE("prime-length transform matches the dense sum") {
    std::mt19937_64 rng(7);
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 127ULL, 1009ULL}) {
        const auto x = random_vector(p, rng);
        const PrimeModulus pm(p);
        CHECK(max_abs_diff(dft1(x, pm, Direction::Forward), oracle::dense_dft(x, -1)) < 1e-10);
        CHECK(max_abs_diff(dft1(x, pm, Direction::Inverse), oracle::dense_dft(x, +1)) < 1e-10);
    }
}

TEST_CASE("plan handles composite and power-of-two lengths") {
    std::mt19937_64 rng(8);
    for (std::size_t n : {1UL, 2UL, 4UL, 6UL, 16UL, 100UL}) {
        auto x = random_vector(n, rng);
        const auto expected = oracle::dense_dft(x, -1);
        DftPlan(n).apply(x, Direction::Forward);
        CHECK(max_abs_diff(x, expected) < 1e-11);
    }
}

TEST_CASE("round trip and unitarity") {
    std::mt19937_64 rng(9);
    const PrimeModulus pm(127);
    const auto x = random_vector(127, rng);
    const auto f = dft1(x, pm, Direction::Forward);
    CHECK(std::abs(l2_norm(f) - l2_norm(x)) < 1e-10);
    CHECK(max_abs_diff(dft1(f, pm, Direction::Inverse), x) < 1e-12);
}

TEST_CASE("length mismatch is rejected") {
    std::vector<cplx> x(4);
    CHECK_THROWS_AS(dft1(x, PrimeModulus(5), Direction::Forward), DimensionError);
}

TEST_CASE("d-dimensional transform") {
    SUBCASE("d = 1 reduces to dft1") {
        std::mt19937_64 rng(10);
        const PrimeModulus pm(7);
        const GridFunction f(pm, 1, random_vector(7, rng));
        CHECK(max_abs_diff(dftD(f, Direction::Forward).values(), dft1(f.values(), pm, Direction::Forward)) < 1e-15);
    }
    SUBCASE("delta at the origin, p = 3, d = 2") {
        GridFunction f(PrimeModulus(3), 2);
        f[0] = 1.0;
        const auto F = dftD(f, Direction::Forward);
        for (const auto& v : F.values()) CHECK(std::abs(v - 1.0 / 3.0) < 1e-15);
    }
    SUBCASE("separable result equals the direct sum") {
        std::mt19937_64 rng(11);
        for (auto [p, d] : {std::pair{5ULL, 2UL}, std::pair{3ULL, 3UL}, std::pair{7ULL, 2UL}}) {
            const PrimeModulus pm(p);
            const GridFunction f(pm, d, random_vector(oracle::ipow(p, d), rng));
            CHECK(max_abs_diff(dftD(f, Direction::Forward).values(), oracle::brute_dft_d(f.values(), p, d, -1)) <
                  1e-10);
            CHECK(max_abs_diff(dftD(f, Direction::Inverse).values(), oracle::brute_dft_d(f.values(), p, d, +1)) <
                  1e-10);
        }
    }
}
