#include <doctest.h>

#include <cstdlib>
#include <random>

#include "oracles.hpp"
#include "ridgelab/errors.hpp"
#include "ridgelab/qsim.hpp"
#include "ridgelab/verify.hpp"

using namespace ridgelab;

namespace {

struct DenseLimitGuard {
    explicit DenseLimitGuard(const char* value) { setenv("RIDGELAB_DENSE_LIMIT", value, 1); }
    ~DenseLimitGuard() { unsetenv("RIDGELAB_DENSE_LIMIT"); }
};

std::vector<cplx> to_vector(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

} // namespace

TEST_CASE("QuditState normalization") {
    const PrimeModulus pm(3);
    CHECK_THROWS_AS(QuditState(pm, 1, {1.0, 1.0, 0.0}), StateNotNormalized);
    CHECK_THROWS_AS(QuditState(pm, 2, {1.0, 0.0, 0.0}), DimensionError);
    const auto s = QuditState::basis(pm, 2, 4);
    CHECK(s.amplitudes()[4] == cplx{1.0});
    GridFunction f(pm, 1);
    f[0] = 3.0;
    f[2] = 4.0;
    CHECK(std::abs(QuditState::normalized(f).amplitudes()[2] - 0.8) < 1e-15);
}

TEST_CASE("dense R") {
    SUBCASE("p = 3, d = 1 is a 9 x 3 isometry") {
        const ActivationPair pair(PrimeModulus(3), ramp_activation(3));
        const auto R = build_r_dense(pair, 1);
        CHECK(R.matrix().rows() == 9);
        CHECK(R.matrix().cols() == 3);
        CHECK(R.gram_deviation() < 1e-12);
        CHECK((R.matrix() - oracle::dense_r(pair.r(), 3, 1)).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("entries follow the defining formula for d = 2") {
        const ActivationPair pair(PrimeModulus(5), tanh_activation(5));
        const auto R = build_r_dense(pair, 2);
        CHECK((R.matrix() - oracle::dense_r(pair.r(), 5, 2)).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(R.gram_deviation() < 1e-12);
    }
    SUBCASE("p = 127, d = 1 preserves norms") {
        std::mt19937_64 rng(31);
        const PrimeModulus pm(127);
        const ActivationPair pair(pm, ramp_activation(127));
        const auto R = build_r_dense(pair, 1);
        CHECK(R.matrix().rows() == 16129);
        const GridFunction f = random_real_function(pm, 1, rng);
        CHECK(std::abs(l2_norm(R.apply(f.values())) / f.norm2() - 1.0) < 1e-10);
    }
    SUBCASE("nonzero-sum ridgelet function is refused") {
        const std::vector<double> r{0.8, 0.6, 0.0};
        CHECK_THROWS_AS(build_r_dense(PrimeModulus(3), r, 1), NotIsometric);
    }
    SUBCASE("dense limit") {
        const ActivationPair pair(PrimeModulus(5), ramp_activation(5));
        {
            const DenseLimitGuard guard("100");
            CHECK(dense_limit() == 100);
            CHECK_THROWS_AS(build_r_dense(pair, 2), TooLargeForDense);
            CHECK_NOTHROW(build_r_dense(pair, 1));
        }
        {
            const DenseLimitGuard guard("lots");
            CHECK_THROWS_AS(dense_limit(), ConfigError);
        }
        CHECK(dense_limit() == 1000000);
    }
}

TEST_CASE("QRT pipeline against the dense operator") {
    std::mt19937_64 rng(32);
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
        const PrimeModulus pm(p);
        const ActivationPair pair(pm, ramp_activation(p), tanh_activation(p));
        for (std::size_t d : {1UL, 2UL}) {
            const Eigen::MatrixXd R = oracle::dense_r(pair.r(), p, d);
            const std::size_t n = grid_size(pm, d);
            {  // basis states give columns
                for (std::size_t x = 0; x < n; ++x) {
                    const auto out = qrt_apply(QuditState::basis(pm, d, x), pair);
                    CHECK(out.registers() == d + 1);
                    for (std::size_t i = 0; i < out.amplitudes().size(); ++i)
                        CHECK(std::abs(out.amplitudes()[i] - R(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x))) <
                              1e-12);
                }
            }
            {  // random states
                for (int t = 0; t < 20; ++t) {
                    const auto psi = random_unit_vector(n, rng);
                    QrtTrace trace;
                    const auto out = qrt_apply(QuditState(pm, d, psi), pair, &trace);
                    const Eigen::VectorXcd expected =
                        R.cast<cplx>() * Eigen::Map<const Eigen::VectorXcd>(psi.data(), static_cast<Eigen::Index>(n));
                    std::vector<cplx> diff = to_vector(expected);
                    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= out.amplitudes()[i];
                    CHECK(l2_norm(diff) < 1e-10);
                    CHECK(trace.zero_slice_mass < 1e-12);
                    CHECK(trace.stages == d + 3);
                    CHECK(std::abs(l2_norm(out.amplitudes()) - 1.0) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("QRT is linear") {
    std::mt19937_64 rng(33);
    const PrimeModulus pm(5);
    const ActivationPair pair(pm, tanh_activation(5));
    const auto a = random_unit_vector(25, rng);
    const auto b = random_unit_vector(25, rng);
    const cplx alpha{0.3, -1.2};
    const cplx beta{2.0, 0.5};
    std::vector<cplx> mix(25);
    for (std::size_t i = 0; i < 25; ++i) mix[i] = alpha * a[i] + beta * b[i];
    const double norm = l2_norm(mix);
    for (auto& v : mix) v /= norm;
    const auto qa = qrt_apply(QuditState(pm, 2, a), pair).amplitudes();
    const auto qb = qrt_apply(QuditState(pm, 2, b), pair).amplitudes();
    const auto qm = qrt_apply(QuditState(pm, 2, mix), pair).amplitudes();
    for (std::size_t i = 0; i < qm.size(); ++i) CHECK(std::abs(qm[i] - (alpha * qa[i] + beta * qb[i]) / norm) < 1e-10);
}

TEST_CASE("stage count is d + 3") {
    CHECK(qrt_stage_count(1) == 4);
    CHECK(qrt_stage_count(2) == 5);
    CHECK(qrt_stage_count(10) == 13);
    // Run the pipeline for every d in [1, 16] on qubits.
    const PrimeModulus p2(2);
    const ActivationPair pair(p2, std::vector<double>{1.0, 0.0});
    for (std::size_t d = 1; d <= 16; ++d) {
        QrtTrace trace;
        const auto out = qrt_apply(QuditState::basis(p2, d, (std::size_t{1} << d) - 1), pair, &trace);
        CHECK(trace.stages == d + 3);
        CHECK(trace.stages == qrt_stage_count(d));
        CHECK(std::abs(l2_norm(out.amplitudes()) - 1.0) < 1e-10);
    }
}

TEST_CASE("register DFT") {
    std::mt19937_64 rng(34);
    const PrimeModulus pm(3);
    auto amps = random_unit_vector(27, rng);
    const auto original = amps;
    apply_register_dft(amps, pm, 3, 1, Direction::Forward);
    // Register 1 is the middle coordinate: compare fiber by fiber.
    for (std::size_t c0 = 0; c0 < 3; ++c0)
        for (std::size_t c2 = 0; c2 < 3; ++c2) {
            std::vector<cplx> fiber(3);
            for (std::size_t k = 0; k < 3; ++k) fiber[k] = original[c0 + 3 * k + 9 * c2];
            const auto expected = oracle::dense_dft(fiber, -1);
            for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(amps[c0 + 3 * k + 9 * c2] - expected[k]) < 1e-14);
        }
    apply_register_dft(amps, pm, 3, 1, Direction::Inverse);
    CHECK(max_abs_diff(amps, original) < 1e-14);
}

TEST_CASE("measurement sampling") {
    SUBCASE("basis state") {
        for (auto k : measure_samples(QuditState::basis(PrimeModulus(5), 2, 13), 1000, 1)) CHECK(k == 13);
    }
    SUBCASE("no draws") { CHECK(measure_samples(QuditState::basis(PrimeModulus(5), 1, 0), 0, 1).empty()); }
    SUBCASE("uniform superposition on one register") {
        const std::size_t n = 100000;
        std::vector<cplx> amps(5, 1.0 / std::sqrt(5.0));
        const auto draws = measure_samples(QuditState(PrimeModulus(5), 1, amps), n, 42);
        std::vector<double> count(5);
        for (auto k : draws) count[k] += 1.0;
        const double sigma = std::sqrt(n * 0.2 * 0.8);
        for (double c : count) CHECK(std::abs(c - n * 0.2) < 4.0 * sigma);
    }
    SUBCASE("R|f> frequencies follow the dense distribution") {
        std::mt19937_64 rng(35);
        const PrimeModulus pm(5);
        const ActivationPair pair(pm, ramp_activation(5));
        const GridFunction f = random_real_function(pm, 1, rng);
        const auto out = qrt_apply(QuditState::normalized(f), pair);
        const Eigen::MatrixXd R = oracle::dense_r(pair.r(), 5, 1);
        Eigen::VectorXd fv(5);
        for (int i = 0; i < 5; ++i) fv[i] = f[static_cast<std::size_t>(i)].real();
        const Eigen::VectorXd rf = R * fv;
        const Eigen::VectorXd probs = rf.array().square() / rf.squaredNorm();

        const std::size_t n = 100000;
        std::vector<double> count(25);
        for (auto k : measure_samples(out, n, 7)) count[k] += 1.0;
        double chi2 = 0.0;
        int dof = -1;
        for (int i = 0; i < 25; ++i) {
            const double e = probs[i] * static_cast<double>(n);
            if (e < 5.0) continue;
            chi2 += (count[static_cast<std::size_t>(i)] - e) * (count[static_cast<std::size_t>(i)] - e) / e;
            ++dof;
        }
        // 99.9% quantile of chi-square with <= 24 degrees of freedom is below 52.
        CHECK(dof > 5);
        CHECK(chi2 < 52.0);
    }
    SUBCASE("deterministic in the seed") {
        std::vector<cplx> amps(7, 1.0 / std::sqrt(7.0));
        const QuditState s(PrimeModulus(7), 1, amps);
        CHECK(measure_samples(s, 50, 3) == measure_samples(s, 50, 3));
        CHECK(measure_samples(s, 50, 3) != measure_samples(s, 50, 4));
    }
}
