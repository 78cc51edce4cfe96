#include "ridgelab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "ridgelab/errors.hpp"
#include "ridgelab/lottery.hpp"
#include "ridgelab/qsim.hpp"
#include "ridgelab/transforms.hpp"

namespace ridgelab {

namespace {

constexpr std::size_t kVerifyMaxNodes = 100000;

double rel_inf_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double scale = 0.0;
    for (const auto& v : b) scale = std::max(scale, std::abs(v));
    return max_abs_diff(a, b) / std::max(scale, 1e-300);
}

} // namespace

bool VerifyReport::ok() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

void VerifyReport::print(std::ostream& os) const {
    char buf[256];
    for (const auto& c : checks) {
        if (c.skipped) {
            std::snprintf(buf, sizeof buf, "%-22s p=%-4llu d=%zu  SKIP  %s\n", c.name.c_str(),
                          static_cast<unsigned long long>(c.p), c.d, c.note.c_str());
        } else {
            std::snprintf(buf, sizeof buf, "%-22s p=%-4llu d=%zu  %-4s  residual=%.3e (tol %.0e)\n", c.name.c_str(),
                          static_cast<unsigned long long>(c.p), c.d, c.passed() ? "ok" : "FAIL", c.residual,
                          c.tolerance);
        }
        os << buf;
    }
}

std::vector<cplx> random_unit_vector(std::size_t n, Rng& rng) {
    std::normal_distribution<double> normal;
    std::vector<cplx> v(n);
    for (auto& x : v) x = {normal(rng), normal(rng)};
    const double norm = l2_norm(v);
    for (auto& x : v) x /= norm;
    return v;
}

GridFunction random_real_function(PrimeModulus p, std::size_t d, Rng& rng) {
    std::normal_distribution<double> normal;
    GridFunction f(p, d);
    for (auto& x : f.values()) x = normal(rng);
    return f;
}

QrtVerifyResult qrt_verify(std::uint64_t p, std::size_t d, std::size_t trials, std::uint64_t seed) {
    const PrimeModulus pm(p);
    const ActivationPair pair(pm, ramp_activation(p));
    const RidgeletOperator dense = build_r_dense(pair, d);
    Rng rng(seed);
    QrtVerifyResult out;
    out.expected_stages = qrt_stage_count(d);
    for (std::size_t t = 0; t < trials; ++t) {
        const QuditState psi(pm, d, random_unit_vector(grid_size(pm, d), rng));
        QrtTrace trace;
        const QuditState out_state = qrt_apply(psi, pair, &trace);
        const auto reference = dense.apply(psi.amplitudes());
        std::vector<cplx> diff(reference.size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = out_state.amplitudes()[i] - reference[i];
        out.max_deviation = std::max(out.max_deviation, l2_norm(diff));
        out.max_zero_slice_mass = std::max(out.max_zero_slice_mass, trace.zero_slice_mass);
        out.stages = trace.stages;
    }
    return out;
}

VerifyReport verify_all(std::span<const std::uint64_t> p_list, std::span<const std::size_t> d_list,
                        std::uint64_t seed, std::size_t trials) {
    for (auto p : p_list) {
        if (!is_prime(p)) throw InvalidModulus(std::to_string(p) + " is not prime");
        for (auto d : d_list) {
            if (d == 0) throw DimensionError("d must be at least 1");
            if (grid_size(PrimeModulus(p), d + 1) > kVerifyMaxNodes)
                throw DimensionError("p^(d+1) exceeds 10^5 for p=" + std::to_string(p) + ", d=" + std::to_string(d));
        }
    }

    VerifyReport report;
    for (auto p : p_list) {
        const PrimeModulus pm(p);
        const ActivationPair self_dual(pm, ramp_activation(p));
        const ActivationPair mixed(pm, ramp_activation(p), tanh_activation(p));
        for (auto d : d_list) {
            Rng rng(split_seed(seed, {p, d}));
            const auto make = [&](const char* name) { return CheckResult{name, p, d, 0.0, kVerifyTolerance, false, {}}; };
            auto recon = make("reconstruction");
            auto slice = make("fourier-slice");
            auto iso = make("isometry-norm");
            for (std::size_t t = 0; t < trials; ++t) {
                const GridFunction f = random_real_function(pm, d, rng);
                for (const ActivationPair* pair : {&self_dual, &mixed}) {
                    GridFunction back = ridgelet_synthesize(ridgelet_analyze(f, *pair), *pair);
                    for (auto& v : back.values()) v /= pair->c_gr();
                    recon.residual = std::max(recon.residual, rel_inf_diff(back.values(), f.values()));
                    slice.residual = std::max(slice.residual, fourier_slice_check(f, *pair));
                }
                const double ratio = ridgelet_analyze(f, self_dual).norm2() / f.norm2();
                iso.residual = std::max(iso.residual, std::abs(ratio - 1.0));
            }

            auto gram = make("isometry-gram");
            if (grid_size(pm, d + 1) <= dense_limit()) {
                gram.residual = build_r_dense(self_dual, d).gram_deviation();
            } else {
                gram.skipped = true;
                gram.note = "beyond dense limit";
            }

            const auto qrt = qrt_verify(p, d, trials, split_seed(seed, {p, d, 1}));
            auto qrt_dense = make("qrt-vs-dense");
            qrt_dense.residual = qrt.max_deviation;
            auto qrt_zero = make("qrt-zero-slice");
            qrt_zero.residual = qrt.max_zero_slice_mass;
            auto qrt_stages = make("qrt-stage-count");
            qrt_stages.residual = qrt.stages == qrt.expected_stages ? 0.0 : 1.0;

            const EmpiricalData data = uniform_dataset(random_real_function(pm, d, rng));
            const RidgeSolution fast = solve_ridge(data, self_dual, 1e-2, RidgePath::Fast);
            auto ridge = make("ridge-fast-vs-generic");
            try {
                const RidgeSolution generic = solve_ridge(data, self_dual, 1e-2, RidgePath::Generic);
                std::vector<cplx> diff(fast.u.size());
                for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = fast.u[i] - generic.u[i];
                ridge.residual = l2_norm(diff) / generic.u.norm2();
            } catch (const TooLargeForDense&) {
                ridge.skipped = true;
                ridge.note = "generic dense solve beyond dense limit";
            }

            const double big_delta = 1e-2 * fast.gamma / static_cast<double>(fast.u.size());
            const auto direct = optimized_distribution(fast, big_delta);
            const auto via_state = optimized_distribution_via_state(fast, big_delta);
            auto dist = make("distribution-routes");
            for (std::size_t i = 0; i < direct.probs.size(); ++i)
                dist.residual = std::max(dist.residual, std::abs(direct.probs[i] - via_state.probs[i]));

            for (auto* c : {&recon, &slice, &iso, &gram, &qrt_dense, &qrt_zero, &qrt_stages, &ridge, &dist})
                report.checks.push_back(std::move(*c));
        }
    }
    return report;
}

} // namespace ridgelab
