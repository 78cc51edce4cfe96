#include "ridgelab/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "ridgelab/errors.hpp"
#include "ridgelab/random.hpp"

namespace ridgelab {

std::size_t dense_limit() {
    constexpr std::size_t kDefault = 1'000'000;
    const char* env = std::getenv("RIDGELAB_DENSE_LIMIT");
    if (env == nullptr || *env == '\0') return kDefault;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
        throw ConfigError("RIDGELAB_DENSE_LIMIT", "expected a positive integer, got '" + std::string(env) + "'");
    return static_cast<std::size_t>(v);
}

QuditState::QuditState(PrimeModulus p, std::size_t registers, std::vector<cplx> amps)
    : p_(p), registers_(registers), amps_(std::move(amps)) {
    if (amps_.size() != grid_size(p_, registers_))
        throw DimensionError("state needs p^registers amplitudes");
    const double n = l2_norm(amps_);
    if (!(std::abs(n - 1.0) <= kStateNormTolerance))
        throw StateNotNormalized("state norm is " + std::to_string(n));
}

QuditState QuditState::basis(PrimeModulus p, std::size_t registers, std::size_t index) {
    std::vector<cplx> amps(grid_size(p, registers), cplx{});
    if (index >= amps.size()) throw DimensionError("basis index out of range");
    amps[index] = 1.0;
    return QuditState(p, registers, std::move(amps));
}

QuditState QuditState::normalized(const GridFunction& f) {
    const double n = f.norm2();
    if (n == 0.0) throw StateNotNormalized("cannot normalize the zero function");
    std::vector<cplx> amps = f.values();
    for (auto& z : amps) z /= n;
    return QuditState(f.modulus(), f.dim(), std::move(amps));
}

RidgeletOperator::RidgeletOperator(PrimeModulus p, std::size_t d, Eigen::MatrixXd matrix)
    : p_(p), d_(d), m_(std::move(matrix)) {
    if (static_cast<std::size_t>(m_.rows()) != grid_size(p_, d_ + 1) ||
        static_cast<std::size_t>(m_.cols()) != grid_size(p_, d_))
        throw DimensionError("ridgelet operator must be p^(d+1) x p^d");
}

std::vector<cplx> RidgeletOperator::apply(std::span<const cplx> x) const {
    if (x.size() != static_cast<std::size_t>(m_.cols())) throw DimensionError("operand length mismatch");
    Eigen::VectorXcd in(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) in[static_cast<Eigen::Index>(i)] = x[i];
    const Eigen::VectorXcd out = m_.cast<cplx>() * in;
    return {out.data(), out.data() + out.size()};
}

double RidgeletOperator::gram_deviation() const {
    Eigen::MatrixXd gram = m_.transpose() * m_;
    gram -= Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
    return gram.cwiseAbs().maxCoeff();
}

Eigen::MatrixXd ridgelet_matrix(PrimeModulus p, std::span<const double> kernel, std::size_t d) {
    if (kernel.size() != p.value()) throw DimensionError("kernel needs p samples");
    const std::size_t rows = grid_size(p, d + 1);
    const std::size_t cols = grid_size(p, d);
    const std::uint64_t pv = p.value();
    const double norm = std::pow(static_cast<double>(pv), -0.5 * static_cast<double>(d));
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for_each_point(p, d, [&](std::size_t a_lin, std::span<const std::uint64_t> a) {
        for_each_point(p, d, [&](std::size_t x_lin, std::span<const std::uint64_t> x) {
            const std::uint64_t ax = dot_mod(a, x, p);
            for (std::uint64_t b = 0; b < pv; ++b)
                m(static_cast<Eigen::Index>(a_lin + cols * b), static_cast<Eigen::Index>(x_lin)) =
                    norm * kernel[(ax + pv - b) % pv];
        });
    });
    return m;
}

RidgeletOperator build_r_dense(PrimeModulus p, std::span<const double> r, std::size_t d) {
    if (r.size() != p.value()) throw DimensionError("ridgelet function needs p samples");
    const std::size_t rows = grid_size(p, d + 1);
    const std::size_t limit = dense_limit();
    if (rows > limit)
        throw TooLargeForDense("dense R needs columns of length " + std::to_string(rows) + " > limit " +
                               std::to_string(limit));
    Eigen::MatrixXd m = ridgelet_matrix(p, r, d);
    RidgeletOperator op(p, d, std::move(m));
    const double dev = op.gram_deviation();
    if (!(dev < kIsometryTolerance))
        throw NotIsometric("R^T R deviates from identity by " + std::to_string(dev));
    return op;
}

RidgeletOperator build_r_dense(const ActivationPair& pair, std::size_t d) {
    return build_r_dense(pair.modulus(), pair.r(), d);
}

void apply_register_dft(std::vector<cplx>& amps, const PrimeModulus& p, std::size_t registers,
                        std::size_t reg, Direction dir) {
    if (reg >= registers) throw DimensionError("register index out of range");
    const std::size_t pv = p.value();
    const std::size_t n = amps.size();
    std::size_t stride = 1;
    for (std::size_t k = 0; k < reg; ++k) stride *= pv;
    const std::size_t block = stride * pv;
    DftPlan plan(pv);
    std::vector<cplx> line(pv);
    for (std::size_t base = 0; base < n; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t start = base + off;
            for (std::size_t k = 0; k < pv; ++k) line[k] = amps[start + k * stride];
            plan.apply(line, dir);
            for (std::size_t k = 0; k < pv; ++k) amps[start + k * stride] = line[k];
        }
    }
}

std::size_t qrt_stage_count(std::size_t d) noexcept { return d + 3; }

QuditState qrt_apply(const QuditState& state, const ActivationPair& pair, QrtTrace* trace) {
    if (state.p() != pair.p()) throw DimensionError("state and ridgelet function use different moduli");
    const auto& r = pair.r();
    const double sum_r = std::accumulate(r.begin(), r.end(), 0.0);
    const double norm_r = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
    if (std::abs(sum_r) > 1e-12 || std::abs(norm_r - 1.0) > 1e-12)
        throw NotIsometric("ridgelet function must have zero sum and unit norm");

    const auto& pm = state.modulus();
    const std::uint64_t p = pm.value();
    const std::size_t d = state.registers();
    const std::size_t slice = grid_size(pm, d);
    std::size_t stages = 0;

    // Step 1: append the auxiliary register prepared in |r>.
    std::vector<cplx> amps(slice * p);
    const auto& psi = state.amplitudes();
    for (std::uint64_t b = 0; b < p; ++b)
        for (std::size_t x = 0; x < slice; ++x) amps[x + slice * b] = psi[x] * r[b];

    // Step 2: QFT on each input register, inverse QFT on the auxiliary one.
    for (std::size_t k = 0; k < d; ++k, ++stages) apply_register_dft(amps, pm, d + 1, k, Direction::Forward);
    apply_register_dft(amps, pm, d + 1, d, Direction::Inverse);
    ++stages;

    double zero_mass = 0.0;
    for (std::size_t x = 0; x < slice; ++x) zero_mass += std::norm(amps[x]);

    // Step 3: |a'>|v> -> |v^-1 a' mod p>|v> for v != 0; the v = 0 slice is left alone.
    std::vector<cplx> permuted(amps.size());
    std::copy_n(amps.begin(), slice, permuted.begin());
    for (std::uint64_t v = 1; v < p; ++v) {
        const std::uint64_t v_inv = mod_inverse(v, pm);
        for_each_point(pm, d, [&](std::size_t a_lin, std::span<const std::uint64_t> a_prime) {
            std::size_t target = 0;
            std::size_t stride = 1;
            for (std::size_t k = 0; k < d; ++k) {
                target += static_cast<std::size_t>(mul_mod(a_prime[k], v_inv, p)) * stride;
                stride *= p;
            }
            permuted[target + slice * v] = amps[a_lin + slice * v];
        });
    }
    ++stages;

    // Step 4: inverse QFT on the auxiliary register.
    apply_register_dft(permuted, pm, d + 1, d, Direction::Inverse);
    ++stages;

    if (trace != nullptr) {
        trace->zero_slice_mass = zero_mass;
        trace->stages = stages;
    }
    return QuditState(pm, d + 1, std::move(permuted));
}

std::vector<std::size_t> measure_samples(const QuditState& state, std::size_t n, std::uint64_t seed) {
    const auto& amps = state.amplitudes();
    std::vector<double> cdf(amps.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        cdf[i] = acc;
    }
    Rng rng(seed);
    std::vector<std::size_t> out;
    out.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        const double u = uniform01(rng) * acc;
        // First strictly greater entry, so zero-probability outcomes are never hit.
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) it = std::prev(cdf.end());
        out.push_back(static_cast<std::size_t>(it - cdf.begin()));
    }
    return out;
}

} // namespace ridgelab
