#include "ridgelab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ridgelab/errors.hpp"

namespace ridgelab {

namespace {

std::vector<cplx> spectrum(std::span<const double> x, const PrimeModulus& p) {
    std::vector<cplx> z(x.begin(), x.end());
    DftPlan(p.value()).apply(z, Direction::Forward);
    return z;
}

void require_same_modulus(std::uint64_t a, std::uint64_t b) {
    if (a != b) throw DimensionError("modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

// Linear index of (v * a) mod p for a given by its coordinates.
std::size_t scaled_linear(std::span<const std::uint64_t> a, std::uint64_t v, std::uint64_t p) {
    std::size_t lin = 0;
    std::size_t stride = 1;
    for (auto c : a) {
        lin += static_cast<std::size_t>(mul_mod(c, v, p)) * stride;
        stride *= p;
    }
    return lin;
}

std::vector<std::uint64_t> dots_for(std::span<const std::uint64_t> a, const PrimeModulus& p, std::size_t d) {
    std::vector<std::uint64_t> dots(grid_size(p, d));
    for_each_point(p, d, [&](std::size_t x_lin, std::span<const std::uint64_t> x) {
        dots[x_lin] = dot_mod(a, x, p);
    });
    return dots;
}

RidgeletCoeffs analyze_direct(const GridFunction& f, std::span<const double> kernel) {
    const auto& pm = f.modulus();
    const std::uint64_t p = pm.value();
    const std::size_t d = f.dim();
    const double norm = std::pow(static_cast<double>(p), -0.5 * static_cast<double>(d));
    RidgeletCoeffs out(pm, d);
    for_each_point(pm, d, [&](std::size_t a_lin, std::span<const std::uint64_t> a) {
        const auto dots = dots_for(a, pm, d);
        for (std::uint64_t b = 0; b < p; ++b) {
            cplx acc{};
            for (std::size_t x = 0; x < f.size(); ++x) acc += f[x] * kernel[(dots[x] + p - b) % p];
            out.at(a_lin, b) = norm * acc;
        }
    });
    return out;
}

RidgeletCoeffs analyze_fourier(const GridFunction& f, std::span<const cplx> kernel_hat) {
    const auto& pm = f.modulus();
    const std::uint64_t p = pm.value();
    const std::size_t d = f.dim();
    const GridFunction fhat = dftD(f, Direction::Forward);
    DftPlan plan(p);
    RidgeletCoeffs out(pm, d);
    std::vector<cplx> slice(p);
    for_each_point(pm, d, [&](std::size_t a_lin, std::span<const std::uint64_t> a) {
        for (std::uint64_t v = 0; v < p; ++v)
            slice[v] = fhat[scaled_linear(a, v, p)] * std::conj(kernel_hat[v]);
        plan.apply(slice, Direction::Inverse);
        for (std::uint64_t b = 0; b < p; ++b) out.at(a_lin, b) = slice[b];
    });
    return out;
}

} // namespace

std::vector<double> normalize_activation(std::span<const double> raw) {
    if (raw.empty()) throw DegenerateActivation("activation has no samples");
    double scale = 0.0;
    for (double x : raw) {
        if (!std::isfinite(x)) throw DegenerateActivation("activation has non-finite samples");
        scale = std::max(scale, std::abs(x));
    }
    const double mean = std::accumulate(raw.begin(), raw.end(), 0.0) / static_cast<double>(raw.size());
    std::vector<double> out(raw.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = raw[i] - mean;
        ss += out[i] * out[i];
    }
    const double n = std::sqrt(ss);
    if (n <= 1e-12 * std::max(scale, 1e-300) * std::sqrt(static_cast<double>(raw.size())))
        throw DegenerateActivation("activation is constant");
    for (double& x : out) x /= n;
    return out;
}

cplx admissibility_constant(std::span<const double> g, std::span<const double> r) {
    if (g.size() != r.size()) throw DimensionError("g and r must have the same length");
    const PrimeModulus p(g.size());
    const auto gh = spectrum(g, p);
    const auto rh = spectrum(r, p);
    cplx c{};
    for (std::size_t v = 0; v < gh.size(); ++v) c += gh[v] * std::conj(rh[v]);
    if (std::abs(c) <= kAdmissibilityFloor) throw NotAdmissible("|C_{g,r}| is below 1e-8");
    return c;
}

ActivationPair::ActivationPair(PrimeModulus p, std::span<const double> raw_g, std::span<const double> raw_r)
    : p_(p) {
    if (raw_g.size() != p.value() || raw_r.size() != p.value())
        throw DimensionError("activation and ridgelet function need p samples");
    g_ = normalize_activation(raw_g);
    r_ = normalize_activation(raw_r);
    g_hat_ = spectrum(g_, p_);
    r_hat_ = spectrum(r_, p_);
    c_gr_ = admissibility_constant(g_, r_);
    self_dual_ = g_ == r_;
}

ActivationPair::ActivationPair(PrimeModulus p, std::span<const double> raw_g)
    : ActivationPair(p, raw_g, raw_g) {}

RidgeletCoeffs analyze_with_kernel(const GridFunction& f, std::span<const double> kernel, AnalysisPath path) {
    require_same_modulus(f.p(), kernel.size());
    if (path == AnalysisPath::Direct) return analyze_direct(f, kernel);
    return analyze_fourier(f, spectrum(kernel, f.modulus()));
}

RidgeletCoeffs ridgelet_analyze(const GridFunction& f, const ActivationPair& pair, AnalysisPath path) {
    require_same_modulus(f.p(), pair.p());
    if (path == AnalysisPath::Direct) return analyze_direct(f, pair.r());
    return analyze_fourier(f, pair.r_hat());
}

GridFunction synthesize_with_kernel(const RidgeletCoeffs& w, std::span<const double> kernel) {
    require_same_modulus(w.p(), kernel.size());
    const auto& pm = w.modulus();
    const std::uint64_t p = pm.value();
    const std::size_t d = w.dim();
    const double norm = std::pow(static_cast<double>(p), -0.5 * static_cast<double>(d));
    GridFunction out(pm, d);
    std::vector<cplx> conv(p);
    for_each_point(pm, d, [&](std::size_t a_lin, std::span<const std::uint64_t> a) {
        // conv(y) = sum_b w(a, b) g(y - b); node (a, b) contributes at y = a.x.
        for (std::uint64_t y = 0; y < p; ++y) {
            cplx acc{};
            for (std::uint64_t b = 0; b < p; ++b) acc += w.at(a_lin, b) * kernel[(y + p - b) % p];
            conv[y] = acc;
        }
        for_each_point(pm, d, [&](std::size_t x_lin, std::span<const std::uint64_t> x) {
            out[x_lin] += conv[dot_mod(a, x, pm)];
        });
    });
    for (auto& z : out.values()) z *= norm;
    return out;
}

GridFunction ridgelet_synthesize(const RidgeletCoeffs& w, const ActivationPair& pair) {
    require_same_modulus(w.p(), pair.p());
    return synthesize_with_kernel(w, pair.g());
}

double fourier_slice_check(const GridFunction& f, const ActivationPair& pair) {
    require_same_modulus(f.p(), pair.p());
    const auto& pm = f.modulus();
    const std::uint64_t p = pm.value();
    const RidgeletCoeffs coeffs = ridgelet_analyze(f, pair, AnalysisPath::Direct);
    const GridFunction fhat = dftD(f, Direction::Forward);
    DftPlan plan(p);
    std::vector<cplx> slice(p);
    double worst = 0.0;
    for_each_point(pm, f.dim(), [&](std::size_t a_lin, std::span<const std::uint64_t> a) {
        for (std::uint64_t b = 0; b < p; ++b) slice[b] = coeffs.at(a_lin, b);
        plan.apply(slice, Direction::Forward);
        for (std::uint64_t v = 0; v < p; ++v) {
            const cplx expected = fhat[scaled_linear(a, v, p)] * std::conj(pair.r_hat()[v]);
            worst = std::max(worst, std::abs(slice[v] - expected));
        }
    });
    return worst;
}

std::vector<double> ramp_activation(std::uint64_t p) {
    std::vector<double> g(p, 0.0);
    for (std::uint64_t x = 0; x <= (p - 1) / 2; ++x) g[x] = static_cast<double>(x);
    return g;
}

std::vector<double> tanh_activation(std::uint64_t p, double steepness) {
    std::vector<double> g(p);
    for (std::uint64_t x = 0; x < p; ++x) g[x] = std::tanh(steepness * static_cast<double>(x) / static_cast<double>(p));
    return g;
}

} // namespace ridgelab
