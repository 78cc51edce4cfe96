#pragma once

// Discrete ridgelet analysis and synthesis on Z_p^d.
//
//   analysis   R[f](a, b) = p^{-d/2} sum_x f(x) r((a.x - b) mod p)
//   synthesis  S[w](x)    = p^{-d/2} sum_{a,b} w(a, b) g((a.x - b) mod p)
//
// With sum(g) = 0, |g| = 1, |r| = 1 and C = <F g, F r> != 0, every f satisfies
// f = S[R[f]] / C.

#include <cstddef>
#include <span>
#include <vector>

#include "ridgelab/dft.hpp"
#include "ridgelab/grid.hpp"

namespace ridgelab {

/// (raw - mean) / |raw - mean|. Throws DegenerateActivation for constant input.
std::vector<double> normalize_activation(std::span<const double> raw);

/// C_{g,r} = sum_v F[g](v) conj(F[r](v)). Throws NotAdmissible when |C| <= 1e-8.
cplx admissibility_constant(std::span<const double> g, std::span<const double> r);

inline constexpr double kAdmissibilityFloor = 1e-8;

/// Activation g and ridgelet function r on Z_p, normalized on construction,
/// with their spectra and C_{g,r} cached.
class ActivationPair {
public:
    /// Both inputs are normalized here; callers pass raw samples on Z_p.
    ActivationPair(PrimeModulus p, std::span<const double> raw_g, std::span<const double> raw_r);

    /// r = g.
    ActivationPair(PrimeModulus p, std::span<const double> raw_g);

    const PrimeModulus& modulus() const noexcept { return p_; }
    std::uint64_t p() const noexcept { return p_.value(); }
    const std::vector<double>& g() const noexcept { return g_; }
    const std::vector<double>& r() const noexcept { return r_; }
    const std::vector<cplx>& g_hat() const noexcept { return g_hat_; }
    const std::vector<cplx>& r_hat() const noexcept { return r_hat_; }
    cplx c_gr() const noexcept { return c_gr_; }

    /// True when r and g are the same function (the self-dual choice).
    bool self_dual() const noexcept { return self_dual_; }

private:
    PrimeModulus p_;
    std::vector<double> g_;
    std::vector<double> r_;
    std::vector<cplx> g_hat_;
    std::vector<cplx> r_hat_;
    cplx c_gr_;
    bool self_dual_;
};

enum class AnalysisPath { Direct, Fourier };

RidgeletCoeffs ridgelet_analyze(const GridFunction& f, const ActivationPair& pair,
                                AnalysisPath path = AnalysisPath::Fourier);

GridFunction ridgelet_synthesize(const RidgeletCoeffs& w, const ActivationPair& pair);

/// Analysis/synthesis against an arbitrary kernel on Z_p (used where the
/// ridge model needs the adjoint of synthesis, i.e. analysis with g).
RidgeletCoeffs analyze_with_kernel(const GridFunction& f, std::span<const double> kernel,
                                   AnalysisPath path);
GridFunction synthesize_with_kernel(const RidgeletCoeffs& w, std::span<const double> kernel);

/// max_{a,v} |F1[R[f](a,.)](v) - F_D[f](v a mod p) conj(F1[r](v))|, with
/// R[f] evaluated on the direct path.
double fourier_slice_check(const GridFunction& f, const ActivationPair& pair);

/// Built-in raw activations on Z_p (before normalization).
std::vector<double> ramp_activation(std::uint64_t p);
std::vector<double> tanh_activation(std::uint64_t p, double steepness = 10.0);

} // namespace ridgelab
