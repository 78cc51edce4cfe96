#pragma once

// Property sweeps over (p, d) that compare fast paths against direct or
// dense references and report the largest residual of each check.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ridgelab/grid.hpp"
#include "ridgelab/random.hpp"

namespace ridgelab {

inline constexpr double kVerifyTolerance = 1e-9;

struct CheckResult {
    std::string name;
    std::uint64_t p = 0;
    std::size_t d = 0;
    double residual = 0.0;
    double tolerance = kVerifyTolerance;
    bool skipped = false;
    std::string note;

    bool passed() const noexcept { return skipped || residual < tolerance; }
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool ok() const noexcept;
    void print(std::ostream& os) const;
};

/// Reconstruction, Fourier slice, isometry, QRT versus dense R, fast versus
/// generic ridge, and the two optimized-distribution routes, for every (p, d).
/// Every p is checked for primality and p^(d+1) <= 10^5 before any work.
VerifyReport verify_all(std::span<const std::uint64_t> p_list, std::span<const std::size_t> d_list,
                        std::uint64_t seed, std::size_t trials = 5);

struct QrtVerifyResult {
    double max_deviation = 0.0;        // max_psi |QRT psi - R psi|_2
    double max_zero_slice_mass = 0.0;  // after the QFT stage
    std::size_t stages = 0;
    std::size_t expected_stages = 0;
};

/// Random normalized states through the statevector pipeline and the dense
/// operator, with the self-dual ramp activation.
QrtVerifyResult qrt_verify(std::uint64_t p, std::size_t d, std::size_t trials, std::uint64_t seed);

/// Standard complex Gaussian vector of length n scaled to unit norm.
std::vector<cplx> random_unit_vector(std::size_t n, Rng& rng);
/// Real standard normal samples on Z_p^d.
GridFunction random_real_function(PrimeModulus p, std::size_t d, Rng& rng);

} // namespace ridgelab
