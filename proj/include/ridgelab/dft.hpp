#pragma once

// Unitary DFT over Z_p:
//   F[x](v) = p^{-1/2} sum_b x(b) exp(-2 pi i v b / p)
// The inverse is the conjugate transpose. Prime lengths go through
// Bluestein's chirp-z reformulation on a power-of-two FFT.

#include <cstddef>
#include <span>
#include <vector>

#include "ridgelab/grid.hpp"

namespace ridgelab {

enum class Direction { Forward, Inverse };

class DftPlan {
public:
    explicit DftPlan(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    /// In-place unitary transform of exactly size() entries.
    void apply(std::span<cplx> x, Direction dir) const;

private:
    void fft_pow2(std::vector<cplx>& a, bool inverse) const;

    std::size_t n_;
    std::size_t m_;                  // padded power-of-two length >= 2n-1
    std::vector<cplx> chirp_;        // exp(-i pi k^2 / n), k < n
    std::vector<cplx> kernel_hat_;   // FFT of the conjugate chirp, length m
    std::vector<cplx> twiddle_;      // exp(-2 pi i k / m), k < m/2
};

std::vector<cplx> dft1(std::span<const cplx> x, const PrimeModulus& p, Direction dir);

/// Separable d-dimensional transform, one dft1 pass per axis.
GridFunction dftD(const GridFunction& f, Direction dir);

} // namespace ridgelab
