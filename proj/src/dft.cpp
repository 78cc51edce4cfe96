#include "ridgelab/dft.hpp"

#include <cmath>
#include <numbers>

#include "ridgelab/errors.hpp"

namespace ridgelab {

DftPlan::DftPlan(std::size_t n) : n_(n), m_(1) {
    if (n == 0) throw DimensionError("DFT length must be positive");
    while (m_ < 2 * n_ - 1) m_ <<= 1U;

    const double pi = std::numbers::pi;
    twiddle_.resize(m_ / 2);
    for (std::size_t k = 0; k < m_ / 2; ++k) {
        const double ang = -2.0 * pi * static_cast<double>(k) / static_cast<double>(m_);
        twiddle_[k] = {std::cos(ang), std::sin(ang)};
    }

    // k^2 is reduced mod 2n before scaling so the phase stays accurate for large n.
    chirp_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        const auto k2 = static_cast<unsigned __int128>(k) * k % (2 * n_);
        const double ang = -pi * static_cast<double>(k2) / static_cast<double>(n_);
        chirp_[k] = {std::cos(ang), std::sin(ang)};
    }

    kernel_hat_.assign(m_, cplx{});
    kernel_hat_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n_; ++k) {
        kernel_hat_[k] = std::conj(chirp_[k]);
        kernel_hat_[m_ - k] = std::conj(chirp_[k]);
    }
    fft_pow2(kernel_hat_, false);
}

void DftPlan::fft_pow2(std::vector<cplx>& a, bool inverse) const {
    const std::size_t m = a.size();
    for (std::size_t i = 1, j = 0; i < m; ++i) {
        std::size_t bit = m >> 1U;
        for (; j & bit; bit >>= 1U) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= m; len <<= 1U) {
        const std::size_t half = len / 2;
        const std::size_t step = m / len;
        for (std::size_t i = 0; i < m; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                cplx w = twiddle_[k * step];
                if (inverse) w = std::conj(w);
                const cplx t = w * a[i + k + half];
                a[i + k + half] = a[i + k] - t;
                a[i + k] += t;
            }
        }
    }
}

void DftPlan::apply(std::span<cplx> x, Direction dir) const {
    if (x.size() != n_) throw DimensionError("DFT input length mismatch");
    const bool inverse = dir == Direction::Inverse;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_));

    if (n_ == 1) return;

    // Inverse transform = conj(forward(conj(x))).
    std::vector<cplx> work(m_, cplx{});
    for (std::size_t k = 0; k < n_; ++k) {
        const cplx xk = inverse ? std::conj(x[k]) : x[k];
        work[k] = xk * chirp_[k];
    }
    fft_pow2(work, false);
    for (std::size_t k = 0; k < m_; ++k) work[k] *= kernel_hat_[k];
    fft_pow2(work, true);
    const double inv_m = 1.0 / static_cast<double>(m_);
    for (std::size_t k = 0; k < n_; ++k) {
        const cplx y = work[k] * chirp_[k] * (inv_m * scale);
        x[k] = inverse ? std::conj(y) : y;
    }
}

std::vector<cplx> dft1(std::span<const cplx> x, const PrimeModulus& p, Direction dir) {
    if (x.size() != p.value()) throw DimensionError("dft1 expects exactly p entries");
    std::vector<cplx> out(x.begin(), x.end());
    DftPlan(p.value()).apply(out, dir);
    return out;
}

GridFunction dftD(const GridFunction& f, Direction dir) {
    const std::size_t p = f.p();
    const std::size_t n = f.size();
    DftPlan plan(p);
    GridFunction out = f;
    std::vector<cplx> line(p);
    std::size_t stride = 1;
    for (std::size_t axis = 0; axis < f.dim(); ++axis) {
        // Lines along this axis start at every index whose axis-coordinate is zero.
        const std::size_t block = stride * p;
        for (std::size_t base = 0; base < n; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t start = base + off;
                for (std::size_t k = 0; k < p; ++k) line[k] = out[start + k * stride];
                plan.apply(line, dir);
                for (std::size_t k = 0; k < p; ++k) out[start + k * stride] = line[k];
            }
        }
        stride = block;
    }
    return out;
}

} // namespace ridgelab
