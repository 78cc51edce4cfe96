#pragma once

// Arithmetic over the prime field Z_p and index bookkeeping for Z_p^d.
//
// Grid points are addressed little-endian: coords[0] is the fastest-varying
// coordinate, so linear = sum_k coords[k] * p^k. Ridgelet coefficients over
// Z_p^d x Z_p reuse the same rule with b appended as coordinate d.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ridgelab {

/// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime(std::uint64_t n) noexcept;

/// A modulus certified prime at construction.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint64_t p);

    std::uint64_t value() const noexcept { return p_; }
    operator std::uint64_t() const noexcept { return p_; }

    friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

private:
    std::uint64_t p_;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// Multiplicative inverse in Z_p. Throws InvalidInverse for v = 0 (mod p).
std::uint64_t mod_inverse(std::uint64_t v, const PrimeModulus& p);

/// p^d as a size, throwing DimensionError on overflow.
std::size_t grid_size(const PrimeModulus& p, std::size_t d);

struct GridIndex {
    std::vector<std::uint64_t> coords;

    std::size_t dim() const noexcept { return coords.size(); }
    friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

std::size_t linear_index(const GridIndex& idx, const PrimeModulus& p);
GridIndex grid_index(std::size_t linear, const PrimeModulus& p, std::size_t d);

/// (v * a) mod p, componentwise.
GridIndex scale_vector_mod(const GridIndex& a, std::uint64_t v, const PrimeModulus& p);

/// a^T x mod p.
std::uint64_t dot_mod(std::span<const std::uint64_t> a, std::span<const std::uint64_t> x,
                      const PrimeModulus& p) noexcept;

/// Visits every point of Z_p^d in linear order, reusing one coordinate buffer.
template <class Fn>
void for_each_point(const PrimeModulus& p, std::size_t d, Fn&& fn) {
    const std::size_t n = grid_size(p, d);
    std::vector<std::uint64_t> c(d, 0);
    for (std::size_t lin = 0; lin < n; ++lin) {
        fn(lin, std::span<const std::uint64_t>(c));
        for (std::size_t k = 0; k < d; ++k) {
            if (++c[k] < p.value()) break;
            c[k] = 0;
        }
    }
}

} // namespace ridgelab
