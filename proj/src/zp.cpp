#include "ridgelab/zp.hpp"

#include <array>
#include <limits>
#include <string>

#include "ridgelab/errors.hpp"

namespace ridgelab {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto q : witnesses) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (auto a : witnesses) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw InvalidModulus("modulus " + std::to_string(p) + " is not prime");
}

std::uint64_t mod_inverse(std::uint64_t v, const PrimeModulus& p) {
    const std::uint64_t m = p.value();
    v %= m;
    if (v == 0) throw InvalidInverse("0 has no inverse in Z_" + std::to_string(m));
    // Fermat: v^(p-2) = v^-1 in a prime field.
    return pow_mod(v, m - 2, m);
}

std::size_t grid_size(const PrimeModulus& p, std::size_t d) {
    std::size_t n = 1;
    for (std::size_t k = 0; k < d; ++k) {
        if (n > std::numeric_limits<std::size_t>::max() / p.value())
            throw DimensionError("p^d overflows size_t");
        n *= p.value();
    }
    return n;
}

std::size_t linear_index(const GridIndex& idx, const PrimeModulus& p) {
    std::size_t lin = 0;
    std::size_t stride = 1;
    for (auto c : idx.coords) {
        if (c >= p.value()) throw DimensionError("coordinate out of range");
        lin += c * stride;
        stride *= p.value();
    }
    return lin;
}

GridIndex grid_index(std::size_t linear, const PrimeModulus& p, std::size_t d) {
    if (linear >= grid_size(p, d)) throw DimensionError("linear index out of range");
    GridIndex idx{std::vector<std::uint64_t>(d)};
    for (std::size_t k = 0; k < d; ++k) {
        idx.coords[k] = linear % p.value();
        linear /= p.value();
    }
    return idx;
}

GridIndex scale_vector_mod(const GridIndex& a, std::uint64_t v, const PrimeModulus& p) {
    GridIndex out{a.coords};
    for (auto& c : out.coords) c = mul_mod(c % p.value(), v % p.value(), p.value());
    return out;
}

std::uint64_t dot_mod(std::span<const std::uint64_t> a, std::span<const std::uint64_t> x,
                      const PrimeModulus& p) noexcept {
    const std::uint64_t m = p.value();
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < a.size(); ++k) acc = (acc + mul_mod(a[k], x[k], m)) % m;
    return acc;
}

} // namespace ridgelab
