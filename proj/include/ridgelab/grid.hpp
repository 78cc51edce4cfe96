#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ridgelab/zp.hpp"

namespace ridgelab {

using cplx = std::complex<double>;

/// Dense function on Z_p^d, little-endian linear order.
class GridFunction {
public:
    GridFunction(PrimeModulus p, std::size_t d);
    GridFunction(PrimeModulus p, std::size_t d, std::vector<cplx> values);
    static GridFunction from_real(PrimeModulus p, std::size_t d, const std::vector<double>& values);

    const PrimeModulus& modulus() const noexcept { return p_; }
    std::uint64_t p() const noexcept { return p_.value(); }
    std::size_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return values_.size(); }

    cplx& operator[](std::size_t i) { return values_[i]; }
    const cplx& operator[](std::size_t i) const { return values_[i]; }
    std::vector<cplx>& values() noexcept { return values_; }
    const std::vector<cplx>& values() const noexcept { return values_; }

    double norm2() const noexcept;
    double max_abs() const noexcept;
    double max_imag() const noexcept;
    std::vector<double> real_part() const;

private:
    PrimeModulus p_;
    std::size_t d_;
    std::vector<cplx> values_;
};

/// Function on Z_p^d x Z_p. Entry (a, b) sits at linear(a) + p^d * b.
class RidgeletCoeffs {
public:
    RidgeletCoeffs(PrimeModulus p, std::size_t d);
    RidgeletCoeffs(PrimeModulus p, std::size_t d, std::vector<cplx> values);

    const PrimeModulus& modulus() const noexcept { return p_; }
    std::uint64_t p() const noexcept { return p_.value(); }
    std::size_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t slice_size() const noexcept { return slice_; }

    std::size_t index(std::size_t a_linear, std::uint64_t b) const noexcept { return a_linear + slice_ * b; }
    cplx& at(std::size_t a_linear, std::uint64_t b) { return values_[index(a_linear, b)]; }
    const cplx& at(std::size_t a_linear, std::uint64_t b) const { return values_[index(a_linear, b)]; }

    cplx& operator[](std::size_t i) { return values_[i]; }
    const cplx& operator[](std::size_t i) const { return values_[i]; }
    std::vector<cplx>& values() noexcept { return values_; }
    const std::vector<cplx>& values() const noexcept { return values_; }

    double norm2() const noexcept;
    double max_abs() const noexcept;
    double max_imag() const noexcept;

private:
    PrimeModulus p_;
    std::size_t d_;
    std::size_t slice_;
    std::vector<cplx> values_;
};

double l2_norm(const std::vector<cplx>& v) noexcept;
double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b);

} // namespace ridgelab
