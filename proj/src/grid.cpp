#include "ridgelab/grid.hpp"

#include <algorithm>
#include <cmath>

#include "ridgelab/errors.hpp"

namespace ridgelab {

namespace {

void check_finite(const std::vector<cplx>& v) {
    for (const auto& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw DimensionError("grid values must be finite");
    }
}

double max_abs_of(const std::vector<cplx>& v) noexcept {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

double max_imag_of(const std::vector<cplx>& v) noexcept {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z.imag()));
    return m;
}

} // namespace

double l2_norm(const std::vector<cplx>& v) noexcept {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw DimensionError("length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

GridFunction::GridFunction(PrimeModulus p, std::size_t d)
    : p_(p), d_(d), values_(grid_size(p, d), cplx{}) {}

GridFunction::GridFunction(PrimeModulus p, std::size_t d, std::vector<cplx> values)
    : p_(p), d_(d), values_(std::move(values)) {
    if (values_.size() != grid_size(p_, d_))
        throw DimensionError("grid function needs p^d values, got " + std::to_string(values_.size()));
    check_finite(values_);
}

GridFunction GridFunction::from_real(PrimeModulus p, std::size_t d, const std::vector<double>& values) {
    return GridFunction(p, d, std::vector<cplx>(values.begin(), values.end()));
}

double GridFunction::norm2() const noexcept { return l2_norm(values_); }
double GridFunction::max_abs() const noexcept { return max_abs_of(values_); }
double GridFunction::max_imag() const noexcept { return max_imag_of(values_); }

std::vector<double> GridFunction::real_part() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](const cplx& z) { return z.real(); });
    return out;
}

RidgeletCoeffs::RidgeletCoeffs(PrimeModulus p, std::size_t d)
    : p_(p), d_(d), slice_(grid_size(p, d)), values_(grid_size(p, d + 1), cplx{}) {}

RidgeletCoeffs::RidgeletCoeffs(PrimeModulus p, std::size_t d, std::vector<cplx> values)
    : p_(p), d_(d), slice_(grid_size(p, d)), values_(std::move(values)) {
    if (values_.size() != grid_size(p_, d_ + 1))
        throw DimensionError("ridgelet coefficients need p^(d+1) values, got " +
                             std::to_string(values_.size()));
    check_finite(values_);
}

double RidgeletCoeffs::norm2() const noexcept { return l2_norm(values_); }
double RidgeletCoeffs::max_abs() const noexcept { return max_abs_of(values_); }
double RidgeletCoeffs::max_imag() const noexcept { return max_imag_of(values_); }

} // namespace ridgelab
