#pragma once

// Statevector simulation of the quantum ridgelet transform on dimension-p
// qudit registers.
//
// Register k of a state with n registers is coordinate k of the little-endian
// linear index, so after the auxiliary register is appended an amplitude
// index reads (a_0, ..., a_{d-1}, b), the same layout as RidgeletCoeffs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ridgelab/grid.hpp"
#include "ridgelab/transforms.hpp"

namespace ridgelab {

/// Maximum column length for dense operators. RIDGELAB_DENSE_LIMIT overrides
/// the default of 10^6.
std::size_t dense_limit();

inline constexpr double kStateNormTolerance = 1e-10;

class QuditState {
public:
    /// Throws StateNotNormalized unless |amps| = 1 within 1e-10.
    QuditState(PrimeModulus p, std::size_t registers, std::vector<cplx> amps);

    static QuditState basis(PrimeModulus p, std::size_t registers, std::size_t index);
    /// f / |f| as a state on f.dim() registers.
    static QuditState normalized(const GridFunction& f);

    const PrimeModulus& modulus() const noexcept { return p_; }
    std::uint64_t p() const noexcept { return p_.value(); }
    std::size_t registers() const noexcept { return registers_; }
    const std::vector<cplx>& amplitudes() const noexcept { return amps_; }

private:
    PrimeModulus p_;
    std::size_t registers_;
    std::vector<cplx> amps_;
};

/// Dense isometry with entries p^{-d/2} r((a.x - b) mod p), rows (a, b), columns x.
class RidgeletOperator {
public:
    RidgeletOperator(PrimeModulus p, std::size_t d, Eigen::MatrixXd matrix);

    const PrimeModulus& modulus() const noexcept { return p_; }
    std::size_t dim() const noexcept { return d_; }
    const Eigen::MatrixXd& matrix() const noexcept { return m_; }

    std::vector<cplx> apply(std::span<const cplx> x) const;
    /// max |R^T R - I|.
    double gram_deviation() const;

private:
    PrimeModulus p_;
    std::size_t d_;
    Eigen::MatrixXd m_;
};

inline constexpr double kIsometryTolerance = 1e-10;

/// Unchecked dense matrix p^{-d/2} kernel((a.x - b) mod p); no size guard.
Eigen::MatrixXd ridgelet_matrix(PrimeModulus p, std::span<const double> kernel, std::size_t d);

RidgeletOperator build_r_dense(const ActivationPair& pair, std::size_t d);

/// Builds from an arbitrary (not re-normalized) ridgelet function; throws
/// NotIsometric when the columns are not orthonormal.
RidgeletOperator build_r_dense(PrimeModulus p, std::span<const double> r, std::size_t d);

struct QrtTrace {
    double zero_slice_mass = 0.0;  // amplitude mass on v = 0 after the QFT stage
    std::size_t stages = 0;        // register-level primitive stages executed
};

/// |psi> on d registers -> R|psi> on d + 1 registers, via
/// tensor |r>, QFT^{(x)d} (x) QFT^dag, controlled |a'>|v> -> |v^-1 a'>|v>, QFT^dag.
QuditState qrt_apply(const QuditState& state, const ActivationPair& pair, QrtTrace* trace = nullptr);

/// d forward QFTs + two inverse QFTs + one controlled-arithmetic stage.
std::size_t qrt_stage_count(std::size_t d) noexcept;

/// Applies the unitary DFT to one register of a p-ary statevector in place.
void apply_register_dft(std::vector<cplx>& amps, const PrimeModulus& p, std::size_t registers,
                        std::size_t reg, Direction dir);

/// n independent computational-basis measurements of the same prepared state.
std::vector<std::size_t> measure_samples(const QuditState& state, std::size_t n, std::uint64_t seed);

} // namespace ridgelab
