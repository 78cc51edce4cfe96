#pragma once

// Winning-ticket pipeline: ridge-regression weights over the full ridgelet
// network, the optimized node distribution, node sampling and subnetwork
// training.
//
// Model convention: node weights u live on Z_p^d x Z_p and the network is the
// synthesis S[u](x) = p^{-d/2} sum_{a,b} u(a,b) g((a.x - b) mod p). The ridge
// objective is
//   J~(u) = sum_x p_hat(x) |f(x) - S[u](x)|^2 + lambda |u|^2,
// whose minimizer is u = (G P G^T + lambda I)^{-1} G (p_hat f), G the dense
// ridgelet matrix built with g. When r = g the columns of G are orthonormal
// and u = R[h], h = p_hat f / (p_hat + lambda).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ridgelab/grid.hpp"
#include "ridgelab/grid_io.hpp"
#include "ridgelab/sampling.hpp"
#include "ridgelab/transforms.hpp"

namespace ridgelab {

/// Empirical distribution of the inputs and the label-weighted vector p_hat * f.
class EmpiricalData {
public:
    EmpiricalData(GridFunction p_hat, GridFunction y_bar, std::size_t examples);

    const PrimeModulus& modulus() const noexcept { return p_hat_.modulus(); }
    std::uint64_t p() const noexcept { return p_hat_.p(); }
    std::size_t dim() const noexcept { return p_hat_.dim(); }
    std::size_t examples() const noexcept { return m_; }

    const GridFunction& p_hat() const noexcept { return p_hat_; }
    const GridFunction& y_bar() const noexcept { return y_bar_; }

    double weight(std::size_t x) const { return p_hat_[x].real(); }
    /// f(x) on the support of p_hat, 0 elsewhere.
    double target(std::size_t x) const;
    std::vector<double> targets() const;

private:
    GridFunction p_hat_;
    GridFunction y_bar_;
    std::size_t m_;
};

/// Throws NoData on empty input and InconsistentLabels when repeated inputs
/// disagree by more than 1e-9.
EmpiricalData ingest_dataset(std::span<const DataRow> rows, PrimeModulus p);

/// One example (x, f(x)) for every grid point: p_hat is uniform.
EmpiricalData uniform_dataset(const GridFunction& f);

enum class RidgePath { Fast, Generic };

struct RidgeSolution {
    RidgeletCoeffs u;
    double lambda = 0.0;
    double gamma = 0.0;      // |u|^2
    double objective = 0.0;  // J~(u)
};

RidgeSolution solve_ridge(const EmpiricalData& data, const ActivationPair& pair, double lambda,
                          RidgePath path = RidgePath::Fast);

double ridge_objective(const EmpiricalData& data, const ActivationPair& pair, const RidgeletCoeffs& u,
                       double lambda);
RidgeletCoeffs ridge_gradient(const EmpiricalData& data, const ActivationPair& pair, const RidgeletCoeffs& u,
                              double lambda);

struct OptimizedDistribution {
    std::vector<double> probs;
    double delta = 0.0;
    double z = 0.0;
};

/// probs = |u|^2 / (|u|^2 + delta) / z. Throws DegenerateDistribution for u = 0.
OptimizedDistribution optimized_distribution(const RidgeletCoeffs& u, double big_delta);
OptimizedDistribution optimized_distribution(const RidgeSolution& sol, double big_delta);

/// Same distribution reached through the prepared-state route: the normalized
/// weight state u / sqrt(gamma) is acted on by (W + delta/gamma I)^{-1/2},
/// W = diag(|u|^2 / gamma), and measured.
OptimizedDistribution optimized_distribution_via_state(const RidgeletCoeffs& u, double big_delta, double gamma);
OptimizedDistribution optimized_distribution_via_state(const RidgeSolution& sol, double big_delta);

struct DecayClassParams {
    double alpha = 0.0;
    double beta = 0.0;
    double epsilon = 0.0;
    double delta_fail = 0.0;
    double n_eps = 0.0;
    double big_delta = 0.0;             // (alpha (n_eps + 1)^{-(1+beta)})^2
    double big_delta_unsquared = 0.0;   // alpha (n_eps + 1)^{-(1+beta)}
    std::uint64_t n_samples = 0;
};

DecayClassParams decay_class_params(double epsilon, double delta_fail, double alpha, double beta);

/// {(a,b) : |u(a,b)|^2 >= delta}, as sorted linear indices.
std::vector<std::size_t> high_weight_set(const RidgeletCoeffs& u, double big_delta);
std::vector<std::size_t> high_weight_set(const RidgeSolution& sol, double big_delta);

/// Deduplicated, sorted set of nodes from n draws.
std::vector<std::size_t> sample_nodes(std::span<const double> probs, std::size_t n, std::uint64_t seed,
                                      SamplerBackend backend = SamplerBackend::Alias);
std::vector<std::size_t> sample_nodes(const OptimizedDistribution& dist, std::size_t n, std::uint64_t seed,
                                      SamplerBackend backend = SamplerBackend::Alias);

struct Subnetwork {
    std::vector<std::size_t> nodes;  // linear (a, b) indices
    std::vector<double> weights;
    double risk = 0.0;
};

inline constexpr double kGramJitter = 1e-10;

/// Least-squares fit of f by sum_{(a,b) in nodes} w(a,b) g((a.x - b) mod p)
/// under p_hat, with 1e-10 ridge jitter on the Gram matrix.
Subnetwork train_subnetwork(const EmpiricalData& data, const ActivationPair& pair,
                            std::span<const std::size_t> nodes);

GridFunction subnetwork_predict(const Subnetwork& net, const ActivationPair& pair, std::size_t d);

double empirical_risk(const EmpiricalData& data, const GridFunction& prediction);
double empirical_risk(const EmpiricalData& data, const ActivationPair& pair, const Subnetwork& net);
/// The data term J(u) of the ridge objective.
double empirical_risk(const EmpiricalData& data, const ActivationPair& pair, const RidgeSolution& sol);

} // namespace ridgelab
