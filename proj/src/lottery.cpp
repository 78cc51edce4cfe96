#include "ridgelab/lottery.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <Eigen/Dense>

#include "ridgelab/errors.hpp"
#include "ridgelab/qsim.hpp"

namespace ridgelab {

namespace {

constexpr double kLabelTolerance = 1e-9;

void require_compatible(const EmpiricalData& data, const ActivationPair& pair) {
    if (data.p() != pair.p()) throw DimensionError("dataset and activation use different moduli");
}

void require_compatible(const EmpiricalData& data, const RidgeletCoeffs& u) {
    if (data.p() != u.p() || data.dim() != u.dim()) throw DimensionError("dataset and weights disagree on p or d");
}

// Values of g((a.x - b) mod p) over the grid for one node.
std::vector<double> node_feature(std::size_t node, const PrimeModulus& p, std::size_t d, std::span<const double> g) {
    const std::size_t slice = grid_size(p, d);
    const std::uint64_t pv = p.value();
    const GridIndex a = grid_index(node % slice, p, d);
    const std::uint64_t b = node / slice;
    std::vector<double> phi(slice);
    for_each_point(p, d, [&](std::size_t x_lin, std::span<const std::uint64_t> x) {
        phi[x_lin] = g[(dot_mod(a.coords, x, p) + pv - b) % pv];
    });
    return phi;
}

} // namespace

EmpiricalData::EmpiricalData(GridFunction p_hat, GridFunction y_bar, std::size_t examples)
    : p_hat_(std::move(p_hat)), y_bar_(std::move(y_bar)), m_(examples) {
    if (p_hat_.modulus() != y_bar_.modulus() || p_hat_.dim() != y_bar_.dim())
        throw DimensionError("p_hat and y_bar must share p and d");
    double total = 0.0;
    for (std::size_t x = 0; x < p_hat_.size(); ++x) {
        const double w = p_hat_[x].real();
        if (w < 0.0) throw NoData("empirical distribution has negative mass");
        if (w == 0.0 && y_bar_[x] != cplx{}) throw InconsistentLabels("label mass outside the data support");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw NoData("empirical distribution does not sum to one");
}

double EmpiricalData::target(std::size_t x) const {
    const double w = p_hat_[x].real();
    return w > 0.0 ? y_bar_[x].real() / w : 0.0;
}

std::vector<double> EmpiricalData::targets() const {
    std::vector<double> f(p_hat_.size());
    for (std::size_t x = 0; x < f.size(); ++x) f[x] = target(x);
    return f;
}

EmpiricalData ingest_dataset(std::span<const DataRow> rows, PrimeModulus p) {
    if (rows.empty()) throw NoData("dataset has no examples");
    const std::size_t d = rows.front().x.dim();
    const std::size_t n = grid_size(p, d);
    std::vector<std::size_t> count(n, 0);
    std::vector<double> first(n, 0.0);
    std::vector<double> sum(n, 0.0);
    for (const auto& row : rows) {
        if (row.x.dim() != d) throw DimensionError("examples have inconsistent dimension");
        if (!std::isfinite(row.y)) throw InconsistentLabels("non-finite label");
        const std::size_t x = linear_index(row.x, p);
        if (count[x] == 0) {
            first[x] = row.y;
        } else if (std::abs(row.y - first[x]) > kLabelTolerance) {
            throw InconsistentLabels("input " + std::to_string(x) + " carries different labels");
        }
        ++count[x];
        sum[x] += row.y;
    }
    const double m = static_cast<double>(rows.size());
    std::vector<cplx> p_hat(n);
    std::vector<cplx> y_bar(n);
    for (std::size_t x = 0; x < n; ++x) {
        p_hat[x] = static_cast<double>(count[x]) / m;
        y_bar[x] = sum[x] / m;
    }
    return EmpiricalData(GridFunction(p, d, std::move(p_hat)), GridFunction(p, d, std::move(y_bar)), rows.size());
}

EmpiricalData uniform_dataset(const GridFunction& f) {
    std::vector<DataRow> rows;
    rows.reserve(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) rows.push_back({grid_index(x, f.modulus(), f.dim()), f[x].real()});
    return ingest_dataset(rows, f.modulus());
}

double ridge_objective(const EmpiricalData& data, const ActivationPair& pair, const RidgeletCoeffs& u,
                       double lambda) {
    const double u2 = u.norm2();
    return empirical_risk(data, synthesize_with_kernel(u, pair.g())) + lambda * u2 * u2;
}

RidgeletCoeffs ridge_gradient(const EmpiricalData& data, const ActivationPair& pair, const RidgeletCoeffs& u,
                              double lambda) {
    require_compatible(data, u);
    // grad = 2 (G (p_hat * S[u] - y_bar) + lambda u); G^T is synthesis, G is analysis with g.
    GridFunction residual = synthesize_with_kernel(u, pair.g());
    for (std::size_t x = 0; x < residual.size(); ++x)
        residual[x] = data.weight(x) * residual[x] - data.y_bar()[x];
    RidgeletCoeffs grad = analyze_with_kernel(residual, pair.g(), AnalysisPath::Fourier);
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] = 2.0 * (grad[i] + lambda * u[i]);
    return grad;
}

RidgeSolution solve_ridge(const EmpiricalData& data, const ActivationPair& pair, double lambda, RidgePath path) {
    require_compatible(data, pair);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidHyperparameter("lambda must be positive");
    const auto& pm = data.modulus();
    const std::size_t d = data.dim();

    RidgeSolution sol{RidgeletCoeffs(pm, d), lambda, 0.0, 0.0};
    if (path == RidgePath::Fast) {
        if (!pair.self_dual()) throw UnsupportedPath("the isometry shortcut needs r = g");
        GridFunction h(pm, d);
        for (std::size_t x = 0; x < h.size(); ++x) h[x] = data.y_bar()[x] / (data.weight(x) + lambda);
        sol.u = ridgelet_analyze(h, pair, AnalysisPath::Fourier);
    } else {
        const std::size_t n = grid_size(pm, d + 1);
        const std::size_t limit = dense_limit();
        if (n > limit || n * n > 16 * limit)
            throw TooLargeForDense("generic ridge system of size " + std::to_string(n) + " exceeds the dense limit");
        const Eigen::MatrixXd G = ridgelet_matrix(pm, pair.g(), d);
        Eigen::VectorXd w(G.cols());
        Eigen::VectorXd yb(G.cols());
        for (Eigen::Index x = 0; x < G.cols(); ++x) {
            w[x] = data.weight(static_cast<std::size_t>(x));
            yb[x] = data.y_bar()[static_cast<std::size_t>(x)].real();
        }
        Eigen::MatrixXd system = G * w.asDiagonal() * G.transpose();
        system.diagonal().array() += lambda;
        const Eigen::VectorXd rhs = G * yb;
        const Eigen::VectorXd u = system.llt().solve(rhs);
        for (std::size_t i = 0; i < n; ++i) sol.u[i] = u[static_cast<Eigen::Index>(i)];
    }
    const double norm = sol.u.norm2();
    sol.gamma = norm * norm;
    sol.objective = ridge_objective(data, pair, sol.u, lambda);
    return sol;
}

OptimizedDistribution optimized_distribution(const RidgeletCoeffs& u, double big_delta) {
    if (!(big_delta > 0.0)) throw InvalidHyperparameter("Delta must be positive");
    OptimizedDistribution dist;
    dist.delta = big_delta;
    dist.probs.resize(u.size());
    double z = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double m = std::norm(u[i]);
        dist.probs[i] = m / (m + big_delta);
        z += dist.probs[i];
    }
    if (!(z > 0.0)) throw DegenerateDistribution("all weights are zero");
    for (double& q : dist.probs) q /= z;
    dist.z = z;
    return dist;
}

OptimizedDistribution optimized_distribution(const RidgeSolution& sol, double big_delta) {
    return optimized_distribution(sol.u, big_delta);
}

OptimizedDistribution optimized_distribution_via_state(const RidgeletCoeffs& u, double big_delta, double gamma) {
    if (!(big_delta > 0.0)) throw InvalidHyperparameter("Delta must be positive");
    if (!(gamma > 0.0)) throw DegenerateDistribution("gamma must be positive");
    const double shift = big_delta / gamma;
    const double inv_sqrt_gamma = 1.0 / std::sqrt(gamma);
    OptimizedDistribution dist;
    dist.delta = big_delta;
    dist.probs.resize(u.size());
    double total = 0.0;
    double z = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const cplx amp_in = u[i] * inv_sqrt_gamma;
        const double w_diag = std::norm(u[i]) / gamma;
        const cplx amp_out = amp_in / std::sqrt(w_diag + shift);
        dist.probs[i] = std::norm(amp_out);
        total += dist.probs[i];
        z += std::norm(u[i]) / (std::norm(u[i]) + big_delta);
    }
    if (!(total > 0.0)) throw DegenerateDistribution("all weights are zero");
    for (double& q : dist.probs) q /= total;
    dist.z = z;
    return dist;
}

OptimizedDistribution optimized_distribution_via_state(const RidgeSolution& sol, double big_delta) {
    return optimized_distribution_via_state(sol.u, big_delta, sol.gamma);
}

DecayClassParams decay_class_params(double epsilon, double delta_fail, double alpha, double beta) {
    if (!(epsilon > 0.0) || !(alpha > 0.0) || !(beta > 0.0))
        throw InvalidHyperparameter("epsilon, alpha and beta must be positive");
    if (!(delta_fail > 0.0 && delta_fail < 1.0)) throw InvalidHyperparameter("delta must lie in (0, 1)");
    DecayClassParams out;
    out.alpha = alpha;
    out.beta = beta;
    out.epsilon = epsilon;
    out.delta_fail = delta_fail;
    out.n_eps = std::pow(alpha / (beta * std::sqrt(epsilon)), 1.0 / beta);
    out.big_delta_unsquared = alpha * std::pow(out.n_eps + 1.0, -(1.0 + beta));
    out.big_delta = out.big_delta_unsquared * out.big_delta_unsquared;

    // (n_eps + 1)^{2+2beta} / n_eps^{1+2beta}, in logs to stay finite for large alpha.
    const double tail_ratio =
        std::exp((2.0 + 2.0 * beta) * std::log(out.n_eps + 1.0) - (1.0 + 2.0 * beta) * std::log(out.n_eps));
    const double ceil_n = std::ceil(out.n_eps);
    const double n = 2.0 * (ceil_n + tail_ratio / (1.0 + 2.0 * beta)) * std::log(ceil_n / delta_fail);
    out.n_samples = static_cast<std::uint64_t>(std::ceil(n));
    return out;
}

std::vector<std::size_t> high_weight_set(const RidgeletCoeffs& u, double big_delta) {
    if (!(big_delta > 0.0)) throw InvalidHyperparameter("Delta must be positive");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (std::norm(u[i]) >= big_delta) out.push_back(i);
    return out;
}

std::vector<std::size_t> high_weight_set(const RidgeSolution& sol, double big_delta) {
    return high_weight_set(sol.u, big_delta);
}

std::vector<std::size_t> sample_nodes(std::span<const double> probs, std::size_t n, std::uint64_t seed,
                                      SamplerBackend backend) {
    auto draws = draw_nodes(probs, n, seed, backend);
    std::sort(draws.begin(), draws.end());
    draws.erase(std::unique(draws.begin(), draws.end()), draws.end());
    return draws;
}

std::vector<std::size_t> sample_nodes(const OptimizedDistribution& dist, std::size_t n, std::uint64_t seed,
                                      SamplerBackend backend) {
    return sample_nodes(dist.probs, n, seed, backend);
}

Subnetwork train_subnetwork(const EmpiricalData& data, const ActivationPair& pair,
                            std::span<const std::size_t> nodes) {
    require_compatible(data, pair);
    if (nodes.empty()) throw NoNodes("subnetwork has no nodes");
    const auto& pm = data.modulus();
    const std::size_t d = data.dim();
    const std::size_t total_nodes = grid_size(pm, d + 1);

    std::vector<std::size_t> support;
    for (std::size_t x = 0; x < data.p_hat().size(); ++x)
        if (data.weight(x) > 0.0) support.push_back(x);

    const auto k = static_cast<Eigen::Index>(nodes.size());
    const auto rows = static_cast<Eigen::Index>(support.size());
    // [sqrt(P) Phi; sqrt(jitter) I] w ~ [sqrt(P) f; 0] is the jittered normal
    // system solved by orthogonal factorization.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows + k, k);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows + k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const std::size_t node = nodes[static_cast<std::size_t>(j)];
        if (node >= total_nodes) throw DimensionError("node index out of range");
        const auto phi = node_feature(node, pm, d, pair.g());
        for (Eigen::Index i = 0; i < rows; ++i) {
            const std::size_t x = support[static_cast<std::size_t>(i)];
            A(i, j) = std::sqrt(data.weight(x)) * phi[x];
        }
        A(rows + j, j) = std::sqrt(kGramJitter);
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
        const std::size_t x = support[static_cast<std::size_t>(i)];
        rhs[i] = std::sqrt(data.weight(x)) * data.target(x);
    }
    const Eigen::VectorXd w = A.colPivHouseholderQr().solve(rhs);

    Subnetwork net;
    net.nodes.assign(nodes.begin(), nodes.end());
    net.weights.assign(w.data(), w.data() + w.size());
    net.risk = empirical_risk(data, subnetwork_predict(net, pair, d));
    return net;
}

GridFunction subnetwork_predict(const Subnetwork& net, const ActivationPair& pair, std::size_t d) {
    const auto& pm = pair.modulus();
    GridFunction out(pm, d);
    for (std::size_t j = 0; j < net.nodes.size(); ++j) {
        const auto phi = node_feature(net.nodes[j], pm, d, pair.g());
        for (std::size_t x = 0; x < out.size(); ++x) out[x] += net.weights[j] * phi[x];
    }
    return out;
}

double empirical_risk(const EmpiricalData& data, const GridFunction& prediction) {
    if (prediction.modulus() != data.modulus() || prediction.dim() != data.dim())
        throw DimensionError("prediction and dataset disagree on p or d");
    double risk = 0.0;
    for (std::size_t x = 0; x < prediction.size(); ++x) {
        const double w = data.weight(x);
        if (w > 0.0) risk += w * std::norm(data.target(x) - prediction[x]);
    }
    return risk;
}

double empirical_risk(const EmpiricalData& data, const ActivationPair& pair, const Subnetwork& net) {
    return empirical_risk(data, subnetwork_predict(net, pair, data.dim()));
}

double empirical_risk(const EmpiricalData& data, const ActivationPair& pair, const RidgeSolution& sol) {
    require_compatible(data, sol.u);
    return empirical_risk(data, synthesize_with_kernel(sol.u, pair.g()));
}

} // namespace ridgelab
