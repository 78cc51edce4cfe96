#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ridgelab/random.hpp"

namespace ridgelab {

/// Walker/Vose alias table: O(n) build, O(1) exact draws.
class AliasTable {
public:
    explicit AliasTable(std::span<const double> weights);

    std::size_t size() const noexcept { return prob_.size(); }
    std::size_t sample(Rng& rng) const noexcept;

private:
    std::vector<double> prob_;
    std::vector<std::size_t> alias_;
};

/// Uniform proposal over the support, accepted with probability w_i / max(w).
class RejectionSampler {
public:
    explicit RejectionSampler(std::span<const double> weights);

    std::size_t sample(Rng& rng) const noexcept;
    /// Expected proposals per accepted draw (n * max(w) / sum(w)).
    double expected_trials() const noexcept;

private:
    std::vector<double> accept_;
    double total_ = 0.0;
};

enum class SamplerBackend { Alias, Rejection };

/// n independent draws (with repetition) from the distribution proportional to weights.
std::vector<std::size_t> draw_nodes(std::span<const double> weights, std::size_t n, std::uint64_t seed,
                                    SamplerBackend backend = SamplerBackend::Alias);

} // namespace ridgelab
