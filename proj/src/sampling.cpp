#include "ridgelab/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "ridgelab/errors.hpp"

namespace ridgelab {

namespace {

double checked_total(std::span<const double> w) {
    double total = 0.0;
    for (double x : w) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw DegenerateDistribution("weights must be finite and nonnegative");
        total += x;
    }
    if (!(total > 0.0)) throw DegenerateDistribution("weights sum to zero");
    return total;
}

} // namespace

AliasTable::AliasTable(std::span<const double> weights) {
    const double total = checked_total(weights);
    const std::size_t n = weights.size();
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);

    std::vector<double> scaled(n);
    std::vector<std::size_t> small;
    std::vector<std::size_t> large;
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = weights[i] * static_cast<double>(n) / total;
        (scaled[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
        const std::size_t s = small.back();
        small.pop_back();
        const std::size_t l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // Leftovers are 1 up to rounding, except zero-weight columns which must stay unreachable.
    const auto first_positive = static_cast<std::size_t>(
        std::find_if(weights.begin(), weights.end(), [](double x) { return x > 0.0; }) - weights.begin());
    for (auto group : {&large, &small}) {
        for (auto i : *group) {
            prob_[i] = weights[i] > 0.0 ? 1.0 : 0.0;
            alias_[i] = weights[i] > 0.0 ? i : first_positive;
        }
    }
}

std::size_t AliasTable::sample(Rng& rng) const noexcept {
    const std::size_t column = uniform_below(rng, prob_.size());
    return uniform01(rng) < prob_[column] ? column : alias_[column];
}

RejectionSampler::RejectionSampler(std::span<const double> weights) {
    total_ = checked_total(weights);
    const double peak = *std::max_element(weights.begin(), weights.end());
    accept_.resize(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) accept_[i] = weights[i] / peak;
}

std::size_t RejectionSampler::sample(Rng& rng) const noexcept {
    for (;;) {
        const std::size_t i = uniform_below(rng, accept_.size());
        if (uniform01(rng) < accept_[i]) return i;
    }
}

double RejectionSampler::expected_trials() const noexcept {
    double sum = 0.0;
    for (double a : accept_) sum += a;
    return static_cast<double>(accept_.size()) / sum;
}

std::vector<std::size_t> draw_nodes(std::span<const double> weights, std::size_t n, std::uint64_t seed,
                                    SamplerBackend backend) {
    Rng rng(seed);
    std::vector<std::size_t> out;
    out.reserve(n);
    if (backend == SamplerBackend::Alias) {
        const AliasTable table(weights);
        for (std::size_t i = 0; i < n; ++i) out.push_back(table.sample(rng));
    } else {
        const RejectionSampler sampler(weights);
        for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.sample(rng));
    }
    return out;
}

} // namespace ridgelab
