#pragma once

// Exact-decay instance on Z_5 x Z_5: the k-th largest node weight has
// magnitude alpha k^{-(1+beta)}, placed at a seeded random node with a random
// sign. Labels are f = S[u] on a uniform grid dataset.

#include <algorithm>
#include <numeric>
#include <random>

#include "ridgelab/lottery.hpp"

namespace synthetic {

struct DecayInstance {
    ridgelab::RidgeletCoeffs u;
    ridgelab::EmpiricalData data;
    ridgelab::ActivationPair pair;
};

inline DecayInstance decay_instance(double alpha, double beta, std::uint64_t seed) {
    using namespace ridgelab;
    const PrimeModulus pm(5);
    const ActivationPair pair(pm, ramp_activation(5));
    RidgeletCoeffs u(pm, 1);
    std::vector<std::size_t> order(u.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const double magnitude = alpha * std::pow(static_cast<double>(k + 1), -(1.0 + beta));
        u[order[k]] = (rng() & 1U) ? magnitude : -magnitude;
    }
    return {u, uniform_dataset(synthesize_with_kernel(u, pair.g())), pair};
}

} // namespace synthetic
