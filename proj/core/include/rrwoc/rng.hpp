#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace rrwoc {

using Rng = std::mt19937_64;

/// Deterministic seed derivation (splitmix64 finalizer over the inputs).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Uniform index in [0, n).
std::size_t uniform_index(Rng& rng, std::size_t n);

/// `count` distinct indices from [0, population) in random order.
std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t population,
                                                    std::size_t count);

}  // namespace rrwoc
