#include "rrwoc/rng.hpp"

#include <numeric>
#include <utility>

#include "rrwoc/error.hpp"

namespace rrwoc {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(rng);
}

std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t population,
                                                    std::size_t count) {
  if (count > population) throw Error(ErrorCode::InvalidParams, "sample larger than population");
  // Partial Fisher-Yates; callers draw small tuples, so a full index vector is fine.
  std::vector<std::size_t> pool(population);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + uniform_index(rng, population - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace rrwoc
