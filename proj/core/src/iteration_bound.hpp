#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace rrwoc::detail {

/// Draws needed so that all miss with probability at most 1 - delta, given a
/// per-draw hit probability: ceil(log(1 - delta) / log(1 - hit)), at least 1.
/// The 1e-9 slack keeps exact integer ratios from rounding up by one ulp.
inline std::size_t iterations_for_hit_probability(double hit, double delta) {
  constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
  if (!(hit > 0.0)) return kUnbounded;
  if (hit >= 1.0) return 1;
  const double log_miss = std::log1p(-hit);
  if (log_miss == 0.0) return kUnbounded;
  const double q = std::ceil(std::log(1.0 - delta) / log_miss - 1e-9);
  if (q >= static_cast<double>(kUnbounded)) return kUnbounded;
  return std::max<std::size_t>(1, static_cast<std::size_t>(q));
}

}  // namespace rrwoc::detail
