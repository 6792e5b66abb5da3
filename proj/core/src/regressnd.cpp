#include "rrwoc/regressnd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "iteration_bound.hpp"
#include "rrwoc/error.hpp"
#include "rrwoc/linalg.hpp"
#include "rrwoc/regress1d.hpp"
#include "rrwoc/rng.hpp"

namespace rrwoc {
namespace {

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void check_shapes(const PointSet& X, const PointSet& Y, std::size_t s) {
  if (X.dim() != Y.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "source and target dimensions differ");
  }
  if (X.count() < s || Y.count() < s) {
    throw Error(ErrorCode::InvalidParams, "both point sets need at least " + std::to_string(s) +
                                              " points for a tuple hypothesis");
  }
}

// Advances `combo` (sorted, values < n) to the next lexicographic combination.
bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t s = combo.size();
  for (std::size_t i = s; i-- > 0;) {
    if (combo[i] < n - s + i) {
      ++combo[i];
      for (std::size_t j = i + 1; j < s; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::optional<std::uint64_t> hypothesis_count(std::size_t n, std::size_t m, std::size_t s) {
  auto cn = binomial(n, s);
  auto cm = binomial(m, s);
  if (!cn || !cm) return std::nullopt;
  auto total = checked_mul(*cn, *cm);
  for (std::size_t f = 2; total && f <= s; ++f) total = checked_mul(*total, f);
  return total;
}

}  // namespace

std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i; divide by the gcd first to stay small.
    const std::uint64_t factor = n - k + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t reduced_i = i / g;
    auto next = checked_mul(result / g, factor / reduced_i);
    if (!next) return std::nullopt;
    result = *next;
  }
  return result;
}

std::size_t q_iterations_nd(std::size_t n, std::size_t m, std::size_t k, std::size_t d,
                            double delta, QBoundOptions options) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "delta must lie in (0, 1)");
  }
  if (d == 0 || d > std::min(n, m)) {
    throw Error(ErrorCode::InvalidParams, "tuple size must lie in [1, min(n, m)]");
  }
  if (k >= n) throw Error(ErrorCode::InvalidParams, "outlier count k must be below n");

  const std::size_t inliers =
      options.numerator == QNumerator::TargetInliers ? n - k : (m > k ? m - k : 0);

  double hit = 0.0;
  const auto num = binomial(inliers, d);
  const auto cn = binomial(n, d);
  const auto cm = binomial(m, d);
  if (num && cn && cm) {
    hit = static_cast<double>(static_cast<long double>(*num) /
                              (static_cast<long double>(*cm) * static_cast<long double>(*cn)));
  } else if (inliers >= d) {
    hit = std::exp(log_binomial(inliers, d) - log_binomial(m, d) - log_binomial(n, d));
  }
  if (options.conservative) hit /= std::tgamma(static_cast<double>(d) + 1.0);
  return detail::iterations_for_hit_probability(hit, delta);
}

std::size_t tuple_size(std::size_t d, bool with_offset) { return with_offset ? d + 1 : d; }

std::optional<Coefficients> tuple_hypothesis(const PointSet& X, const PointSet& Y,
                                             const TuplePair& tuple, bool with_offset) {
  return try_solve_lstsq(X.rows(tuple.sources), Y.rows(tuple.targets), with_offset);
}

Schedule draw_schedule(const PointSet& X, const PointSet& Y, std::size_t q, std::uint64_t seed,
                       bool with_offset) {
  const std::size_t s = tuple_size(X.dim(), with_offset);
  check_shapes(X, Y, s);
  Rng rng(seed);
  Schedule schedule;
  schedule.tuples.reserve(q);
  while (schedule.tuples.size() < q && schedule.degenerate < q) {
    TuplePair tuple{sample_without_replacement(rng, Y.count(), s),
                    sample_without_replacement(rng, X.count(), s)};
    if (well_conditioned(X.rows(tuple.sources), with_offset)) {
      schedule.tuples.push_back(std::move(tuple));
    } else {
      ++schedule.degenerate;
    }
  }
  return schedule;
}

Schedule enumerate_schedule(std::size_t n, std::size_t m, std::size_t s) {
  Schedule schedule;
  if (s == 0 || s > n || s > m) return schedule;
  if (auto total = hypothesis_count(n, m, s)) schedule.tuples.reserve(*total);

  std::vector<std::size_t> targets(s);
  std::iota(targets.begin(), targets.end(), std::size_t{0});
  do {
    std::vector<std::size_t> sources(s);
    std::iota(sources.begin(), sources.end(), std::size_t{0});
    do {
      std::vector<std::size_t> ordered = sources;
      do {
        schedule.tuples.push_back({targets, ordered});
      } while (std::next_permutation(ordered.begin(), ordered.end()));
    } while (next_combination(sources, m));
  } while (next_combination(targets, n));
  return schedule;
}

ModelEstimate rrwoc_nd_from_schedule(const PointSet& X, const PointSet& Y, const ConfigND& config,
                                     const Schedule& schedule) {
  const std::size_t s = tuple_size(X.dim(), config.with_offset);
  check_shapes(X, Y, s);
  config.margin.check_extent(Y.count());

  const bool offset = config.with_offset;
  HypothesisSource source = [&](std::size_t t) {
    return tuple_hypothesis(X, Y, schedule.tuples[t], offset);
  };
  auto best = search_hypotheses(X, Y, config.margin, config.cost, schedule.tuples.size(), source,
                                config.threads);
  if (!best) throw Error(ErrorCode::NoValidHypothesis, "every tuple draw was degenerate");

  Refit refit = [&](const Hypothesis& h) -> std::optional<Coefficients> {
    if (h.inliers.size() < s) return std::nullopt;
    std::vector<std::size_t> targets, sources;
    for (const auto& pair : h.assignment.pairs()) {
      if (std::binary_search(h.inliers.begin(), h.inliers.end(), pair.target)) {
        targets.push_back(pair.target);
        sources.push_back(pair.source);
      }
    }
    return try_solve_lstsq(X.rows(sources), Y.rows(targets), offset);
  };

  SolveStats stats;
  stats.iterations = schedule.tuples.size();
  stats.degenerate = schedule.degenerate;
  return finalize_estimate(X, Y, config.margin, config.cost, std::move(*best), refit, true, stats);
}

ModelEstimate rrwoc_nd_randomized(const PointSet& X, const PointSet& Y, const ConfigND& config) {
  const std::size_t s = tuple_size(X.dim(), config.with_offset);
  check_shapes(X, Y, s);
  const std::size_t n = Y.count();
  const std::size_t k = config.k_hint.value_or(default_k_hint(n));
  const std::size_t q = q_iterations_nd(n, X.count(), k, s, config.delta, config.q_bound);
  if (q > config.max_iterations_cap) {
    throw Error(ErrorCode::IterationCapExceeded,
                "iteration bound " + std::to_string(q) + " exceeds cap " +
                    std::to_string(config.max_iterations_cap));
  }
  Schedule schedule = draw_schedule(X, Y, q, config.seed, config.with_offset);
  ModelEstimate estimate = rrwoc_nd_from_schedule(X, Y, config, schedule);
  estimate.stats.iterations = q;
  return estimate;
}

ModelEstimate rrwoc_nd_exhaustive(const PointSet& X, const PointSet& Y, const ConfigND& config) {
  const std::size_t s = tuple_size(X.dim(), config.with_offset);
  check_shapes(X, Y, s);
  const auto total = hypothesis_count(Y.count(), X.count(), s);
  if (!total || *total > config.max_hypotheses) {
    throw Error(ErrorCode::InstanceTooLarge,
                "exhaustive search needs " + (total ? std::to_string(*total) : std::string("> 2^64")) +
                    " hypotheses, cap is " + std::to_string(config.max_hypotheses));
  }
  const Schedule schedule = enumerate_schedule(Y.count(), X.count(), s);
  return rrwoc_nd_from_schedule(X, Y, config, schedule);
}

}  // namespace rrwoc
