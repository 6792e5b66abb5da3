#include <benchmark/benchmark.h>

#include <random>

#include "rrwoc/assignment.hpp"
#include "rrwoc/hypothesis.hpp"
#include "rrwoc/linalg.hpp"
#include "rrwoc/regressnd.hpp"
#include "rrwoc/simulate.hpp"

namespace {

using namespace rrwoc;

SimInstance standard_instance(std::size_t k, std::uint64_t seed) {
  SimConfig c;
  c.k_outliers = k;
  c.seed = seed;
  return generate_instance(c);
}

void BM_LinearAssignment(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index k = 0; k < n; ++k) c(r, k) = u(rng);
  }
  const CostMatrix cost(c);
  for (auto _ : state) benchmark::DoNotOptimize(linear_assignment(cost));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LinearAssignment)->RangeMultiplier(2)->Range(4, 128)->Complexity();

void BM_ResidualMatrix(benchmark::State& state) {
  const SimInstance inst = standard_instance(5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(residual_matrix(inst.X, inst.Y, inst.truth_beta));
}
BENCHMARK(BM_ResidualMatrix);

void BM_TupleHypothesis(benchmark::State& state) {
  const SimInstance inst = standard_instance(5, 3);
  const TuplePair tuple{{0, 1, 2}, {3, 4, 5}};
  for (auto _ : state) benchmark::DoNotOptimize(tuple_hypothesis(inst.X, inst.Y, tuple, false));
}
BENCHMARK(BM_TupleHypothesis);

void BM_EvaluateHypothesis(benchmark::State& state) {
  const SimInstance inst = standard_instance(5, 4);
  const Coefficients beta = random_rotation_scaled(3, {}, 9);
  const MarginSpec nu = MarginSpec::scalar(1e-9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        evaluate_hypothesis(inst.X, inst.Y, beta, nu, AssignmentCost::MarginPenalized));
  }
}
BENCHMARK(BM_EvaluateHypothesis);

void BM_RandomizedND(benchmark::State& state) {
  const SimInstance inst = standard_instance(static_cast<std::size_t>(state.range(0)), 5);
  ConfigND cfg;
  cfg.k_hint = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = seed++;
    benchmark::DoNotOptimize(rrwoc_nd_randomized(inst.X, inst.Y, cfg));
  }
}
BENCHMARK(BM_RandomizedND)->Arg(1)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
