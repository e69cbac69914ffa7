#include <benchmark/benchmark.h>

#include <vector>

#include "ara/adversary.hpp"
#include "ara/ara_solver.hpp"
#include "ara/experiment.hpp"
#include "ara/ocba.hpp"
#include "ara/rng.hpp"
#include "ara/strategy_space.hpp"

namespace {

void BM_Enumerate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ara::enumerate(n));
}
BENCHMARK(BM_Enumerate)->DenseRange(2, 5);

void BM_BestResponseExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ara::Model model(ara::builtin_params("original-n" + std::to_string(n)));
  const ara::SpaceIndex space = ara::enumerate(n);
  ara::Stream rng(1);
  const ara::TraitSample r = ara::sample_traits(model, rng);
  std::size_t j = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ara::best_response_exact(model, space, space.tenths(j), r));
    j = (j + 1) % space.size();
  }
}
BENCHMARK(BM_BestResponseExact)->DenseRange(2, 5);

void BM_BestResponseOcba(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ara::Model model(ara::builtin_params("original-n" + std::to_string(n)));
  const ara::SpaceIndex space = ara::enumerate(n);
  const auto budget = ara::SolverBudget::paper_defaults(n).nested;
  ara::Stream rng(2);
  const ara::TraitSample r = ara::sample_traits(model, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ara::best_response_ocba(model, space, space.tenths(0), r, budget, rng));
  }
}
BENCHMARK(BM_BestResponseOcba)->DenseRange(2, 3)->Unit(benchmark::kMicrosecond);

void BM_RunTrial(benchmark::State& state) {
  const ara::Model model(ara::builtin_params("original-n2"));
  const ara::SpaceIndex space = ara::enumerate(2);
  const auto budget = ara::SolverBudget::paper_defaults(2);
  std::uint64_t key = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ara::run_trial(model, space, budget, ++key));
}
BENCHMARK(BM_RunTrial)->Unit(benchmark::kMillisecond);

void BM_Allocate(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  ara::Stream rng(3);
  std::vector<double> mu(k), sd(k);
  for (std::size_t i = 0; i < k; ++i) {
    mu[i] = rng.uniform();
    sd[i] = 0.1 + rng.uniform();
  }
  for (auto _ : state) benchmark::DoNotOptimize(ara::allocate_moments(mu, sd, 3125));
}
BENCHMARK(BM_Allocate)->Arg(11)->Arg(66)->Arg(286)->Arg(1001);

void BM_ExactPartial(benchmark::State& state) {
  const ara::Model model(ara::builtin_params("original-n3"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ara::solve_exact_partial_analytic(model, state.range(0), 1));
  }
}
BENCHMARK(BM_ExactPartial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
