#include <benchmark/benchmark.h>

#include <vector>

#include "ter/align.hpp"
#include "ter/policy.hpp"
#include "ter/problems.hpp"

namespace {

// One full decision: normalize the window, form per-action means, softmax,
// sample. Cost must scale with w * |A| and stay flat in elapsed initiations.
void BM_DecisionStep(benchmark::State& state) {
  std::size_t window_size = static_cast<std::size_t>(state.range(0));
  std::size_t actions = static_cast<std::size_t>(state.range(1));
  ter::Rng rng(17);

  ter::WindowMemory window(window_size);
  for (std::size_t i = 0; i < window_size; ++i) {
    window.push(ter::EfficiencyRecord{i % actions, ter::uniform_real(rng, 0.0, 1.0), 1.0,
                                      ter::uniform_real(rng, 0.0, 1.0)});
  }

  for (auto _ : state) {
    std::size_t action = ter::sample_action(ter::action_means(window, actions), 0.2, rng);
    benchmark::DoNotOptimize(action);
  }
}
BENCHMARK(BM_DecisionStep)->Args({5, 3})->Args({50, 3})->Args({500, 3})->Args({50, 10});

void BM_SmithWaterman(benchmark::State& state) {
  std::size_t length = static_cast<std::size_t>(state.range(0));
  ter::Rng rng(11);
  std::vector<std::size_t> a(length), b(length);
  for (std::size_t i = 0; i < length; ++i) {
    a[i] = ter::uniform_index(rng, 0, 2);
    b[i] = ter::uniform_index(rng, 0, 2);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ter::smith_waterman(a, b));
  }
}
BENCHMARK(BM_SmithWaterman)->Arg(50)->Arg(200)->Arg(1000);

void BM_Evaluate(benchmark::State& state) {
  ter::FunctionId id = ter::kAllFunctions[state.range(0)];
  ter::BenchmarkProblem problem = ter::make_problem(id, 100, 7);
  ter::Rng rng(23);
  std::vector<double> x = problem.bounds().sample_uniform(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem.evaluate(x));
  }
  state.SetLabel(std::string(ter::function_name(id)));
}
BENCHMARK(BM_Evaluate)->DenseRange(0, 5);

}  // namespace

BENCHMARK_MAIN();
