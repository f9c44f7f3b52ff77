#include <benchmark/benchmark.h>

#include <random>

#include "ddmls/datasets.hpp"
#include "ddmls/harness.hpp"
#include "ddmls/mls.hpp"
#include "ddmls/smoothness.hpp"

using namespace ddmls;

namespace {

MlsConfig make_config(const NodeSet& nodes, KernelKind kind, int degree, Mode mode) {
  MlsConfig cfg;
  cfg.basis = BasisSpec(2, degree);
  cfg.weights = WeightConfig::with_defaults(kind, default_shape_eps(nodes.size()));
  cfg.mode = mode;
  return cfg;
}

std::vector<Point> random_queries(std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.025, 0.975);
  std::vector<Point> q;
  for (std::size_t i = 0; i < n; ++i) q.emplace_back(u(rng), u(rng));
  return q;
}

}  // namespace

// range(0): grid level, range(1): kernel index
static void BM_SolvePoint(benchmark::State& state) {
  const NodeSet nodes = sample(TestFunction::franke(), regular_grid(static_cast<int>(state.range(0))));
  const Approximant approx(nodes, make_config(nodes, kAllKernels[static_cast<std::size_t>(state.range(1))], 2, Mode::Linear));
  const auto queries = random_queries(256);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(approx.solve(queries[k++ % queries.size()]).value);
  }
  state.SetLabel(std::string(kernel_name(kAllKernels[static_cast<std::size_t>(state.range(1))])));
}
BENCHMARK(BM_SolvePoint)->Args({5, 6})->Args({7, 6})->Args({5, 0})->Args({5, 1});

static void BM_ComputeIndicators(benchmark::State& state) {
  const NodeSet nodes = sample(TestFunction::zcircle(), regular_grid(static_cast<int>(state.range(0))));
  const double delta = default_delta(nodes.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_indicators(nodes, delta, 1).max_indicator());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(nodes.size()));
}
BENCHMARK(BM_ComputeIndicators)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

static void BM_BallQuery(benchmark::State& state) {
  const NodeSet nodes = halton_points(static_cast<std::size_t>(state.range(0)));
  const double r = default_delta(nodes.size());
  const SpatialIndex index(nodes, r);
  const auto queries = random_queries(1024);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.ball_query(queries[k++ % queries.size()], r));
  }
}
BENCHMARK(BM_BallQuery)->Arg(1089)->Arg(16641)->Arg(263169);

static void BM_EvaluateField(benchmark::State& state) {
  const NodeSet nodes = sample(TestFunction::franke(), regular_grid(6));
  const Mode mode = state.range(0) == 0 ? Mode::Linear : Mode::DataDependent;
  const Approximant approx(nodes, make_config(nodes, KernelKind::W2, 2, mode));
  const auto queries = EvalGrid{}.points();
  for (auto _ : state) {
    benchmark::DoNotOptimize(approx.evaluate(queries, {1, false}).values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(queries.size()));
  state.SetLabel(std::string(mode_name(mode)));
}
BENCHMARK(BM_EvaluateField)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_FillDistance(benchmark::State& state) {
  const NodeSet nodes = halton_points(4225);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fill_distance_estimate(nodes, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_FillDistance)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
