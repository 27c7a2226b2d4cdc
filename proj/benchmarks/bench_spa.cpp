#include <benchmark/benchmark.h>

#include "spa/clustering.hpp"
#include "spa/generator.hpp"
#include "spa/geometry.hpp"
#include "spa/graph_io.hpp"
#include "spa/stats.hpp"

namespace {

spa::ModelParams params(std::int64_t n) {
  spa::ModelParams p;
  p.n = static_cast<std::uint64_t>(n);
  return p;
}

void BM_Generate(benchmark::State& state) {
  const auto p = params(state.range(0));
  for (auto _ : state) {
    auto g = spa::generate(p, spa::TrackPolicy::none());
    benchmark::DoNotOptimize(g.edge_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_GenerateL2(benchmark::State& state) {
  auto p = params(state.range(0));
  p.norm = spa::Norm::L2;
  p.dimension = 3;
  for (auto _ : state) {
    auto g = spa::generate(p, spa::TrackPolicy::none());
    benchmark::DoNotOptimize(g.edge_count());
  }
}
BENCHMARK(BM_GenerateL2)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_GenerateNaive(benchmark::State& state) {
  const auto p = params(state.range(0));
  for (auto _ : state) {
    auto g = spa::generate_naive(p, spa::TrackPolicy::none());
    benchmark::DoNotOptimize(g.edge_count());
  }
}
BENCHMARK(BM_GenerateNaive)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Clustering(benchmark::State& state) {
  const auto g = spa::generate(params(state.range(0)));
  for (auto _ : state) {
    auto report = spa::compute_clustering(g, spa::SplitPolicy::half_final());
    benchmark::DoNotOptimize(report.per_vertex.size());
  }
}
BENCHMARK(BM_Clustering)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_BandedCurve(benchmark::State& state) {
  const auto g = spa::generate(params(100000), spa::TrackPolicy::none());
  const auto report = spa::compute_clustering(g);
  for (auto _ : state) {
    auto curve = spa::banded_curve(report, spa::Variant::Directed, 0.1);
    benchmark::DoNotOptimize(curve.size());
  }
}
BENCHMARK(BM_BandedCurve)->Unit(benchmark::kMillisecond);

void BM_Serialize(benchmark::State& state) {
  const auto g = spa::generate(params(state.range(0)), spa::TrackPolicy::none());
  for (auto _ : state) {
    auto text = spa::serialize_graph(g);
    benchmark::DoNotOptimize(text.size());
  }
}
BENCHMARK(BM_Serialize)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TorusDistance(benchmark::State& state) {
  const double a[] = {0.1, 0.9, 0.4}, b[] = {0.8, 0.2, 0.45};
  for (auto _ : state) {
    benchmark::DoNotOptimize(spa::torus_distance(a, b, spa::Norm::L2));
  }
}
BENCHMARK(BM_TorusDistance);

}  // namespace

BENCHMARK_MAIN();
