#include <numeric>

#include <benchmark/benchmark.h>

#include "spanlab/lonely.hpp"
#include "spanlab/paths.hpp"
#include "spanlab/spanner.hpp"

using namespace spanlab;

namespace {

EmbeddedGraph instance(int n, double p, std::uint64_t seed = 1) {
  return sample_gnp_embedding(sample_points(n, seed), p, seed);
}

std::vector<VertexId> iota(int n) {
  std::vector<VertexId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void BM_Dijkstra(benchmark::State& state) {
  const auto g = instance(static_cast<int>(state.range(0)), 0.2);
  VertexId s = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dijkstra(g, s));
    s = (s + 1) % g.vertex_count();
  }
}
BENCHMARK(BM_Dijkstra)->Arg(500)->Arg(1000)->Arg(2000);

void BM_Apsp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = instance(n, 0.2);
  const auto src = iota(n);
  for (auto _ : state) benchmark::DoNotOptimize(apsp(g, src, 1));
}
BENCHMARK(BM_Apsp)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_ConeTable(benchmark::State& state) {
  const auto g = instance(static_cast<int>(state.range(0)), 0.25);
  const auto spec = ConeSpec::from_epsilon(0.2);
  for (auto _ : state) benchmark::DoNotOptimize(build_cone_table(g, spec));
}
BENCHMARK(BM_ConeTable)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_AssembleSpanner(benchmark::State& state) {
  Params p;
  p.n = static_cast<int>(state.range(0));
  p.p = 0.25;
  p.seed = 3;
  const auto g = generate_instance(p);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_spanner(g, p, 1));
}
BENCHMARK(BM_AssembleSpanner)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

void BM_CountLonely(benchmark::State& state) {
  const auto g = instance(static_cast<int>(state.range(0)), 0.15);
  for (auto _ : state) benchmark::DoNotOptimize(count_lonely(g, 0.2));
}
BENCHMARK(BM_CountLonely)->Arg(500)->Arg(1500)->Unit(benchmark::kMillisecond);

void BM_EssentialEdges(benchmark::State& state) {
  const auto g = instance(static_cast<int>(state.range(0)), 0.15);
  for (auto _ : state) benchmark::DoNotOptimize(essential_edges(g, 0.2));
}
BENCHMARK(BM_EssentialEdges)->Arg(500)->Arg(1500)->Unit(benchmark::kMillisecond);

void BM_EllipseArea(benchmark::State& state) {
  const auto pts = sample_points(1024, 7);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ellipse_square_area(pts[i], pts[i + 1], 0.2));
    i = (i + 2) % 1024;
  }
}
BENCHMARK(BM_EllipseArea);

void BM_LonelyIntegral(benchmark::State& state) {
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expected_lonely_integral(1500, 0.15, 0.2, samples, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * samples));
}
BENCHMARK(BM_LonelyIntegral)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
