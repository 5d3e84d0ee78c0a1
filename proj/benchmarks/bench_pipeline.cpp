#include <benchmark/benchmark.h>

#include "shortedge/constants.hpp"
#include "shortedge/generators.hpp"
#include "shortedge/oracle.hpp"
#include "shortedge/short_edge.hpp"

namespace {

using namespace shortedge;

// Labeled setup shared by the stage benchmarks.
struct Prepared {
  Drawing drawing;
  RotationLabeling labels;
  SetFamily family;

  explicit Prepared(std::size_t n) : drawing(random_geometric_complete(n + 1, 1)) {
    const OuterVertex outer = outer_face_vertex(drawing);
    labels = relabel_ccw(drawing, outer.vertex, outer.escape_direction);
    family = triangle_family(drawing, labels);
  }
};

void BM_CrossingMatrix(benchmark::State& state) {
  const Drawing d = random_geometric_complete(state.range(0) + 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(crossing_matrix(d));
  state.counters["edge_pairs"] =
      static_cast<double>(d.edge_count()) * static_cast<double>(d.edge_count() - 1) / 2;
}
BENCHMARK(BM_CrossingMatrix)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_TriangleFamily(benchmark::State& state) {
  const Prepared p(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(triangle_family(p.drawing, p.labels));
}
BENCHMARK(BM_TriangleFamily)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_KeyMatching(benchmark::State& state) {
  const Prepared p(state.range(0));
  const MatchConfig config = match_config(kFittedConstants);
  for (auto _ : state) benchmark::DoNotOptimize(key_matching(p.family, config));
}
BENCHMARK(BM_KeyMatching)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_GreedyNet(benchmark::State& state) {
  const Prepared p(state.range(0));
  const long double delta = p.family.total_weight().value() * 0.05L;
  for (auto _ : state) benchmark::DoNotOptimize(greedy_net(p.family, delta));
}
BENCHMARK(BM_GreedyNet)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SelectShortEdge(benchmark::State& state) {
  const Drawing d = random_geometric_complete(state.range(0) + 1, 1);
  PipelineConfig config = pipeline_config(kFittedConstants);
  config.jobs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(select_short_edge(d, config));
}
BENCHMARK(BM_SelectShortEdge)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_BruteMinCrossingEdge(benchmark::State& state) {
  const Drawing d = random_geometric_complete(state.range(0) + 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_min_crossing_edge(d));
}
BENCHMARK(BM_BruteMinCrossingEdge)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
