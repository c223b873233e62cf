// Serial reference vs OpenMP kernels on a synthetic rating network.
// Argument: number of edges.

#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>

#include "wdn/fairness_goodness.hpp"
#include "wdn/graph.hpp"
#include "wdn/knn.hpp"
#include "wdn/metric.hpp"
#include "wdn/svm.hpp"

namespace {

struct Fixture {
  wdn::DirectedGraph graph;
  std::vector<double> edge_weights;
  wdn::PartialWeighting training;
  std::vector<std::size_t> test;
};

// Skewed vertex choice so a few hubs have large neighborhoods, as in real
// trust networks.
Fixture make_fixture(std::size_t edges) {
  std::mt19937_64 rng(edges);
  const std::size_t vertices = edges / 5 + 2;
  std::geometric_distribution<std::size_t> vertex(8.0 / static_cast<double>(vertices));
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  std::bernoulli_distribution in_training(0.7);
  std::vector<wdn::TokenEdge> list;
  for (std::size_t i = 0; i < edges; ++i) {
    list.emplace_back(std::to_string(vertex(rng) % vertices), std::to_string(vertex(rng) % vertices));
  }
  Fixture f{wdn::build_graph(list), {}, {}, {}};
  f.edge_weights.resize(f.graph.edge_count());
  std::vector<std::pair<std::size_t, double>> entries;
  for (std::size_t e = 0; e < f.graph.edge_count(); ++e) {
    f.edge_weights[e] = weight(rng);
    if (in_training(rng)) {
      entries.emplace_back(e, f.edge_weights[e]);
    } else {
      f.test.push_back(e);
    }
  }
  f.training = wdn::PartialWeighting(f.graph, wdn::Variant::EdgeWeights, {-1.0, 1.0}, entries);
  return f;
}

const Fixture& fixture(std::size_t edges) {
  static std::map<std::size_t, Fixture> cache;
  auto it = cache.find(edges);
  if (it == cache.end()) it = cache.emplace(edges, make_fixture(edges)).first;
  return it->second;
}

template <bool Parallel>
void BM_Profiles(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const double h = wdn::default_bandwidth(f.training);
  for (auto _ : state) {
    auto t = Parallel ? wdn::compute_profiles(f.graph, f.training, h)
                      : wdn::compute_profiles_serial(f.graph, f.training, h);
    benchmark::DoNotOptimize(t);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.graph.edge_count()));
}

template <bool Parallel>
void BM_KnnBatch(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const wdn::KnnPredictor knn(
      wdn::compute_profiles(f.graph, f.training, wdn::default_bandwidth(f.training)), f.training, {});
  for (auto _ : state) {
    auto p = Parallel ? knn.predict_batch(f.test) : knn.predict_batch_serial(f.test);
    benchmark::DoNotOptimize(p);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.test.size()));
}

template <bool Parallel>
void BM_SvmBatch(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const wdn::SvmPredictor svm(
      wdn::compute_profiles(f.graph, f.training, wdn::default_bandwidth(f.training)), f.training, {});
  for (auto _ : state) {
    auto p = Parallel ? svm.predict_batch(f.test) : svm.predict_batch_serial(f.test);
    benchmark::DoNotOptimize(p);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.test.size()));
}

template <bool Parallel>
void BM_FairnessGoodness(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto s = Parallel ? wdn::compute_fairness_goodness(f.graph, f.edge_weights)
                      : wdn::compute_fairness_goodness_serial(f.graph, f.edge_weights);
    benchmark::DoNotOptimize(s);
  }
}

}  // namespace

BENCHMARK(BM_Profiles<false>)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Profiles<true>)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_KnnBatch<false>)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnnBatch<true>)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SvmBatch<false>)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SvmBatch<true>)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FairnessGoodness<false>)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FairnessGoodness<true>)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
