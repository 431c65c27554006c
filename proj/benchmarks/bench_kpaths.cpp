#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "kpaths/generate.hpp"
#include "kpaths/graph.hpp"
#include "kpaths/pathdb.hpp"
#include "kpaths/vsop.hpp"
#include "kpaths/zbdd.hpp"

namespace {

using namespace kpaths;

Dag layered(unsigned layers, unsigned width, std::int64_t wmax) {
  LayeredGraphSpec spec;
  spec.layers = layers;
  spec.width = width;
  spec.wmin = 1;
  spec.wmax = wmax;
  spec.seed = 42;
  return Dag::parse(generate_layered(spec));
}

void BM_LayeredBuild(benchmark::State& state) {
  Dag dag = layered(unsigned(state.range(0)), 10, 10);
  for (auto _ : state) {
    NodeStore store;
    PathDb db(store, dag);
    benchmark::DoNotOptimize(db.count_paths());
  }
}
BENCHMARK(BM_LayeredBuild)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

// One shared database (10 layers, 10^9 paths) so query benchmarks do not pay
// the build cost per run.
PathDb& shared_db() {
  static NodeStore store;
  static Dag dag = layered(10, 10, 10);
  static PathDb db(store, dag);
  return db;
}

void BM_TopKLongest(benchmark::State& state) {
  PathDb& db = shared_db();
  std::uint64_t k = std::uint64_t(state.range(0));
  for (auto _ : state) {
    QueryResult result = db.top_k_longest(k);
    benchmark::DoNotOptimize(result.count);
  }
}
BENCHMARK(BM_TopKLongest)->Arg(10)->Arg(1000)->Arg(100000)
    ->Unit(benchmark::kMillisecond);

void BM_KthShortest(benchmark::State& state) {
  PathDb& db = shared_db();
  std::uint64_t k = std::uint64_t(state.range(0));
  for (auto _ : state) {
    Term term = db.kth_shortest(k);
    benchmark::DoNotOptimize(term.value);
  }
}
BENCHMARK(BM_KthShortest)->Arg(10)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SetUnion(benchmark::State& state) {
  std::mt19937_64 rng(7);
  unsigned vars = unsigned(state.range(0));
  NodeStore store;
  std::vector<NodeRef> families;
  for (int f = 0; f < 64; ++f) {
    NodeRef family = NodeRef::empty();
    for (int c = 0; c < 32; ++c) {
      NodeRef combo = NodeRef::unit();
      for (unsigned v = 0; v < vars; ++v)
        if (rng() & 1) combo = store.attach(combo, VarId{v});
      family = store.set_union(family, combo);
    }
    families.push_back(family);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    NodeRef a = families[i % families.size()];
    NodeRef b = families[(i + 17) % families.size()];
    benchmark::DoNotOptimize(store.set_union(a, b));
    ++i;
  }
}
BENCHMARK(BM_SetUnion)->Arg(16)->Arg(64);

void BM_DigitAdd(benchmark::State& state) {
  std::mt19937_64 rng(9);
  NodeStore store;
  std::vector<Vsop> exprs;
  for (int e = 0; e < 32; ++e) {
    Vsop x = Vsop::zero(store);
    for (int t = 0; t < 16; ++t) {
      Combo combo;
      for (unsigned v = 0; v < 12; ++v)
        if (rng() & 1) combo.push_back(VarId{v});
      x = x.add(Vsop::from_term(store, std::int64_t(rng() % 199) - 99, combo));
    }
    exprs.push_back(x);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const Vsop& a = exprs[i % exprs.size()];
    const Vsop& b = exprs[(i + 11) % exprs.size()];
    benchmark::DoNotOptimize(a.add(b).digits().size());
    ++i;
  }
}
BENCHMARK(BM_DigitAdd);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
