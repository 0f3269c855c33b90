#include <benchmark/benchmark.h>

#include "mclex/implication.hpp"
#include "mclex/poset.hpp"

namespace {

void BM_Implication(benchmark::State& state, int source, int target) {
  const mclex::Matrix a = mclex::gen_mn(source);
  const mclex::Matrix b = mclex::gen_mn(target);
  for (auto _ : state) {
    auto v = mclex::implies_lex(a, b);
    benchmark::DoNotOptimize(v.holds);
    state.counters["csp_nodes"] = static_cast<double>(v.stats.csp_nodes);
  }
}
BENCHMARK_CAPTURE(BM_Implication, m5_m4, 5, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Implication, m4_m5, 4, 5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Implication, m6_m5, 6, 5)->Unit(benchmark::kMillisecond);

void BM_Canonicalize(benchmark::State& state) {
  const mclex::Matrix m = mclex::gen_mn(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mclex::canonicalize(m));
}
BENCHMARK(BM_Canonicalize)->DenseRange(3, 5);

void BM_Poset(benchmark::State& state) {
  for (auto _ : state) {
    auto ms = mclex::enumerate_canonical(3, static_cast<std::size_t>(state.range(0)), 2);
    benchmark::DoNotOptimize(mclex::build_poset(ms).classes.size());
  }
}
BENCHMARK(BM_Poset)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
