#include <germinv/oracle.hpp>
#include <germinv/parser.hpp>

#include <benchmark/benchmark.h>

using namespace germinv;

namespace {

const char* const kGerms[] = {"x^3 + y^6", "(x^2 - y^3)^2", "x^5 - 3*x^2*y^3 + y^6 - 2*x*y^4"};

template <auto Sweep>
void BM_Sweep(benchmark::State& state) {
  const OracleConfig cfg;
  const AngularFamily fam(parse_poly(kGerms[state.range(0)]), cfg.split_depth);
  const RadiusLadder ladder(cfg.t_min, cfg.t_max, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(Sweep(fam, ladder, cfg.grid, cfg.tol));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

}  // namespace

BENCHMARK(BM_Sweep<sweep_serial>)->ArgsProduct({{0, 1, 2}, {40, 160}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep<sweep_parallel>)->ArgsProduct({{0, 1, 2}, {40, 160}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
