#include <benchmark/benchmark.h>

#include "operlab/balanced.hpp"
#include "operlab/bethe.hpp"
#include "operlab/gaudin.hpp"
#include "operlab/hecke.hpp"
#include "operlab/monodromy.hpp"
#include "operlab/oper.hpp"

using namespace operlab;

namespace {

GaudinConfig four_point(int n) {
  return make_config(std::vector<cplx>{0.0, 1.0, 2.5, 4.0}, std::vector<cplx>{1.0, 2.0, 1.0, 2.0}, n);
}

GaudinConfig fixture() { return make_config(std::vector<cplx>{0.0, 1.0, 2.0}, std::vector<cplx>{1.0, 1.0, 1.0}, 1); }

void BM_JointDiagonalize(benchmark::State& state) {
  const auto cfg = four_point(int(state.range(0)));
  const auto mats = gaudin_matrices(cfg, build_sector(cfg, true));
  for (auto _ : state) benchmark::DoNotOptimize(joint_diagonalize(mats));
  state.counters["dim"] = double(mats.dim());
}
BENCHMARK(BM_JointDiagonalize)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SolveBae(benchmark::State& state) {
  const auto cfg = four_point(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_bae(cfg));
}
BENCHMARK(BM_SolveBae)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MonodromyGenerators(benchmark::State& state) {
  const auto cfg = fixture();
  const auto L = miura(cfg, solve_bae(cfg)[0].w);
  for (auto _ : state) benchmark::DoNotOptimize(monodromy_generators(L));
}
BENCHMARK(BM_MonodromyGenerators)->Unit(benchmark::kMillisecond);

void BM_BetaQuaternionic(benchmark::State& state) {
  const auto cfg = fixture();
  const auto d = qdata_from_roots(cfg, solve_bae(cfg)[0].w);
  const double x0 = default_basepoint(d);
  for (auto _ : state) benchmark::DoNotOptimize(beta_quaternionic(d, cplx(1.3, 0.8), x0));
}
BENCHMARK(BM_BetaQuaternionic)->Unit(benchmark::kMicrosecond);

void BM_BalanceCheck(benchmark::State& state) {
  const RealPointConfig cfg{{0, 1, 3}, std::vector<cplx>(4, 0.0)};
  const auto L = balanced_oper(cfg, -0.2313372251);
  for (auto _ : state) benchmark::DoNotOptimize(balance_check(L));
}
BENCHMARK(BM_BalanceCheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
