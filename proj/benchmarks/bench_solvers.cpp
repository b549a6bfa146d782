#include <benchmark/benchmark.h>

#include "tsgl/attacker.hpp"
#include "tsgl/baseline.hpp"
#include "tsgl/defender.hpp"
#include "tsgl/fixed_point.hpp"
#include "tsgl/numeric.hpp"
#include "tsgl/report.hpp"

namespace {

using namespace tsgl;

Scenario gl1() {
  return Scenario(BreachModel::gl_class1(1e-4, 1.1), AttackerParams(70000, 3500), DefenderParams(1e5, 1));
}

Scenario gl2() {
  return Scenario(BreachModel::gl_class2(1e-4), AttackerParams(1e5, 1e4), DefenderParams(1e5, 1));
}

Scenario custom() {
  return Scenario(BreachModel::custom_polynomial(1.0, {0.875, 0.75, -0.5}), AttackerParams(10, 1),
                  DefenderParams(10, 1));
}

void BM_BestResponse(benchmark::State& state) {
  const AttackerParams p(20, 1);
  double s = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response(p, s));
    s = s > 0.9 ? 0.1 : s + 1e-3;
  }
}
BENCHMARK(BM_BestResponse);

void BM_SolveDefenderCold(benchmark::State& state) {
  const auto scn = state.range(0) == 0 ? gl1() : gl2();
  for (auto _ : state) benchmark::DoNotOptimize(solve_defender(scn, 0.75));
}
BENCHMARK(BM_SolveDefenderCold)->Arg(0)->Arg(1);

void BM_SolveDefenderCached(benchmark::State& state) {
  const DefenderSolver solver(gl1());
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(0.75));
}
BENCHMARK(BM_SolveDefenderCached);

void BM_SolveDefenderCustom(benchmark::State& state) {
  const DefenderSolver solver(custom());
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(0.6));
}
BENCHMARK(BM_SolveDefenderCustom);

void BM_SolveFpe(benchmark::State& state) {
  const auto scn = state.range(0) == 0 ? gl1() : gl2();
  for (auto _ : state) benchmark::DoNotOptimize(solve_fpe(scn));
}
BENCHMARK(BM_SolveFpe)->Arg(0)->Arg(1);

void BM_GordonLoeb(benchmark::State& state) {
  const auto scn = gl1();
  for (auto _ : state) benchmark::DoNotOptimize(solve_gordon_loeb(scn, 0.75));
}
BENCHMARK(BM_GordonLoeb);

void BM_RunSweep(benchmark::State& state) {
  SweepSpec spec(gl1());
  spec.range = {0.01, 0.99, static_cast<std::size_t>(state.range(0))};
  spec.outputs = {SweepOutput::Attacker, SweepOutput::Defender, SweepOutput::Baseline};
  spec.threads = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunSweep)->Args({1000, 1})->Args({1000, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
