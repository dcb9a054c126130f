#include <benchmark/benchmark.h>

#include "dinls/initial_data.hpp"
#include "dinls/observables.hpp"
#include "dinls/picard.hpp"
#include "dinls/propagator.hpp"
#include "dinls/solver.hpp"

namespace {

using namespace dinls;

ProblemParams global1() {
  return validate_params({3, 1.0, 1.0, Number::parse("1"), Number::parse("3"), Number::parse("1/2"),
                          Number::parse("1/2")});
}

Field gaussian(int points) { return chirped_gaussian(make_radial_grid(3, 20.0, points), 1.0); }

void BM_LinearPropagator(benchmark::State& state) {
  Field u = gaussian(static_cast<int>(state.range(0)));
  LinearPropagator prop(u.grid_ptr());
  for (auto _ : state) {
    prop.apply(u.values(), 1e-3);
    benchmark::DoNotOptimize(u.values().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LinearPropagator)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oNLogN);

void BM_StrangStep(benchmark::State& state) {
  Field u = gaussian(static_cast<int>(state.range(0)));
  SplitStepSolver solver(u.grid_ptr(), PdeModel::from_params(global1()));
  for (auto _ : state) {
    solver.step(u.values(), 1e-3);
    benchmark::DoNotOptimize(u.values().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StrangStep)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oNLogN);

void BM_DirichletForm(benchmark::State& state) {
  const Field u = gaussian(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_form(u.grid(), u.values()));
}
BENCHMARK(BM_DirichletForm)->RangeMultiplier(4)->Range(256, 65536);

void BM_Diagnostics(benchmark::State& state) {
  const Field u = gaussian(static_cast<int>(state.range(0)));
  const PdeModel model = PdeModel::from_params(global1());
  for (auto _ : state) benchmark::DoNotOptimize(sample_diagnostics(u, model));
}
BENCHMARK(BM_Diagnostics)->RangeMultiplier(4)->Range(256, 65536);

void BM_ClassifyGlobal(benchmark::State& state) {
  const ProblemParams p = global1();
  for (auto _ : state) benchmark::DoNotOptimize(classify_global(p));
}
BENCHMARK(BM_ClassifyGlobal);

void BM_WvzExponents(benchmark::State& state) {
  const Number b2 = Number::parse("1/2");
  for (auto _ : state) benchmark::DoNotOptimize(wvz_exponents(3, b2));
}
BENCHMARK(BM_WvzExponents);

// Cost grows like quad_nodes^iterations, so only the reference setting is timed.
void BM_Picard(benchmark::State& state) {
  const Field u0 = chirped_gaussian(make_radial_grid(3, 20.0, 512), 0.1);
  const PdeModel model = PdeModel::from_params(global1());
  for (auto _ : state) benchmark::DoNotOptimize(picard_solve(u0, model, 0.02, 4, 8));
}
BENCHMARK(BM_Picard)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
