#include <benchmark/benchmark.h>

#include <cmath>

#include "flocksim/agents.hpp"
#include "flocksim/dynamics.hpp"
#include "flocksim/spectral.hpp"

namespace {

using namespace flock;

FieldState make_state(int n) {
  PeriodicGrid g(n);
  return {Field::sample(g, [](double x) { return 1.0 + 0.5 * std::cos(x); }),
          Field::sample(g, [](double x) { return 0.1 * std::sin(x); }), 0.0};
}

void BM_Derivative(benchmark::State& state) {
  const Field f = make_state(static_cast<int>(state.range(0))).u;
  for (auto _ : state) benchmark::DoNotOptimize(derivative(f, 1));
}
BENCHMARK(BM_Derivative)->Arg(256)->Arg(1024);

void BM_MultiplyDealiased(benchmark::State& state) {
  const FieldState s = make_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multiply_dealiased(s.rho, s.u));
}
BENCHMARK(BM_MultiplyDealiased)->Arg(256)->Arg(1024);

void BM_FractionalLaplacian(benchmark::State& state) {
  const Field f = make_state(static_cast<int>(state.range(0))).u;
  for (auto _ : state) benchmark::DoNotOptimize(fractional_laplacian(f, 1.5));
}
BENCHMARK(BM_FractionalLaplacian)->Arg(256)->Arg(1024);

void BM_RhsBounded(benchmark::State& state) {
  const FieldState s = make_state(static_cast<int>(state.range(0)));
  const KernelContext k(KernelSpec::bounded(KernelShape::OffsetCosine, 2.0, 1.0),
                        s.rho.grid());
  for (auto _ : state) benchmark::DoNotOptimize(rhs(s, k));
}
BENCHMARK(BM_RhsBounded)->Arg(256)->Arg(1024);

void BM_RhsSingular(benchmark::State& state) {
  const FieldState s = make_state(static_cast<int>(state.range(0)));
  const KernelContext k(KernelSpec::singular(1.0), s.rho.grid());
  for (auto _ : state) benchmark::DoNotOptimize(rhs(s, k));
}
BENCHMARK(BM_RhsSingular)->Arg(256)->Arg(1024);

void BM_CsRhs(benchmark::State& state) {
  const FieldState s = make_state(256);
  const AgentState a =
      sample_agents(s.rho, s.u, static_cast<int>(state.range(0)), 7);
  const KernelSpec k = KernelSpec::bounded(KernelShape::OffsetCosine, 2.0, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(cs_rhs(a, k, CsNormalization::Mean));
}
BENCHMARK(BM_CsRhs)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
