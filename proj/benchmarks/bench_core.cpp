#include <benchmark/benchmark.h>

#include <cmath>

#include "torusflow/diagnostics.hpp"
#include "torusflow/operators.hpp"
#include "torusflow/stepper.hpp"

using namespace torusflow;

namespace {

GraphState annulus_state(int n) {
  GraphState s(build_grid_1d(make_interval_profile(1.0, 2.0), n));
  for (int j = 0; j < n; ++j)
    s.u[j] = 2.0 * M_PI * std::cos(M_PI * (s.grid->r[j] - 1.0));
  apply_neumann(s);
  return s;
}

GraphState torus_state(int ns) {
  GraphState s(build_grid(make_circle_profile({0.0, 2.0}, 0.5), ns, ns));
  const DomainGrid& g = *s.grid;
  for (int j = 0; j < g.ns; ++j) {
    const double sj = (j + 0.5) * g.ds;
    for (int k = 0; k < g.nphi; ++k)
      s.u[g.idx(j, k)] = 4.0 * (1.0 + std::cos(M_PI * sj));
  }
  apply_neumann(s);
  return s;
}

}  // namespace

static void BM_FlowRhs1D(benchmark::State& state) {
  GraphState s = annulus_state(int(state.range(0)));
  std::vector<double> out;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flow_rhs_into(s, out));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FlowRhs1D)->Arg(129)->Arg(1025);

static void BM_FlowRhs2D(benchmark::State& state) {
  GraphState s = torus_state(int(state.range(0)));
  std::vector<double> out;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flow_rhs_into(s, out));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * s.grid->size());
}
BENCHMARK(BM_FlowRhs2D)->Arg(32)->Arg(64)->Arg(128);

static void BM_ApplyNeumann2D(benchmark::State& state) {
  GraphState s = torus_state(int(state.range(0)));
  for (auto _ : state) {
    apply_neumann(s);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ApplyNeumann2D)->Arg(64);

static void BM_EulerStep2D(benchmark::State& state) {
  GraphState s = torus_state(int(state.range(0)));
  StepperConfig cfg;
  const double dt = cfl_dt(s, cfg);
  for (auto _ : state) {
    step_once(s, cfg, dt);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * s.grid->size());
}
BENCHMARK(BM_EulerStep2D)->Arg(64)->Arg(128);

static void BM_FilterIncrement(benchmark::State& state) {
  GraphState s = torus_state(int(state.range(0)));
  std::vector<double> inc(s.grid->size(), 0.1);
  for (auto _ : state) {
    filter_increment(*s.grid, inc);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_FilterIncrement)->Arg(64)->Arg(128);

static void BM_Sample2D(benchmark::State& state) {
  GraphState s = torus_state(64);
  const std::vector<double> ks = {0.5, 1.0, 2.0, 3.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(s, ks));
  }
}
BENCHMARK(BM_Sample2D);

BENCHMARK_MAIN();
