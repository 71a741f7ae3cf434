// Serial reference vs OpenMP sweep on the same grids.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "matcoef/harness.hpp"

using namespace matcoef::harness;

namespace {

SweepConfig principal_grid() {
  SweepConfig c;
  c.family = Family::principal;
  c.s_grid = {0.5, 1.0, 2.0, 5.0};
  c.mu_range = c.nu_range = {-6, -4, -2, 0, 2, 4, 6};
  c.epsilons = {0};
  c.r_grid = {1.0, 2.0, 4.0, 8.0};
  return c;
}

SweepConfig complementary_grid() {
  SweepConfig c;
  c.family = Family::complementary;
  c.lambda_grid = {-0.35, -0.15, 0.15, 0.35};
  c.mu_range = c.nu_range = {-6, -4, -2, 0, 2, 4, 6};
  c.r_grid = {1.0, 2.0, 4.0, 8.0};
  return c;
}

SweepConfig dispersive_grid() {
  SweepConfig c;
  c.family = Family::dispersive;
  c.dims = {1, 2};
  c.t_grid = {0.0, 1.0, 5.0, 25.0};
  return c;
}

template <SweepConfig (*Make)(), Execution Ex>
void BM_sweep(benchmark::State& state) {
  const auto cfg = Make();
  std::size_t rows = 0;
  for (auto _ : state) {
    auto out = run_sweep(cfg, Ex);
    rows = out.size();
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["rows"] = static_cast<double>(rows);
  state.counters["threads"] = Ex == Execution::parallel ? omp_get_max_threads() : 1;
}

}  // namespace

BENCHMARK(BM_sweep<principal_grid, Execution::serial>)->Name("principal/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep<principal_grid, Execution::parallel>)->Name("principal/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep<complementary_grid, Execution::serial>)->Name("complementary/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep<complementary_grid, Execution::parallel>)
    ->Name("complementary/parallel")
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep<dispersive_grid, Execution::serial>)->Name("dispersive/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep<dispersive_grid, Execution::parallel>)->Name("dispersive/parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
