// Serial reference loops against their OpenMP counterparts. Run with
// SZEGO_THREADS=<n> to fix the pool size.

#include <benchmark/benchmark.h>

#include "szego/disk.hpp"
#include "szego/flow.hpp"
#include "szego/parallel.hpp"

namespace {

szego::HardyRational two_pole() {
  using szego::Complex;
  using szego::PoleSum;
  return szego::HardyRational(PoleSum::monomial(Complex(1.0, -1.0), 1, Complex(1.0, 0.5)) +
                              PoleSum::monomial(Complex(-1.0, -1.5), 1, 0.7));
}

std::vector<double> grid(int n) {
  std::vector<double> xs(n);
  for (int k = 0; k < n; ++k) xs[k] = -10.0 + 20.0 * k / (n - 1);
  return xs;
}

void BM_FlowGridSerial(benchmark::State& state) {
  const szego::FlowSolver solver(two_pole(), 1.0);
  const auto xs = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(szego::flow_grid_serial(solver, xs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FlowGridParallel(benchmark::State& state) {
  const szego::FlowSolver solver(two_pole(), 1.0);
  const auto xs = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(szego::flow_grid(solver, xs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = szego::max_threads();
}

void BM_DiskRhsSerial(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  const szego::DiskCoeffs f = szego::to_disk(two_pole(), modes);
  const szego::DiskRhs rhs(modes, 4);
  szego::DiskCoeffs out(modes);
  for (auto _ : state) benchmark::DoNotOptimize(rhs.serial(f, out));
}

void BM_DiskRhsParallel(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  const szego::DiskCoeffs f = szego::to_disk(two_pole(), modes);
  const szego::DiskRhs rhs(modes, 4);
  szego::DiskCoeffs out(modes);
  for (auto _ : state) benchmark::DoNotOptimize(rhs(f, out));
  state.counters["threads"] = szego::max_threads();
}

}  // namespace

BENCHMARK(BM_FlowGridSerial)->Arg(201)->Arg(4001);
BENCHMARK(BM_FlowGridParallel)->Arg(201)->Arg(4001);
BENCHMARK(BM_DiskRhsSerial)->Arg(512)->Arg(4096);
BENCHMARK(BM_DiskRhsParallel)->Arg(512)->Arg(4096);

int main(int argc, char** argv) {
  szego::configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
