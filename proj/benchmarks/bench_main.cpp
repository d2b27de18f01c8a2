#include <benchmark/benchmark.h>

#include "gkritz/eigensolver.hpp"
#include "gkritz/hamiltonian.hpp"
#include "gkritz/optimizer.hpp"
#include "gkritz/oracle.hpp"

namespace {

const gkritz::PotentialSpec kSpiked{1.0, {{0.1, 4.0}}, 3, 0};
const gkritz::PotentialSpec kMixed{1.0, {{1.0, 4.0}, {1000.0, 6.0}}, 3, 0};

void BM_Assemble(benchmark::State& state) {
  const gkritz::ModelParams p(20.0, 3.0);
  const int D = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gkritz::assemble(p, kMixed, D));
}
BENCHMARK(BM_Assemble)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_Eigen(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0));
  const auto H = gkritz::assemble(gkritz::ModelParams(20.0, 3.0), kMixed, D);
  for (auto _ : state) benchmark::DoNotOptimize(gkritz::eigen_symmetric(H, 1));
}
BENCHMARK(BM_Eigen)->Arg(10)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_MinimizeBound(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gkritz::minimize_bound(kSpiked, D, 0));
}
BENCHMARK(BM_MinimizeBound)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gkritz::shoot_eigenvalue(kMixed, 0, 1e-9));
}
BENCHMARK(BM_Oracle)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
