#include <benchmark/benchmark.h>

#include <filesystem>

#include "wlab/classification.hpp"
#include "wlab/cover.hpp"
#include "wlab/genus1.hpp"
#include "wlab/report.hpp"

namespace {

using namespace wlab;

// The full scan, tau = 1/2 + ci for c up to 8 plus the imaginary axis.
void BM_HolomorphicityScan(benchmark::State& state) {
  const genus1::ScanSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(genus1::verify_holomorphicity(spec));
}
BENCHMARK(BM_HolomorphicityScan)->Unit(benchmark::kMillisecond);

void BM_Nonexistence(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cover::nonexistence(g));
}
BENCHMARK(BM_Nonexistence)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_CollapsedIntegrals(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cover::collapsed_integrals(g));
}
BENCHMARK(BM_CollapsedIntegrals)->Arg(2)->Arg(8);

void BM_Curve12Suite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classification::curve12_suite({}));
}
BENCHMARK(BM_Curve12Suite)->Unit(benchmark::kMillisecond);

void BM_MeshCatenoid(benchmark::State& state) {
  report::MeshOptions opts;
  opts.kind = report::MeshKind::catenoid;
  opts.path = (std::filesystem::temp_directory_path() / "wlab_bench.ply").string();
  opts.nu = static_cast<int>(state.range(0));
  opts.nv = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(report::mesh_report(opts, {}));
  std::filesystem::remove(opts.path);
}
BENCHMARK(BM_MeshCatenoid)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
