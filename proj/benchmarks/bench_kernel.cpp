#include <benchmark/benchmark.h>

#include "wlab/elliptic.hpp"
#include "wlab/genus1.hpp"
#include "wlab/planes.hpp"

namespace {

using namespace wlab;

void BM_EllipticContext(benchmark::State& state) {
  const cplx tau{0.3, 1.2};
  for (auto _ : state) benchmark::DoNotOptimize(elliptic::elliptic_context(tau));
}
BENCHMARK(BM_EllipticContext);

void BM_WpSeries(benchmark::State& state) {
  const auto ctx = elliptic::elliptic_context(cplx{0.3, 1.2});
  cplx z{0.21, 0.37};
  for (auto _ : state) {
    benchmark::DoNotOptimize(elliptic::wp_all(z, ctx));
    z += 1e-9;
  }
}
BENCHMARK(BM_WpSeries);

void BM_WpTheta(benchmark::State& state) {
  const auto ctx = elliptic::elliptic_context(cplx{0.3, 1.2});
  cplx z{0.21, 0.37};
  for (auto _ : state) {
    benchmark::DoNotOptimize(elliptic::wp_theta(z, ctx));
    z += 1e-9;
  }
}
BENCHMARK(BM_WpTheta);

void BM_PeriodMatrixClosedForm(benchmark::State& state) {
  const auto ctx = elliptic::elliptic_context(cplx{0.1, 1.4});
  for (auto _ : state) benchmark::DoNotOptimize(genus1::period_matrix(ctx, 0, 1));
}
BENCHMARK(BM_PeriodMatrixClosedForm);

void BM_PeriodMatrixQuadrature(benchmark::State& state) {
  const auto ctx = elliptic::elliptic_context(cplx{0.1, 1.4});
  for (auto _ : state) benchmark::DoNotOptimize(genus1::period_matrix_check(ctx, 0, 1));
}
BENCHMARK(BM_PeriodMatrixQuadrature)->Unit(benchmark::kMillisecond);

void BM_ThetaSupNumeric(benchmark::State& state) {
  const cplx a{1.0, 1.0};
  const auto p1 = planes::q1_plane(a), p2 = planes::q2_plane(a, 0.8);
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(planes::theta_sup_numeric(p1, p2, grid));
}
BENCHMARK(BM_ThetaSupNumeric)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
