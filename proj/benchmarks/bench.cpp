#include <benchmark/benchmark.h>

#include <vector>

#include "skewdim/attractor.hpp"
#include "skewdim/dimension.hpp"
#include "skewdim/measure.hpp"
#include "skewdim/skew_system.hpp"
#include "skewdim/symbolic.hpp"

namespace {

using namespace skewdim;

SkewSystem reference_system() {
  IntervalMap base = IntervalMap::create(0.0, 1.0, 0.4, 0.6, Branch::linear(0.0, 0.4, 0.0, 1.0),
                                         Branch::linear(0.6, 1.0, 0.0, 1.0));
  MonotoneTable phi = MonotoneTable::create({{0.0, 0.5}, {0.4, 0.55}, {0.6, 0.82}, {1.0, 0.875}});
  return SkewSystem::create(base, FiberProfile::exact(phi), 0.25);
}

void BM_fiber_series(benchmark::State& state) {
  SkewSystem sys = reference_system();
  Word w = Word::parse("1221121221");
  double x = 0.37;
  for (auto _ : state) benchmark::DoNotOptimize(fiber_series(sys, x, w));
}
BENCHMARK(BM_fiber_series);

void BM_apply_Fp_closed_form(benchmark::State& state) {
  SkewSystem sys = reference_system();
  Point pt{0.1, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(apply_Fp_closed_form(sys, pt, 12));
}
BENCHMARK(BM_apply_Fp_closed_form);

void BM_build_cover(benchmark::State& state) {
  SkewSystem sys = reference_system();
  for (auto _ : state) benchmark::DoNotOptimize(build_cover(sys, 8, 101));
}
BENCHMARK(BM_build_cover)->Unit(benchmark::kMillisecond);

void BM_box_count_bands(benchmark::State& state) {
  SkewSystem sys = reference_system();
  AttractorCover cover = build_cover(sys, 8, 257);
  double eps = lambda_power(sys.lambda(), 8);
  for (auto _ : state) benchmark::DoNotOptimize(box_count_bands(cover, eps));
}
BENCHMARK(BM_box_count_bands)->Unit(benchmark::kMillisecond);

void BM_moran_dimension(benchmark::State& state) {
  std::vector<double> ratios{0.21, 0.34};
  for (auto _ : state) benchmark::DoNotOptimize(moran_dimension(ratios));
}
BENCHMARK(BM_moran_dimension);

void BM_sample_mu_l(benchmark::State& state) {
  SkewSystem lower = derive_lower(reference_system());
  Bernoulli beta = Bernoulli::create(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sample_mu_l(lower, beta, 10000, 14, 7));
}
BENCHMARK(BM_sample_mu_l)->Unit(benchmark::kMillisecond);

void BM_invariance_audit(benchmark::State& state) {
  SkewSystem lower = derive_lower(reference_system());
  EmpiricalMeasure em = sample_mu_l(lower, Bernoulli::create(0.5), 50000, 14, 7);
  for (auto _ : state) benchmark::DoNotOptimize(invariance_audit(lower, em, 1.0 / 32.0));
}
BENCHMARK(BM_invariance_audit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
