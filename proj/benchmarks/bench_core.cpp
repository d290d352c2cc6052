#include <coarse/coarse.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace coarse;

namespace {

Length cantor_radius(int k) { return 2.0 * (std::ldexp(1.0, k) - 1); }

FiniteMetricSpace random_space(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 100);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) p = {std::round(u(rng)), std::round(u(rng))};
  std::vector<std::vector<Length>> rows(n, std::vector<Length>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows[i][j] = std::max(std::abs(pts[i].first - pts[j].first), std::abs(pts[i].second - pts[j].second));
      if (i != j && rows[i][j] == 0) rows[i][j] = 1;
    }
  }
  // l-infinity with duplicates pushed to distance 1 can break the triangle
  // inequality; close it up.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = std::min(rows[i][j], rows[i][k] + rows[k][j]);
    }
  }
  std::vector<PointId> ids(n);
  std::iota(ids.begin(), ids.end(), PointId{0});
  return FiniteMetricSpace::from_matrix(ids, 0, rows);
}

void BM_ValidateMetric(benchmark::State& state) {
  auto t = integer_line(static_cast<Length>(state.range(0)));
  auto s = t->truncation(t->declared_radii().back());
  for (auto _ : state) benchmark::DoNotOptimize(validate_metric(*s));
  state.SetComplexityN(static_cast<std::int64_t>(s->size()));
}
BENCHMARK(BM_ValidateMetric)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNCubed);

void BM_EnumerateWindows(benchmark::State& state) {
  auto f = cantor_map(12);
  const auto view = make_image_view(*f, cantor_radius(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_windows(*view.image, 8));
}
BENCHMARK(BM_EnumerateWindows)->DenseRange(8, 12, 2)->Unit(benchmark::kMicrosecond);

void BM_NToOneThreshold(benchmark::State& state) {
  auto f = cantor_map(12);
  const Length r = cantor_radius(static_cast<int>(state.range(0)));
  NToOneOptions opts;
  opts.keep_certificates = false;
  for (auto _ : state) benchmark::DoNotOptimize(n_to_1_threshold(*f, 2, 8, r, opts));
}
BENCHMARK(BM_NToOneThreshold)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

void BM_ControlExact(benchmark::State& state) {
  const auto s = random_space(static_cast<std::size_t>(state.range(0)), 17);
  for (auto _ : state) benchmark::DoNotOptimize(control_exact(s, 1, 10));
}
BENCHMARK(BM_ControlExact)->DenseRange(10, 30, 10)->Unit(benchmark::kMillisecond);

void BM_ControlUpperLayered(benchmark::State& state) {
  auto t = half_line(static_cast<Length>(state.range(0)));
  auto s = t->truncation(t->declared_radii().back());
  for (auto _ : state) benchmark::DoNotOptimize(control_upper(*s, 1, 4, UpperStrategy::kLayered));
}
BENCHMARK(BM_ControlUpperLayered)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMicrosecond);

void BM_WitnessSearchCantorPair(benchmark::State& state) {
  auto f = cantor_map(10);
  for (auto _ : state) benchmark::DoNotOptimize(witness_search(*f, 2));
}
BENCHMARK(BM_WitnessSearchCantorPair)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
