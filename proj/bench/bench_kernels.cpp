#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "sclab/distances.hpp"
#include "sclab/gallery.hpp"
#include "sclab/kernels.hpp"

using namespace sclab;

namespace {

Exec policy(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "parallel" : "serial"); }

void BM_CellAreas(benchmark::State& st) {
  auto m = make_spheroid(0.3);
  std::vector<double> x(1 << 16);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = m.length() * static_cast<double>(i) / (x.size() - 1);
  for (auto _ : st) benchmark::DoNotOptimize(cell_areas(policy(st), m, x));
  label(st);
}

void BM_GeodesicBatch(benchmark::State& st) {
  auto m = make_two_neck();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<std::pair<SurfacePoint, SurfacePoint>> pairs;
  for (int i = 0; i < 64; ++i)
    pairs.push_back({{U(rng) * m.length(), U(rng) * 2 * kPi}, {U(rng) * m.length(), U(rng) * 2 * kPi}});
  for (auto _ : st) benchmark::DoNotOptimize(geodesic_distances(policy(st), m, pairs));
  label(st);
}

void BM_IsoScan(benchmark::State& st) {
  auto m = make_capsule(2.0);
  for (auto _ : st) benchmark::DoNotOptimize(isoperimetric_scan(m, 4096, policy(st)));
  label(st);
}

void BM_Diameter(benchmark::State& st) {
  auto m = make_spheroid(-0.2);
  for (auto _ : st) benchmark::DoNotOptimize(diameter(m, 24, policy(st)));
  label(st);
}

}  // namespace

BENCHMARK(BM_CellAreas)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GeodesicBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IsoScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Diameter)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
