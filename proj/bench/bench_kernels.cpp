// Parallel kernels against their serial references.

#include "tancascade/cascade.hpp"
#include "tancascade/render.hpp"

#include <benchmark/benchmark.h>

using namespace tancascade;

namespace {

RenderConfig small_plane() {
  auto cfg = RenderConfig::plane_defaults();
  cfg.width = 128;
  cfg.height = 128;
  return cfg;
}

RenderConfig small_diagram() {
  auto cfg = RenderConfig::diagram_defaults();
  cfg.width = 256;
  cfg.height = 256;
  return cfg;
}

std::vector<double> phi_ts() {
  std::vector<double> ts;
  for (int i = 0; i < 4096; ++i) ts.push_back(3.0 + 0.09 * i / 4095.0);
  return ts;
}

void BM_plane_parallel(benchmark::State& s) {
  auto cfg = small_plane();
  for (auto _ : s) benchmark::DoNotOptimize(plane_periods(cfg));
}

void BM_plane_serial(benchmark::State& s) {
  auto cfg = small_plane();
  for (auto _ : s) benchmark::DoNotOptimize(plane_periods_serial(cfg));
}

void BM_diagram_parallel(benchmark::State& s) {
  auto cfg = small_diagram();
  for (auto _ : s) benchmark::DoNotOptimize(render_orbit_diagram(cfg));
}

void BM_diagram_serial(benchmark::State& s) {
  auto cfg = small_diagram();
  for (auto _ : s) benchmark::DoNotOptimize(render_orbit_diagram_serial(cfg));
}

void BM_phi_grid_parallel(benchmark::State& s) {
  auto ts = phi_ts();
  for (auto _ : s) benchmark::DoNotOptimize(phi_grid(4, ts));
}

void BM_phi_grid_serial(benchmark::State& s) {
  auto ts = phi_ts();
  for (auto _ : s) benchmark::DoNotOptimize(phi_grid_serial(4, ts));
}

}  // namespace

BENCHMARK(BM_plane_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_plane_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_diagram_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_diagram_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_phi_grid_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_phi_grid_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
