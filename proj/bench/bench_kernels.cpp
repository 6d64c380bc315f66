// Kernel benchmark: serial reference vs OpenMP implementations of the
// raster pipeline, plus end-to-end Monte Carlo sample throughput.

#include <chrono>
#include <cstdio>
#include <cmath>

#include <omp.h>

#include "loophull/bridge.hpp"
#include "loophull/experiments.hpp"
#include "loophull/hull.hpp"

using namespace loophull;

namespace {

template <typename Fn>
double time_best_ms(Fn&& fn, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %9.2f ms   openmp %9.2f ms   speedup %5.2fx\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  const BridgeSpec spec{1 << 16, 20260810, PathKind::gaussian_bridge};
  const LoopPath path = sample_gaussian_bridge(spec);
  const GridSpec grid = make_grid_for_path(path, 256.0, 0.05);
  std::printf("bridge N=%d, grid %dx%d (h=%.5f)\n", path.steps(), grid.nx,
              grid.ny, grid.cell_size);

  CellMask blocked;
  report("rasterize_path",
         time_best_ms([&] { blocked = serial::rasterize_path(path, grid); }),
         time_best_ms([&] { blocked = rasterize_path(path, grid); }));

  CellMask outside;
  report("flood_fill_outside",
         time_best_ms([&] { outside = serial::flood_fill_outside(blocked, grid); }),
         time_best_ms([&] { outside = flood_fill_outside(blocked, grid); }));

  WindingField field;
  report("winding_field",
         time_best_ms([&] { field = serial::winding_field(path, grid, blocked); }),
         time_best_ms([&] { field = winding_field(path, grid, blocked); }));

  ExperimentConfig cfg;
  cfg.samples = 64;
  cfg.steps = 1 << 14;
  cfg.cells_per_unit = 256.0;
  cfg.master_seed = 7;
  cfg.threads = 1;
  const double one = time_best_ms([&] { run_area_experiment(cfg); }, 2);
  cfg.threads = 0;
  const double all = time_best_ms([&] { run_area_experiment(cfg); }, 2);
  std::printf("%-28s 1 thread %8.2f ms   %2d threads %8.2f ms   speedup %5.2fx\n",
              "area experiment (64x2^14)", one, omp_get_max_threads(), all,
              one / all);

  std::printf("sample throughput: %.1f samples/s (all threads)\n",
              64.0 / (all / 1000.0));
  return 0;
}
