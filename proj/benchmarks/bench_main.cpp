#include <benchmark/benchmark.h>

#include "tomo/decomposition.hpp"
#include "tomo/phantom.hpp"
#include "tomo/reconstruction.hpp"
#include "tomo/tensor_transforms.hpp"

namespace {

using namespace tomo;

PhantomSpec bench_phantom(std::uint64_t seed,
                          PhantomSpec::Target target = PhantomSpec::Target::raw) {
  PhantomSpec spec;
  spec.seed = seed;
  spec.target = target;
  spec.center_radius = 1.0;
  spec.width_min = 0.30;
  spec.width_max = 0.40;
  return spec;
}

void BM_RadonForward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid grid = Grid::centered(2, n, 5.0);
  const TensorField u = gaussian_phantom(bench_phantom(1), grid, 0);
  const DirectionSet dirs = DirectionSet::half_circle(2 * n);
  const PGrid pgrid = PGrid::for_grid(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(radon_forward(u, dirs, pgrid, QuadratureSpec{0.5, 1e-7}));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_RadonForward)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond)->Complexity();

void BM_RadonInvert(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid grid = Grid::centered(2, n, 5.0);
  const TensorField u = gaussian_phantom(bench_phantom(2), grid, 0);
  const DirectionSet dirs = DirectionSet::half_circle(2 * n);
  const PGrid pgrid = PGrid::for_grid(grid);
  const Sinogram s = radon_forward(u, dirs, pgrid, QuadratureSpec{0.5, 1e-7});
  for (auto _ : state) {
    benchmark::DoNotOptimize(radon_invert(s, grid));
  }
}
BENCHMARK(BM_RadonInvert)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Trt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid grid = Grid::centered(2, n, 5.0);
  const TensorField f = gaussian_phantom(bench_phantom(3), grid, 2);
  const DirectionSet dirs = DirectionSet::half_circle(2 * n);
  const PGrid pgrid = PGrid::for_grid(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trt(f, dirs, pgrid, QuadratureSpec{0.5, 1e-7}));
  }
}
BENCHMARK(BM_Trt)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DField(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid grid = Grid::centered(2, n, 5.0);
  const TensorField f = gaussian_phantom(bench_phantom(4), grid, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(d_field(f));
  }
}
BENCHMARK(BM_DField)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SolveDeltaDk(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const Grid grid = Grid::centered(2, n, 5.0);
  TensorField h = gaussian_phantom(bench_phantom(5), grid, 1);
  for (int a = 0; a < k; ++a) h = d_field(h, kNoDecayCheck);
  for (int a = 0; a < k; ++a) h = div_field(h, kNoDecayCheck);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_delta_d_k(h, k));
  }
}
BENCHMARK(BM_SolveDeltaDk)->Args({128, 1})->Args({128, 2})->Args({256, 1})->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid grid = Grid::centered(2, n, 5.0);
  const TensorField f = gaussian_phantom(bench_phantom(6), grid, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(f));
  }
}
BENCHMARK(BM_Decompose)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
