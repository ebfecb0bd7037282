// Microbenchmarks for the hot evaluation paths: support queries, the two
// directional-diameter routes, the planar point-diameter field, and the
// pair-verification loop.

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "widthfn/body.hpp"
#include "widthfn/harness.hpp"
#include "widthfn/metrics.hpp"
#include "widthfn/point_diameter.hpp"
#include "widthfn/sphere.hpp"

using namespace widthfn;

namespace {

constexpr double kPi = std::numbers::pi;

Polytope random_polygon(std::uint64_t seed, int verts) {
  CounterRng r0(seed, 0);
  double a = 0.7 + 0.8 * r0.next_unit();
  double b = 0.7 + 0.8 * r0.next_unit();
  double phi = 2.0 * kPi * r0.next_unit();
  std::vector<Vec> vs;
  for (int k = 0; k < verts; ++k) {
    CounterRng r(seed, static_cast<std::uint64_t>(k) + 1);
    double th = 2.0 * kPi * (k + 0.8 * r.next_unit()) / verts;
    double x = a * std::cos(th), y = b * std::sin(th);
    vs.push_back(Vec{x * std::cos(phi) - y * std::sin(phi),
                     x * std::sin(phi) + y * std::cos(phi)});
  }
  return Polytope(std::move(vs));
}

void bm_support_polygon(benchmark::State& state) {
  Body body(random_polygon(1, static_cast<int>(state.range(0))));
  auto dirs = sample_directions(2, 512, 7);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(support(body, dirs[i++ & 511]));
  }
}
BENCHMARK(bm_support_polygon)->Arg(8)->Arg(32)->Arg(128);

void bm_width_polygon(benchmark::State& state) {
  Body body(random_polygon(2, static_cast<int>(state.range(0))));
  auto dirs = sample_directions(2, 512, 8);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(width(body, dirs[i++ & 511]));
  }
}
BENCHMARK(bm_width_polygon)->Arg(8)->Arg(32)->Arg(128);

void bm_dir_diameter_rayshoot(benchmark::State& state) {
  Body body(random_polygon(3, static_cast<int>(state.range(0))));
  auto dirs = sample_directions(2, 512, 9);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dir_diameter(body, dirs[i++ & 511]));
  }
}
BENCHMARK(bm_dir_diameter_rayshoot)->Arg(8)->Arg(32)->Arg(128);

void bm_dir_diameter_lp(benchmark::State& state) {
  Polytope poly = random_polygon(3, static_cast<int>(state.range(0)));
  auto dirs = sample_directions(2, 512, 9);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dir_diameter_lp(poly, dirs[i++ & 511]));
  }
}
BENCHMARK(bm_dir_diameter_lp)->Arg(8)->Arg(32);

void bm_profile_direction(benchmark::State& state) {
  Body body(random_polygon(4, 16));
  auto dirs = sample_directions(2, 512, 10);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(profile_direction(body, dirs[i++ & 511]));
  }
}
BENCHMARK(bm_profile_direction);

void bm_e_of_exact(benchmark::State& state) {
  Body body(random_polygon(5, static_cast<int>(state.range(0))));
  CounterRng r(99, 0);
  std::vector<Vec> pivots;
  for (int j = 0; j < 64; ++j)
    pivots.push_back(Vec{4.0 * r.next_unit() - 2.0, 4.0 * r.next_unit() - 2.0});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e_of(body, pivots[i++ & 63]));
  }
}
BENCHMARK(bm_e_of_exact)->Arg(8)->Arg(32);

void bm_e_of_sweep(benchmark::State& state) {
  Body body(Ellipsoid({2, 1}));  // smooth body takes the sweep path
  CounterRng r(100, 0);
  std::vector<Vec> pivots;
  for (int j = 0; j < 64; ++j)
    pivots.push_back(Vec{4.0 * r.next_unit() - 2.0, 2.0 * r.next_unit() - 1.0});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e_of(body, pivots[i++ & 63]));
  }
}
BENCHMARK(bm_e_of_sweep);

void bm_verify_pairs(benchmark::State& state) {
  Body body(random_polygon(6, 16));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_bounds(body, 1000, 42));
  }
}
BENCHMARK(bm_verify_pairs)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
