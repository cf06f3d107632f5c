// Serial vs OpenMP timings for the data-parallel kernels.
#include <chrono>
#include <cstdio>
#include <random>

#include "convexsmooth/core.hpp"
#include "convexsmooth/kernels.hpp"
#include "convexsmooth/measure.hpp"
#include "convexsmooth/smooth.hpp"

namespace cs = convexsmooth;
using cs::kernels::Exec;

template <class Fn>
double seconds(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class Fn>
void compare(const char* name, Fn&& fn) {
  const double s = seconds([&] { fn(Exec::Serial); });
  const double p = seconds([&] { fn(Exec::Parallel); });
  std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2f\n", name, s, p, s / p);
}

int main() {
  cs::kernels::apply_thread_cap();
  std::printf("threads: %d\n", cs::kernels::thread_count());

  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd(0.0, 0.3);
  std::vector<cs::Vec> centers;
  for (int i = 0; i < 6; ++i) centers.push_back(cs::Vec::NullaryExpr(2, [&](Eigen::Index) { return nd(rng); }));
  const cs::BallBody body(1.0, centers);
  const cs::BlendedGauge gauge(body, 1e-3, cs::BlendOrder::C2);

  std::vector<cs::Vec> pts;
  for (int i = 0; i < 3000; ++i) pts.push_back(cs::Vec::NullaryExpr(3, [&](Eigen::Index) { return nd(rng); }));

  volatile double sink = 0.0;
  compare("boundary_mesh 2D (1e5)", [&](Exec e) { sink = cs::boundary_mesh(body, 100000, e).radii[0]; });
  compare("level_set_mesh 2D (1e5)", [&](Exec e) { sink = cs::level_set_mesh(gauge, 1.02, 100000, e).radii[0]; });
  compare("max_pairwise_distance (3000)", [&](Exec e) { sink = cs::kernels::max_pairwise_distance(pts, e).value; });
  compare("min_over_pairs (3000^2)", [&](Exec e) {
    sink = cs::kernels::min_over_pairs(
               pts.size(), pts.size(), [&](std::size_t i, std::size_t j) { return pts[i].dot(pts[j]); }, true, e)
               .value;
  });
  (void)sink;
  return 0;
}
