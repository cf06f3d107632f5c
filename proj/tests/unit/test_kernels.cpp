#include <doctest.h>

#include <cstdlib>
#include <random>

#include "convexsmooth/kernels.hpp"
#include "fixtures.hpp"

using namespace convexsmooth;
using kernels::Exec;

TEST_CASE("pair minimum: serial reference equals parallel") {
  std::mt19937_64 rng(71);
  std::vector<Vec> pts;
  for (int k = 0; k < 700; ++k) pts.push_back(fixtures::uniform_in_ball(rng, 3, 1.0));
  auto margin = [&](std::size_t i, std::size_t j) { return pts[i].dot(pts[j]) - 0.1 * pts[i](0); };
  const auto s = kernels::min_over_pairs(pts.size(), pts.size(), margin, true, Exec::Serial);
  const auto p = kernels::min_over_pairs(pts.size(), pts.size(), margin, true, Exec::Parallel);
  CHECK(s.value == p.value);
  CHECK(s.first == p.first);
  CHECK(s.second == p.second);

  double brute = 1e300;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (i != j) brute = std::min(brute, margin(i, j));
  CHECK(s.value == brute);
}

TEST_CASE("ties keep the lexicographically first pair") {
  const auto r = kernels::min_over_pairs(5, 5, [](std::size_t, std::size_t) { return 1.0; }, true);
  CHECK(r.first == 0);
  CHECK(r.second == 1);
  const auto m = kernels::max_over_indices(6, [](std::size_t i) { return i % 3 == 2 ? 5.0 : 1.0; });
  CHECK(m.first == 2);
  CHECK(m.value == 5.0);
}

TEST_CASE("max pairwise distance") {
  std::vector<Vec> pts = {fixtures::vec2(0, 0), fixtures::vec2(3, 4), fixtures::vec2(1, 1)};
  const auto d = kernels::max_pairwise_distance(pts);
  CHECK(d.value == 5.0);
  CHECK(d.first == 0);
  CHECK(d.second == 1);
  CHECK(kernels::max_pairwise_distance({fixtures::vec2(1, 1)}).value == 0.0);

  std::mt19937_64 rng(72);
  std::vector<Vec> cloud;
  for (int k = 0; k < 900; ++k) cloud.push_back(fixtures::uniform_in_ball(rng, 2, 1.0));
  CHECK(kernels::max_pairwise_distance(cloud, Exec::Serial).value ==
        kernels::max_pairwise_distance(cloud, Exec::Parallel).value);
}

TEST_CASE("for_each_index visits every index once") {
  std::vector<int> hits(10007, 0);
  kernels::for_each_index(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("thread cap from the environment") {
  setenv("CONVEXSMOOTH_THREADS", "1", 1);
  kernels::apply_thread_cap();
  CHECK(kernels::thread_count() == 1);
  unsetenv("CONVEXSMOOTH_THREADS");
}
