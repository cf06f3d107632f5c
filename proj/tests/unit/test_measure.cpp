#include <doctest.h>

#include <numbers>
#include <random>

#include "convexsmooth/gauge.hpp"
#include "convexsmooth/measure.hpp"
#include "fixtures.hpp"

using namespace convexsmooth;
using fixtures::vec2;
using kernels::Exec;

constexpr double kPi = std::numbers::pi;

TEST_CASE("ray crossing") {
  const BallBody unit = fixtures::unit_ball(2);
  auto mu = [](const BallBody& b) { return [b](const Vec& x) { return body_gauge_value(b, x); }; };
  CHECK(ray_crossing(mu(unit), vec2(1, 0), 1.0, 20.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ray_crossing(mu(fixtures::lens()), vec2(1, 0), 1.0, 20.0) == doctest::Approx(0.5).epsilon(1e-15));

  const BlendedGauge g(fixtures::unit_ball(3), 1e-3, BlendOrder::C2);
  const double t0 = 1.0123;
  const Vec u = Vec::Ones(3).normalized();
  CHECK(ray_crossing([&](const Vec& x) { return blended_value(g, x); }, u, t0 * t0, 20.0) ==
        doctest::Approx(t0).epsilon(1e-14));

  // Residual at the returned radius is at machine level.
  const double r = ray_crossing([](double s) { return s * s * s; }, 2.0, 10.0);
  CHECK(std::abs(r * r * r - 2.0) <= 1e-12 * 2.0);

  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code([] { ray_crossing([](double s) { return s; }, 5.0, 2.0); }) == ErrorCode::BracketFailure);
  CHECK(code([] { ray_crossing([](double) { return 1.0; }, 0.5, 2.0); }) == ErrorCode::BracketFailure);
}

TEST_CASE("mesh grid resolution limits") {
  CHECK_THROWS_AS(mesh_grid(2, 15), Error);
  CHECK_THROWS_AS(mesh_grid(3, 1), Error);
  CHECK_THROWS_AS(mesh_grid(4, 3), Error);
  CHECK(mesh_grid(2, 16).directions.size() == 16);
}

TEST_CASE("circle and sphere measures") {
  const BoundaryMesh circle = boundary_mesh(fixtures::unit_ball(2), 360);
  CHECK(std::abs(hausdorff_measure(circle) - 2 * kPi) <= 1e-3);
  // Inscribed polygon: 2 N sin(pi / N).
  CHECK(hausdorff_measure(circle) == doctest::Approx(720.0 * std::sin(kPi / 360.0)).epsilon(1e-13));
  for (double r : circle.radii) CHECK(r == doctest::Approx(1.0).epsilon(1e-15));

  const BoundaryMesh sphere = boundary_mesh(fixtures::unit_ball(3), 4);
  CHECK(std::abs(hausdorff_measure(sphere) - 4 * kPi) <= 0.01 * 4 * kPi);
  CHECK(sphere.radii.size() == 2562);
  CHECK(sphere.facets.size() == 5120);
}

TEST_CASE("halfspace body mesh") {
  const BoundaryMesh sq = boundary_mesh(fixtures::unit_square(), 400);
  CHECK(hausdorff_measure(sq) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("measure convergence is second order") {
  const BallBody circle = fixtures::unit_ball(2);
  for (int n : {64, 128, 256, 512}) {
    const double e1 = 2 * kPi - hausdorff_measure(boundary_mesh(circle, n));
    const double e2 = 2 * kPi - hausdorff_measure(boundary_mesh(circle, 2 * n));
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
  }
  const BallBody sphere = fixtures::unit_ball(3);
  for (int level : {3, 4}) {
    const double e1 = 4 * kPi - hausdorff_measure(boundary_mesh(sphere, level));
    const double e2 = 4 * kPi - hausdorff_measure(boundary_mesh(sphere, level + 1));
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
  }
}

TEST_CASE("facet filters partition the boundary") {
  const BlendedGauge g(fixtures::lens(), 0.05, BlendOrder::C2);
  const BoundaryMesh m = level_set_mesh(g, 1.01, 1000);
  const double all = hausdorff_measure(m, FacetFilter::All);
  const double agree = hausdorff_measure(m, FacetFilter::Agree);
  const double disagree = hausdorff_measure(m, FacetFilter::Disagree);
  CHECK(disagree > 0.0);
  CHECK(agree > 0.0);
  CHECK(all == doctest::Approx(agree + disagree).epsilon(1e-14));
}

TEST_CASE("smoothed single ball reproduces the ball mesh") {
  const BallBody ball = fixtures::unit_ball(2);
  const SmoothedBody sb{BlendedGauge(ball, 1e-3, BlendOrder::C2), 1.03, {}};
  const BoundaryMesh m = boundary_mesh(sb, 500);
  for (double r : m.radii) CHECK(r == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hausdorff_measure(m, FacetFilter::Disagree) == 0.0);
  for (int res : {64, 500, 2048}) {
    const SmoothedBody s{BlendedGauge(ball, 1e-3, BlendOrder::C2), 1.02, {}};
    CHECK(symmetric_difference_measure(boundary_mesh(ball, res), boundary_mesh(s, res), 1e-10) == 0.0);
  }
}

TEST_CASE("agreement-flagged facets coincide with the body boundary") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    const int dim = 2 + trial % 2;
    const BallBody body = fixtures::random_ball_body(rng, dim, 4, 1.0);
    const SmoothedBody sb{BlendedGauge(body, 1e-3, BlendOrder::C2), 1.02, {}};
    const int res = dim == 2 ? 3000 : 4;
    const BoundaryMesh w = boundary_mesh(body, res);
    const BoundaryMesh we = boundary_mesh(sb, res);
    for (std::size_t f = 0; f < we.facets.size(); ++f) {
      if (!we.agreement[f]) continue;
      for (int k = 0; k < dim; ++k) {
        const int v = we.facets[f][k];
        CHECK(std::abs(we.radii[v] - w.radii[v]) <= 1e-12 * w.radii[v]);
      }
    }
  }
}

TEST_CASE("symmetric difference") {
  const BoundaryMesh a = boundary_mesh(fixtures::unit_ball(2), 1000);
  CHECK(symmetric_difference_measure(a, a, 1e-10) == 0.0);
  const BoundaryMesh b = boundary_mesh(BallBody(0.9, {Vec::Zero(2)}), 1000);
  CHECK(symmetric_difference_measure(a, b, 1e-10) == doctest::Approx(2 * kPi * 1.9).epsilon(1e-4));
  const SymmetricDifference sd = symmetric_difference(a, b, 1e-10);
  CHECK(sd.facets == 1000);
  CHECK(sd.by_flag == 0.0);
  CHECK(sd.by_radius == sd.measure);

  CHECK_THROWS_AS(symmetric_difference(a, boundary_mesh(fixtures::unit_ball(2), 999), 1e-10), Error);
  CHECK_THROWS_AS(symmetric_difference(a, boundary_mesh(fixtures::unit_ball(3), 2), 1e-10), Error);
}

TEST_CASE("serial and parallel meshing are bit-identical") {
  std::mt19937_64 rng(42);
  const BallBody body = fixtures::random_ball_body(rng, 2, 5, 1.0);
  const BoundaryMesh s = boundary_mesh(body, 3000, Exec::Serial);
  const BoundaryMesh p = boundary_mesh(body, 3000, Exec::Parallel);
  CHECK(s.radii == p.radii);
  const BlendedGauge g(body, 1e-3, BlendOrder::C2);
  const BoundaryMesh ls = level_set_mesh(g, 1.02, 3000, Exec::Serial);
  const BoundaryMesh lp = level_set_mesh(g, 1.02, 3000, Exec::Parallel);
  CHECK(ls.radii == lp.radii);
  CHECK(ls.agreement == lp.agreement);
}
