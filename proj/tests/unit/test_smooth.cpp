#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "convexsmooth/gauge.hpp"
#include "convexsmooth/measure.hpp"
#include "convexsmooth/smooth.hpp"
#include "fixtures.hpp"

using namespace convexsmooth;
using fixtures::vec2;

namespace {

double mu_sq(const BallBody& body, const Vec& x) {
  const double m = body_gauge_value(body, x);
  return m * m;
}

// Point on the segment from p to q where |mu_0^2 - mu_1^2| = delta.
Vec blend_boundary_point(const BallBody& body, const Vec& p, const Vec& q, double delta) {
  auto f = [&](double s) {
    const Vec x = p + s * (q - p);
    const double a = ball_gauge(body.ball(0), x), b = ball_gauge(body.ball(1), x);
    return std::abs(a * a - b * b) - delta;
  };
  double lo = 0.0, hi = 1.0;
  REQUIRE(f(lo) * f(hi) < 0.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) < 0.0) == (f(lo) < 0.0) ? lo : hi) = mid;
  }
  return p + 0.5 * (lo + hi) * (q - p);
}

}  // namespace

TEST_CASE("smooth max examples") {
  for (auto order : {BlendOrder::C11, BlendOrder::C2}) {
    const SmoothMax out = smooth_max(0.0, 1.0, 0.5, order);
    CHECK(out.value == 1.0);
    CHECK(out.weight_a == 0.0);
  }
  const SmoothMax c11 = smooth_max(1.0, 1.0, 0.5, BlendOrder::C11);
  CHECK(c11.value == doctest::Approx(1.125).epsilon(1e-15));
  CHECK(c11.weight_a == 0.5);
  const SmoothMax c2 = smooth_max(1.0, 1.0, 0.5, BlendOrder::C2);
  CHECK(c2.value == doctest::Approx(1.09375).epsilon(1e-15));
  CHECK(c2.weight_a == 0.5);
}

TEST_CASE("smooth max contact conditions at the blend edge") {
  const double delta = 0.3;
  const double inside = delta * (1.0 - 1e-12);
  for (auto order : {BlendOrder::C11, BlendOrder::C2}) {
    const SmoothMax s = smooth_max(inside, 0.0, delta, order);
    CHECK(s.value == doctest::Approx(inside).epsilon(1e-10));  // phi(delta) = delta
    CHECK(s.weight_a == doctest::Approx(1.0).epsilon(1e-10));  // phi'(delta) = 1
  }
  // phi''(delta) = 0 only for C2.
  CHECK(smooth_max(inside, 0.0, delta, BlendOrder::C2).curvature == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(smooth_max(inside, 0.0, delta, BlendOrder::C11).curvature == doctest::Approx(0.5 / delta));
}

TEST_CASE("smooth max bounds and weights") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 5000; ++k) {
    const double a = u(rng), b = u(rng), delta = 0.01 + std::abs(u(rng));
    for (auto order : {BlendOrder::C11, BlendOrder::C2}) {
      const SmoothMax s = smooth_max(a, b, delta, order);
      CHECK(s.value >= std::max(a, b));
      CHECK(s.value <= std::max(a, b) + delta / 4 + 1e-15);
      CHECK(s.weight_a >= 0.0);
      CHECK(s.weight_a <= 1.0);
      CHECK(s.curvature >= 0.0);
      if (std::abs(a - b) >= delta) CHECK(s.value == std::max(a, b));
      // weight_a is dS/da.
      const double h = 1e-7;
      const double fd = (smooth_max(a + h, b, delta, order).value - smooth_max(a - h, b, delta, order).value) / (2 * h);
      CHECK(s.weight_a == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("blended gauge construction") {
  CHECK_THROWS_AS(BlendedGauge(fixtures::lens(), 0.0, BlendOrder::C2), Error);
  CHECK_THROWS_AS(BlendedGauge(fixtures::lens(), -1.0, BlendOrder::C2), Error);
  const BlendedGauge g(BallBody(1.0, {vec2(0.1, 0), vec2(-0.2, 0.3), vec2(-0.2, -0.1), vec2(0, 0)}), 1e-3,
                       BlendOrder::C2);
  CHECK(g.fold_order() == std::vector<std::size_t>{2, 1, 3, 0});
  CHECK(g.fold_guard() == doctest::Approx(0.5));
  CHECK(BlendedGauge(fixtures::unit_ball(2), 1e-3, BlendOrder::C2).fold_guard() == 0.0);
}

TEST_CASE("single-ball blended gauge is mu^2 with its closed-form derivatives") {
  const BallBody body(1.0, {vec2(0.3, -0.2)});
  const BlendedGauge g(body, 0.1, BlendOrder::C2);
  std::mt19937_64 rng(32);
  for (int k = 0; k < 200; ++k) {
    const Vec x = fixtures::uniform_in_ball(rng, 2, 2.0);
    const BlendEval e = blended_gauge_sq(g, x);
    const GaugeEval m = ball_gauge_derivatives(body.ball(0), x);
    CHECK(e.value == m.value * m.value);
    CHECK(e.grad == 2.0 * m.value * m.grad);
    CHECK(e.hess == m.hess_sq);
    CHECK(agreement_indicator(g, x));
  }
}

TEST_CASE("blended gauge derivatives match finite differences") {
  std::mt19937_64 rng(33);
  for (auto order : {BlendOrder::C11, BlendOrder::C2}) {
    for (int trial = 0; trial < 6; ++trial) {
      const BallBody body = fixtures::random_ball_body(rng, 2 + trial % 2, 2 + trial, 1.0);
      const BlendedGauge g(body, 0.1, order);
      int blended = 0;
      for (int k = 0; k < 200; ++k) {
        const Vec x = fixtures::uniform_in_ball(rng, body.dim(), 1.5);
        if (x.norm() < 0.05) continue;
        if (!agreement_indicator(g, x)) ++blended;
        const BlendEval e = blended_gauge_sq(g, x);
        const Vec fg = fixtures::fd_gradient([&](const Vec& y) { return blended_value(g, y); }, x, 1e-6);
        CHECK((e.grad - fg).norm() <= 1e-5 * std::max(1.0, e.grad.norm()));
        const Mat fh = fixtures::fd_hessian_from_gradient(
            [&](const Vec& y) { return blended_gauge_sq(g, y).grad; }, x, 1e-7);
        // C11 Hessians jump across |a - b| = delta; skip points within the
        // difference stencil of a jump.
        if (order == BlendOrder::C11 && (e.hess - blended_gauge_sq(g, x + 1e-7 * Vec::Ones(x.size())).hess).norm() > 1e-3)
          continue;
        CHECK((e.hess - fh).norm() <= 1e-5 * std::max(1.0, e.hess.norm()));
      }
      CHECK(blended > 0);
    }
  }
}

TEST_CASE("blended gauge bounds, exactness and strong convexity") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 2 + trial % 6;
    const double R = 1.0 + trial;
    const BallBody body = fixtures::random_ball_body(rng, 2 + trial % 2, m, R);
    const double delta = 1e-2 * R * R;
    const BlendedGauge g(body, delta, trial % 2 ? BlendOrder::C11 : BlendOrder::C2);
    for (int k = 0; k < 500; ++k) {
      const Vec x = fixtures::uniform_in_ball(rng, body.dim(), 2.0 * R);
      const BlendEval e = blended_gauge_sq(g, x);
      const double base = mu_sq(body, x);
      CHECK(e.value - base >= 0.0);
      CHECK(e.value - base <= delta / 4 * (m - 1) + 1e-12 * R * R);
      CHECK(e.value == blended_value(g, x));
      if (agreement_indicator(g, x)) CHECK(e.value == base);
      CHECK(fixtures::min_eigenvalue(e.hess) >= 1.0 / (2 * R * R) - 1e-6);
    }
  }
}

TEST_CASE("two balls separated by more than delta give the exact maximum") {
  const BallBody lens = fixtures::lens();
  const BlendedGauge g(lens, 1e-3, BlendOrder::C2);
  const Vec x = vec2(0.5, 0.0);
  const double a = ball_gauge(lens.ball(0), x), b = ball_gauge(lens.ball(1), x);
  REQUIRE(std::abs(a * a - b * b) > 1e-3);
  CHECK(blended_value(g, x) == std::max(a * a, b * b));
}

TEST_CASE("fold is independent of the order of the center list") {
  std::mt19937_64 rng(35);
  const BallBody body = fixtures::random_ball_body(rng, 2, 6, 1.0);
  auto centers = body.centers();
  std::reverse(centers.begin(), centers.end());
  std::swap(centers[1], centers[4]);
  const BlendedGauge a(body, 0.05, BlendOrder::C2), b(BallBody(1.0, centers), 0.05, BlendOrder::C2);
  for (int k = 0; k < 200; ++k) {
    const Vec x = fixtures::uniform_in_ball(rng, 2, 1.5);
    CHECK(blended_value(a, x) == blended_value(b, x));
    CHECK(blended_gauge_sq(a, x).hess == blended_gauge_sq(b, x).hess);
  }
}

TEST_CASE("agreement indicator examples") {
  const BlendedGauge single(fixtures::unit_ball(2), 1e-3, BlendOrder::C2);
  CHECK(agreement_indicator(single, vec2(0.2, 0.7)));
  const BlendedGauge lens(fixtures::lens(), 1e-3, BlendOrder::C2);
  CHECK_FALSE(agreement_indicator(lens, vec2(0.0, 0.5)));
  CHECK_FALSE(agreement_indicator(lens, vec2(0.0, -1.0)));
  CHECK(agreement_indicator(lens, vec2(0.5, 0.0)));
  CHECK(agreement_indicator(lens, vec2(-0.5, 0.0)));
}

TEST_CASE("C2 blend: Hessian is continuous across the blend boundary") {
  const BallBody lens = fixtures::lens();
  for (double delta : {1e-3, 0.1}) {
    const BlendedGauge c2(lens, delta, BlendOrder::C2);
    const BlendedGauge c11(lens, delta, BlendOrder::C11);
    for (double y : {0.3, 0.6, 0.85}) {
      const Vec p = vec2(0.0, y), q = vec2(0.5, y);
      const Vec xs = blend_boundary_point(lens, p, q, delta);
      const Vec dir = vec2(1, 0);
      // The third derivative of phi is nonzero at the edge, so one-sided
      // Hessians drift apart linearly in the step; 1e-12 keeps that below 1e-4.
      CHECK(hessian_jump(c2, xs, dir, 1e-12) <= 1e-4);
      CHECK(gradient_jump(c11, xs, dir, 1e-11) <= 1e-6);
      // The C11 Hessian jumps by phi''/2 |grad a - grad b|^2 > 0 and stays bounded.
      const double jump = hessian_jump(c11, xs, dir, 1e-11);
      CHECK(jump > 1e-3);
      CHECK(jump <= 1.0 / delta * 100.0);
    }
  }
}

TEST_CASE("regular value scan") {
  const BlendedGauge single(fixtures::unit_ball(2), 1e-3, BlendOrder::C2);
  const LevelScan s = scan_regular_values(single, 0.05, 15, 256);
  CHECK(s.levels.size() == 15);
  for (double d : s.disagree_measure) CHECK(d == 0.0);
  CHECK(s.levels[s.chosen] == doctest::Approx(1.025));

  const BlendedGauge lens(fixtures::lens(), 1e-3, BlendOrder::C2);
  const LevelScan l = scan_regular_values(lens, 0.05, 64, 2048);
  for (double d : l.disagree_measure) CHECK(l.disagree_measure[l.chosen] <= d);
  for (double t : l.levels) {
    CHECK(t > 1.0);
    CHECK(t < 1.05);
  }
  const double avg = std::accumulate(l.disagree_measure.begin(), l.disagree_measure.end(), 0.0) / 64;
  CHECK(l.disagree_measure[l.chosen] <= avg);
  CHECK(select_regular_value(lens, 0.05, 64, 2048) == l.levels[l.chosen]);

  CHECK_THROWS_AS(scan_regular_values(lens, 0.25, 64, 256), Error);
  CHECK_THROWS_AS(scan_regular_values(lens, 0.0, 64, 256), Error);
  CHECK_THROWS_AS(scan_regular_values(lens, 0.05, 4, 256), Error);
}

TEST_CASE("extract smoothed body") {
  SmoothingOptions opt;
  opt.delta = 1e-3;
  opt.resolution = 2048;

  const SmoothedBody single = extract_smoothed_body(fixtures::unit_ball(2), opt);
  CHECK(single.checks.contained);
  CHECK(single.checks.tube_ok);
  CHECK(single.checks.ridge_measure == 0.0);
  const BoundaryMesh wm = boundary_mesh(fixtures::unit_ball(2), 2048);
  const BoundaryMesh sm = boundary_mesh(single, 2048);
  CHECK(symmetric_difference_measure(wm, sm, 1e-10) == 0.0);

  const BallBody lens = fixtures::lens();
  const SmoothedBody sb = extract_smoothed_body(lens, opt);
  CHECK(sb.t0 > 1.0);
  CHECK(sb.t0 < 1.05);
  CHECK(sb.checks.contained);
  CHECK(sb.checks.tube_ok);
  const BoundaryMesh lw = boundary_mesh(lens, 2048);
  const BoundaryMesh ls = boundary_mesh(sb, 2048);
  CHECK(symmetric_difference_measure(lw, ls, 1e-10) < 0.05 * hausdorff_measure(lw));

  std::mt19937_64 rng(36);
  int inside = 0;
  for (int k = 0; k < 10000; ++k) {
    const Vec x = fixtures::uniform_in_ball(rng, 2, 1.0);
    if (!sb.contains(x)) continue;
    ++inside;
    CHECK(contains(lens, x));
  }
  CHECK(inside > 1000);

  // Boundary coincidence: where the indicator holds at t0 x, x lies on both boundaries.
  int agreed = 0;
  for (std::size_t i = 0; i < ls.radii.size(); i += 7) {
    const Vec x = ls.vertex(i);
    if (!agreement_indicator(sb.gauge, sb.t0 * x)) continue;
    ++agreed;
    CHECK(body_gauge_value(lens, x) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(agreed > 0);

  opt.epsilon = 0.3;
  CHECK_THROWS_AS(extract_smoothed_body(lens, opt), Error);
  opt.epsilon = 0.05;
  opt.delta = 0.2;
  try {
    extract_smoothed_body(lens, opt);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShrinkDelta);
  }
}
