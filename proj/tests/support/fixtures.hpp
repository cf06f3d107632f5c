#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls into the library's closed forms: gauges come from bisection on ball
// membership, derivatives from central differences, projections from grids.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "convexsmooth/core.hpp"

namespace fixtures {

using convexsmooth::BallBody;
using convexsmooth::HalfspaceBody;
using convexsmooth::Mat;
using convexsmooth::Vec;

inline Vec vec2(double x, double y) { return (Vec(2) << x, y).finished(); }
inline Vec vec3(double x, double y, double z) { return (Vec(3) << x, y, z).finished(); }

inline BallBody unit_ball(int dim) { return BallBody(1.0, {Vec::Zero(dim)}); }
inline BallBody lens() { return BallBody(1.0, {vec2(0.5, 0.0), vec2(-0.5, 0.0)}); }
inline HalfspaceBody unit_square() { return HalfspaceBody::box(2, 0.5); }

inline Vec uniform_in_ball(std::mt19937_64& rng, int dim, double radius) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = nd(rng);
  return v.normalized() * radius * std::pow(ud(rng), 1.0 / dim);
}

inline Vec random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = nd(rng);
  return v.normalized();
}

/// m centers uniform in B(0, spread * R): the origin stays interior and the
/// balls overlap substantially.
inline BallBody random_ball_body(std::mt19937_64& rng, int dim, int m, double R, double spread = 0.5) {
  std::vector<Vec> centers;
  for (int i = 0; i < m; ++i) centers.push_back(uniform_in_ball(rng, dim, spread * R));
  return BallBody(R, centers);
}

/// mu_W(x) by bisection on lambda with the membership test |x/lambda - a_i| <= R.
inline double bisection_gauge(const BallBody& body, const Vec& x) {
  if (x.norm() == 0.0) return 0.0;
  auto inside = [&](double lam) {
    for (const auto& a : body.centers())
      if ((x / lam - a).norm() > body.radius()) return false;
    return true;
  };
  double lo = 0.0, hi = 1.0;
  while (!inside(hi)) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0) break;
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vec e = Vec::Zero(x.size());
    e(i) = h;
    g(i) = (f(x + e) - f(x - e)) / (2.0 * h);
  }
  return g;
}

inline Mat fd_hessian(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
  const auto n = x.size();
  Mat H(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Vec ei = Vec::Zero(n), ej = Vec::Zero(n);
      ei(i) = h;
      ej(j) = h;
      H(i, j) = (f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)) / (4.0 * h * h);
    }
  return 0.5 * (H + H.transpose());
}

/// Hessian from central differences of an analytic gradient.
inline Mat fd_hessian_from_gradient(const std::function<Vec(const Vec&)>& grad, const Vec& x, double h) {
  const auto n = x.size();
  Mat H(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e(j) = h;
    H.col(j) = (grad(x + e) - grad(x - e)) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

inline double min_eigenvalue(const Mat& H) {
  return Eigen::SelfAdjointEigenSolver<Mat>(H, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

/// Nearest point of a 2D ball body by brute force over a square grid of the
/// given spacing covering B(0, 2R).
inline Vec grid_projection_2d(const BallBody& body, const Vec& x, double spacing) {
  const double R = body.radius();
  const int n = static_cast<int>(std::ceil(4.0 * R / spacing));
  Vec best = Vec::Zero(2);
  double best_d = (x - best).squaredNorm();
  Vec p(2);
  for (int i = 0; i <= n; ++i) {
    p(0) = -2.0 * R + i * spacing;
    for (int j = 0; j <= n; ++j) {
      p(1) = -2.0 * R + j * spacing;
      bool in = true;
      for (const auto& a : body.centers())
        if ((p - a).squaredNorm() > R * R) {
          in = false;
          break;
        }
      if (!in) continue;
      const double d = (x - p).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = p;
      }
    }
  }
  return best;
}

}  // namespace fixtures
