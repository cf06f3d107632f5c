#pragma once

#include <span>
#include <vector>

#include "convexsmooth/core.hpp"

namespace convexsmooth {

enum class BlendOrder { C11, C2 };

/// Result of the two-argument smooth maximum
///   S(a, b) = (a + b + phi(a - b)) / 2
/// with phi even, convex, |phi'| <= 1 and phi(t) = |t| for |t| >= delta.
struct SmoothMax {
  double value = 0.0;
  double weight_a = 0.0;   // dS/da = (1 + phi'(a - b)) / 2
  double curvature = 0.0;  // phi''(a - b) / 2, the d2S/da2 coefficient
};

/// Exactly max(a, b) (same bits) when |a - b| >= delta.
SmoothMax smooth_max(double a, double b, double delta, BlendOrder order);

/// g = left fold of smooth_max over the squared member gauges mu_i^2, in a
/// canonical order (centers sorted lexicographically). Each fold step is
/// convex and nondecreasing in both arguments, so g is convex, at least
/// 1/(2R^2)-strongly convex, and of the declared smoothness.
class BlendedGauge {
 public:
  BlendedGauge(BallBody body, double delta, BlendOrder order);

  const BallBody& body() const { return body_; }
  double delta() const { return delta_; }
  BlendOrder order() const { return order_; }
  const std::vector<std::size_t>& fold_order() const { return fold_order_; }

  /// (m - 2) / 4 for m >= 2 members, else 0: earlier non-decisive fold steps
  /// can lift the accumulator by at most delta/4 each.
  double fold_guard() const;

 private:
  BallBody body_;
  double delta_;
  BlendOrder order_;
  std::vector<std::size_t> fold_order_;
};

struct BlendEval {
  double value = 0.0;
  Vec grad;
  Mat hess;
};

/// g(x) with gradient and Hessian by the chain rule through the fold.
BlendEval blended_gauge_sq(const BlendedGauge& gauge, const Vec& x);

/// g(x) only.
double blended_value(const BlendedGauge& gauge, const Vec& x);

/// g from precomputed member gauges (indexed like body().centers()).
double blended_value_from_gauges(const BlendedGauge& gauge, std::span<const double> member_gauges);

/// h(x) = sqrt(g(x)).
double blended_root(const BlendedGauge& gauge, const Vec& x);

/// True when the top two squared member gauges differ by at least
/// delta * (1 + fold_guard()); then g(x) equals mu_W(x)^2 bit for bit.
bool agreement_indicator(const BlendedGauge& gauge, const Vec& x);
bool agreement_from_gauges(const BlendedGauge& gauge, std::span<const double> member_gauges);

/// Guarantees checked while extracting a smoothed body.
struct SmoothingChecks {
  bool contained = false;        // every boundary sample of W_eps has mu <= 1
  bool tube_ok = false;          // boundary of W_eps inside mu^{-1}([1 - 5 eps, 1 + 5 eps])
  double tube_min = 0.0;         // min mu over boundary samples of W_eps
  double tube_max = 0.0;         // max mu over the same samples
  double ridge_measure = 0.0;    // disagreement measure on the boundary of W
  double boundary_measure = 0.0; // H^{n-1}(boundary of W) at the scan resolution
};

/// W_eps = (1 / t0) * {h <= t0}.
struct SmoothedBody {
  BlendedGauge gauge;
  double t0 = 1.0;
  SmoothingChecks checks;

  bool contains(const Vec& x) const;
};

struct SmoothingOptions {
  double delta = 0.0;  // <= 0 selects the default 1e-3 R^2
  double epsilon = 0.05;
  BlendOrder order = BlendOrder::C2;
  int scan = 64;
  int resolution = 0;  // <= 0 selects 4096 angles (2D) or icosphere level 4 (3D)
};

/// Per-level disagreement measures of one regular-value scan.
struct LevelScan {
  std::vector<double> levels;
  std::vector<double> disagree_measure;
  std::vector<double> level_measure;
  std::size_t chosen = 0;
};

/// Scans `scan` levels 1 + eps (k + 1) / (scan + 1), k = 0..scan-1, meshes
/// each level set of h, and measures its portion outside the agreement set.
/// The chosen level minimizes that measure; ties go to the level closest to
/// 1 + eps / 2. Throws DegenerateEpsilon unless 0 < eps < 1/4.
LevelScan scan_regular_values(const BlendedGauge& gauge, double epsilon, int scan, int resolution);
double select_regular_value(const BlendedGauge& gauge, double epsilon, int scan, int resolution);

/// The full pipeline. Throws ShrinkDelta when the ridge disagreement
/// measure on the boundary of W reaches eps/4 of its total measure.
SmoothedBody extract_smoothed_body(const BallBody& body, const SmoothingOptions& options);

/// Default mesh resolution for a dimension.
int default_resolution(int dim);

/// Largest entrywise difference of the closed-form Hessian of g between
/// x - step*dir and x + step*dir.
double hessian_jump(const BlendedGauge& gauge, const Vec& x, const Vec& dir, double step);

/// Largest entrywise difference of the gradient of g between the same points.
double gradient_jump(const BlendedGauge& gauge, const Vec& x, const Vec& dir, double step);

}  // namespace convexsmooth
