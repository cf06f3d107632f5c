#pragma once

#include <vector>

#include "convexsmooth/core.hpp"

namespace convexsmooth {

/// Ties among member gauges are resolved on squared values with this gap.
inline constexpr double kArgmaxGap = 1e-10;

/// Value and derivatives of the Minkowski functional mu_a of one ball.
struct GaugeEval {
  double value = 0.0;  // mu_a(x)
  Vec grad;            // grad mu_a(x); zero at x = 0
  Mat hess_sq;         // D^2 (mu_a^2)(x)
  double lambda = 0.0; // 1 / sqrt(<x,a>^2 + k_a |x|^2); +inf at x = 0
};

/// mu_a(x) = (-<x,a> + sqrt(<x,a>^2 + k_a |x|^2)) / k_a, evaluated in the
/// cancellation-free form |x|^2 / (<x,a> + sqrt(...)) when <x,a> > 0.
/// Throws DegenerateBall when k_a <= 0.
double ball_gauge(const Ball& ball, const Vec& x);

/// Closed-form gradient of mu_a and Hessian of mu_a^2. At x = 0, where mu_a^2
/// is only 2-homogeneous, hess_sq is 2 min_{|v|=1} mu_a(v)^2 I, the largest
/// multiple of the identity below v -> 2 mu_a(v)^2.
GaugeEval ball_gauge_derivatives(const Ball& ball, const Vec& x);

struct BodyGauge {
  double value = 0.0;
  std::vector<std::size_t> argmax;
};

/// mu_W(x) = max_i mu_{a_i}(x) and every index within kArgmaxGap of the max
/// (compared on squares).
BodyGauge body_gauge(const BallBody& body, const Vec& x);

/// Just the value of body_gauge.
double body_gauge_value(const BallBody& body, const Vec& x);

/// 2 / rho with rho the interior radius; a valid Lipschitz constant of mu_W.
double gauge_lipschitz_bound(const BallBody& body);

}  // namespace convexsmooth
