#include "convexsmooth/gauge.hpp"

#include <cmath>
#include <limits>

namespace convexsmooth {

namespace {

void require_nondegenerate(const Ball& ball) {
  if (!(ball.k() > 0.0)) throw Error(ErrorCode::DegenerateBall, "k_a = R^2 - |a|^2 must be positive");
}

double gauge_unchecked(const Vec& center, double k, const Vec& x) {
  const double t = x.dot(center);
  const double xx = x.squaredNorm();
  const double s = std::sqrt(t * t + k * xx);
  if (t > 0.0) return xx / (t + s);
  return (s - t) / k;
}

}  // namespace

double ball_gauge(const Ball& ball, const Vec& x) {
  require_nondegenerate(ball);
  return gauge_unchecked(ball.center, ball.k(), x);
}

GaugeEval ball_gauge_derivatives(const Ball& ball, const Vec& x) {
  require_nondegenerate(ball);
  const auto n = x.size();
  GaugeEval out;
  out.value = ball_gauge(ball, x);
  if (x.squaredNorm() == 0.0) {
    const double rmax = ball.radius + ball.center.norm();
    out.grad = Vec::Zero(n);
    out.hess_sq = (2.0 / (rmax * rmax)) * Mat::Identity(n, n);
    out.lambda = std::numeric_limits<double>::infinity();
    return out;
  }
  const Vec& a = ball.center;
  const double k = ball.k();
  const double t = x.dot(a);
  const double lambda = 1.0 / std::sqrt(t * t + k * x.squaredNorm());
  const double mu = out.value;
  const Vec w = x - mu * a;
  out.lambda = lambda;
  out.grad = lambda * w;
  const Vec grad_lambda = -lambda * lambda * lambda * (t * a + k * x);
  Mat hess_mu = w * grad_lambda.transpose() + lambda * (Mat::Identity(n, n) - a * out.grad.transpose());
  hess_mu = 0.5 * (hess_mu + hess_mu.transpose()).eval();
  out.hess_sq = 2.0 * out.grad * out.grad.transpose() + 2.0 * mu * hess_mu;
  return out;
}

BodyGauge body_gauge(const BallBody& body, const Vec& x) {
  std::vector<double> vals(body.size());
  double best = 0.0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const Vec& a = body.centers()[i];
    vals[i] = gauge_unchecked(a, body.radius() * body.radius() - a.squaredNorm(), x);
    best = std::max(best, vals[i]);
  }
  BodyGauge out;
  out.value = best;
  const double best_sq = best * best;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] * vals[i] >= best_sq - kArgmaxGap) out.argmax.push_back(i);
  return out;
}

double body_gauge_value(const BallBody& body, const Vec& x) {
  double best = 0.0;
  for (const auto& a : body.centers())
    best = std::max(best, gauge_unchecked(a, body.radius() * body.radius() - a.squaredNorm(), x));
  return best;
}

double gauge_lipschitz_bound(const BallBody& body) { return 2.0 / body.interior_radius(); }

}  // namespace convexsmooth
