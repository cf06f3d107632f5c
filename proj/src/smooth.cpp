#include "convexsmooth/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "convexsmooth/gauge.hpp"

namespace convexsmooth {

SmoothMax smooth_max(double a, double b, double delta, BlendOrder order) {
  const double t = a - b;
  if (std::abs(t) >= delta) {
    if (t > 0.0) return {a, 1.0, 0.0};
    return {b, 0.0, 0.0};
  }
  double phi = 0.0, dphi = 0.0, ddphi = 0.0;
  if (order == BlendOrder::C11) {
    phi = t * t / (2.0 * delta) + 0.5 * delta;
    dphi = t / delta;
    ddphi = 1.0 / delta;
  } else {
    const double d3 = delta * delta * delta;
    const double t2 = t * t;
    phi = -t2 * t2 / (8.0 * d3) + 3.0 * t2 / (4.0 * delta) + 3.0 * delta / 8.0;
    dphi = -t2 * t / (2.0 * d3) + 3.0 * t / (2.0 * delta);
    ddphi = -3.0 * t2 / (2.0 * d3) + 3.0 / (2.0 * delta);
  }
  return {0.5 * (a + b + phi), 0.5 * (1.0 + dphi), 0.5 * ddphi};
}

BlendedGauge::BlendedGauge(BallBody body, double delta, BlendOrder order)
    : body_(std::move(body)), delta_(delta), order_(order) {
  if (!(delta_ > 0.0) || !std::isfinite(delta_)) throw Error(ErrorCode::InvalidArgument, "blend width delta must be > 0");
  fold_order_.resize(body_.size());
  std::iota(fold_order_.begin(), fold_order_.end(), std::size_t{0});
  const auto& cs = body_.centers();
  std::stable_sort(fold_order_.begin(), fold_order_.end(), [&](std::size_t i, std::size_t j) {
    return std::lexicographical_compare(cs[i].begin(), cs[i].end(), cs[j].begin(), cs[j].end());
  });
}

double BlendedGauge::fold_guard() const {
  const auto m = body_.size();
  return m >= 2 ? static_cast<double>(m - 2) / 4.0 : 0.0;
}

BlendEval blended_gauge_sq(const BlendedGauge& gauge, const Vec& x) {
  const auto& body = gauge.body();
  BlendEval acc;
  bool first = true;
  for (auto i : gauge.fold_order()) {
    const GaugeEval ev = ball_gauge_derivatives(body.ball(i), x);
    const double v = ev.value * ev.value;
    const Vec grad = 2.0 * ev.value * ev.grad;
    if (first) {
      acc = {v, grad, ev.hess_sq};
      first = false;
      continue;
    }
    const SmoothMax s = smooth_max(acc.value, v, gauge.delta(), gauge.order());
    if (std::abs(acc.value - v) >= gauge.delta()) {
      if (s.weight_a == 0.0) acc = {v, grad, ev.hess_sq};
      continue;
    }
    const Vec d = acc.grad - grad;
    acc.hess = s.weight_a * acc.hess + (1.0 - s.weight_a) * ev.hess_sq + s.curvature * (d * d.transpose());
    acc.grad = s.weight_a * acc.grad + (1.0 - s.weight_a) * grad;
    acc.value = s.value;
  }
  return acc;
}

double blended_value_from_gauges(const BlendedGauge& gauge, std::span<const double> member_gauges) {
  bool first = true;
  double acc = 0.0;
  for (auto i : gauge.fold_order()) {
    const double v = member_gauges[i] * member_gauges[i];
    if (first) {
      acc = v;
      first = false;
    } else {
      acc = smooth_max(acc, v, gauge.delta(), gauge.order()).value;
    }
  }
  return acc;
}

namespace {

std::vector<double> member_gauges(const BallBody& body, const Vec& x) {
  std::vector<double> mus(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) mus[i] = ball_gauge(body.ball(i), x);
  return mus;
}

}  // namespace

double blended_value(const BlendedGauge& gauge, const Vec& x) {
  const auto mus = member_gauges(gauge.body(), x);
  return blended_value_from_gauges(gauge, mus);
}

double blended_root(const BlendedGauge& gauge, const Vec& x) { return std::sqrt(blended_value(gauge, x)); }

bool agreement_from_gauges(const BlendedGauge& gauge, std::span<const double> member_gauges) {
  if (member_gauges.size() < 2) return true;
  double top = -1.0, second = -1.0;
  for (double mu : member_gauges) {
    const double v = mu * mu;
    if (v > top) {
      second = top;
      top = v;
    } else if (v > second) {
      second = v;
    }
  }
  return top - second >= gauge.delta() * (1.0 + gauge.fold_guard());
}

bool agreement_indicator(const BlendedGauge& gauge, const Vec& x) {
  const auto mus = member_gauges(gauge.body(), x);
  return agreement_from_gauges(gauge, mus);
}

bool SmoothedBody::contains(const Vec& x) const {
  return blended_root(gauge, t0 * x) <= t0 * (1.0 + kMembershipSlack);
}

double hessian_jump(const BlendedGauge& gauge, const Vec& x, const Vec& dir, double step) {
  const Mat lo = blended_gauge_sq(gauge, x - step * dir).hess;
  const Mat hi = blended_gauge_sq(gauge, x + step * dir).hess;
  return (hi - lo).cwiseAbs().maxCoeff();
}

double gradient_jump(const BlendedGauge& gauge, const Vec& x, const Vec& dir, double step) {
  const Vec lo = blended_gauge_sq(gauge, x - step * dir).grad;
  const Vec hi = blended_gauge_sq(gauge, x + step * dir).grad;
  return (hi - lo).cwiseAbs().maxCoeff();
}

}  // namespace convexsmooth
