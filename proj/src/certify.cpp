#include "convexsmooth/certify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "convexsmooth/directions.hpp"
#include "convexsmooth/gauge.hpp"
#include "convexsmooth/kernels.hpp"
#include "convexsmooth/project.hpp"

namespace convexsmooth {

std::string to_string(Condition c) {
  switch (c) {
    case Condition::Eq39: return "eq39";
    case Condition::BallSupport: return "ball_support_b";
    case Condition::BallFamily: return "ball_family_c";
    case Condition::GaugeSqHessian: return "gauge_sq_hessian_d";
    case Condition::LevelSet: return "level_set_e";
    case Condition::HalfspaceReconstruction: return "halfspace_reconstruction";
  }
  return "unknown";
}

namespace {

struct BoundarySample {
  std::vector<Vec> points;
  std::vector<Vec> normals;
};

BoundarySample boundary_samples(const Body& body, int count) {
  const int dim = body_dim(body);
  const auto dirs = sample_directions(dim, count);
  BoundarySample out;
  out.points.resize(dirs.size());
  out.normals.resize(dirs.size());
  kernels::for_each_index(dirs.size(), [&](std::size_t i) {
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, BallBody>) {
            out.points[i] = exit_radius(b, dirs[i]) * dirs[i];
          } else {
            out.points[i] = dirs[i] / b.gauge(dirs[i]);
          }
          out.normals[i] = outward_normal(b, out.points[i]);
        },
        body);
  });
  return out;
}

Vec random_point_in_box(int dim, double half_width, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-half_width, half_width);
  Vec x(dim);
  for (int k = 0; k < dim; ++k) x(k) = unif(rng);
  return x;
}

double min_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

CertificateReport eq39_certificate(const std::vector<SubgradientSample>& points, double eta) {
  if (points.size() < 2) throw Error(ErrorCode::InsufficientData, "eq39 certificate needs at least 2 points");
  const auto worst = kernels::min_over_pairs(
      points.size(), points.size(),
      [&](std::size_t i, std::size_t j) {
        const auto& p = points[i];
        const auto& q = points[j];
        const Vec d = q.x - p.x;
        return q.value - p.value - p.xi.dot(d) - 0.5 * eta * d.squaredNorm();
      },
      true);
  CertificateReport rep;
  rep.condition = Condition::Eq39;
  rep.constant = eta;
  rep.samples = points.size();
  rep.worst_witness = {points[worst.first].x, points[worst.second].x, worst.value};
  rep.passed = worst.value >= -kCertifyTolerance;
  return rep;
}

double enclosing_radius(const PatchParams& p) {
  if (!(p.L > 0 && p.eta > 0 && p.r > 0 && p.r0 > 0 && p.diam > 0))
    throw Error(ErrorCode::InvalidArgument, "patch parameters must be positive");
  if (p.r0 > p.r) throw Error(ErrorCode::InvalidArgument, "r0 <= r violated");
  const double first = (1.0 + p.eta * p.eta * p.r * p.r / 4.0 + p.L * p.L + p.eta * p.L * p.r) / p.eta;
  const double third = p.diam * p.diam / (p.eta * p.r0 * p.r0);
  return std::sqrt(1.0 + p.L * p.L) * std::max({first, p.diam, third});
}

CertificateReport ball_support_check(const Body& body, double R, int samples) {
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  if (samples < 8) throw Error(ErrorCode::InvalidArgument, "samples must be >= 8");
  const BoundarySample bs = boundary_samples(body, samples);
  std::vector<Vec> centers(bs.points.size());
  for (std::size_t i = 0; i < centers.size(); ++i) centers[i] = bs.points[i] - R * bs.normals[i];
  const auto worst = kernels::min_over_pairs(
      centers.size(), bs.points.size(),
      [&](std::size_t i, std::size_t j) { return R - (bs.points[j] - centers[i]).norm(); }, false);
  CertificateReport rep;
  rep.condition = Condition::BallSupport;
  rep.constant = R;
  rep.samples = bs.points.size() * bs.points.size();
  rep.worst_witness = {bs.points[worst.first], bs.points[worst.second], worst.value};
  rep.passed = worst.value >= -kCertifyTolerance;
  return rep;
}

CertificateReport ball_family_check(const BallBody& body, int samples) {
  if (samples < 8) throw Error(ErrorCode::InvalidArgument, "samples must be >= 8");
  const BoundarySample bs = boundary_samples(body, samples);
  const auto worst = kernels::min_over_pairs(
      bs.points.size(), body.size(),
      [&](std::size_t i, std::size_t k) { return body.radius() - (bs.points[i] - body.centers()[k]).norm(); },
      false);
  CertificateReport rep;
  rep.condition = Condition::BallFamily;
  rep.constant = body.radius();
  rep.samples = bs.points.size() * body.size();
  rep.worst_witness = {bs.points[worst.first], body.centers()[worst.second], worst.value};
  rep.passed = worst.value >= -kCertifyTolerance;
  return rep;
}

CertificateReport gauge_sq_hessian_check(const Body& body, int samples, std::mt19937_64& rng) {
  const auto* ball_body = std::get_if<BallBody>(&body);
  if (ball_body == nullptr) throw Error(ErrorCode::NotBallBody, "condition (d) needs a ball-intersection body");
  if (samples < 8) throw Error(ErrorCode::InvalidArgument, "samples must be >= 8");
  const BallBody& b = *ball_body;
  const double R = b.radius();
  const double bound = 1.0 / (2.0 * R * R);

  std::vector<Vec> xs;
  std::vector<std::size_t> idx;
  while (static_cast<int>(xs.size()) < samples) {
    Vec x = random_point_in_box(b.dim(), 2.0 * R, rng);
    if (x.norm() < 1e-6 * R) continue;
    const auto bg = body_gauge(b, x);
    if (bg.argmax.size() != 1) continue;
    xs.push_back(std::move(x));
    idx.push_back(bg.argmax.front());
  }
  std::vector<double> eig(xs.size());
  kernels::for_each_index(xs.size(), [&](std::size_t i) {
    eig[i] = min_eigenvalue(ball_gauge_derivatives(b.ball(idx[i]), xs[i]).hess_sq);
  });
  const auto worst = std::min_element(eig.begin(), eig.end()) - eig.begin();
  CertificateReport rep;
  rep.condition = Condition::GaugeSqHessian;
  rep.constant = bound;
  rep.samples = xs.size();
  rep.worst_witness = {xs[worst], Vec(), eig[worst] - bound};
  rep.passed = rep.worst_witness.margin >= -kCertifyTolerance;
  return rep;
}

double level_set_radius(double L, double eta) {
  if (!(L > 0.0) || !(eta > 0.0)) throw Error(ErrorCode::InvalidArgument, "L and eta must be positive");
  return L / eta;
}

CertificateReport gauge_sq_eq39_check(const BallBody& body, int samples, std::mt19937_64& rng) {
  if (samples < 2) throw Error(ErrorCode::InsufficientData, "eq39 certificate needs at least 2 points");
  const double R = body.radius();
  std::vector<SubgradientSample> pts;
  pts.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    Vec x = random_point_in_box(body.dim(), 2.0 * R, rng);
    const auto bg = body_gauge(body, x);
    const GaugeEval ev = ball_gauge_derivatives(body.ball(bg.argmax.front()), x);
    pts.push_back({x, bg.value * bg.value, 2.0 * ev.value * ev.grad});
  }
  return eq39_certificate(pts, 1.0 / (2.0 * R * R));
}

CertificateReport level_set_check(const BallBody& body, int samples) {
  const double R = body.radius();
  // |grad mu^2| = 2 mu |grad mu| <= 2 * 1 * (2/rho) on W.
  const double L = 2.0 * gauge_lipschitz_bound(body);
  const double eta = 1.0 / (2.0 * R * R);
  CertificateReport rep = ball_support_check(Body{body}, level_set_radius(L, eta), samples);
  rep.condition = Condition::LevelSet;
  return rep;
}

Mat cap_graph_hessian(double R, const Vec& w) {
  const auto n = w.size();
  const double q = R * R - w.squaredNorm();
  return (w * w.transpose() + q * Mat::Identity(n, n)) / std::pow(q, 1.5);
}

double cap_graph_value(double R, const Vec& w) { return -std::sqrt(R * R - w.squaredNorm()); }

CertificateReport cap_graph_hessian_check(double R, const Vec& xi_y, const std::vector<Vec>& z_offsets) {
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  CertificateReport rep;
  rep.condition = Condition::BallSupport;
  rep.constant = 1.0 / R;
  rep.samples = z_offsets.size();
  rep.worst_witness.margin = std::numeric_limits<double>::infinity();
  for (const auto& z : z_offsets) {
    const Vec w = z + R * xi_y;
    const double q = R * R - w.squaredNorm();
    if (!(q > 0.0)) throw Error(ErrorCode::DomainViolation, "offset leaves the open cap |z - y + R xi| < R");
    double eig = R * R / std::pow(q, 1.5);
    if (w.size() >= 2) eig = std::min(eig, 1.0 / std::sqrt(q));
    const double margin = eig - 1.0 / R;
    if (margin < rep.worst_witness.margin) rep.worst_witness = {z, w, margin};
  }
  rep.passed = rep.worst_witness.margin >= -kCertifyTolerance;
  return rep;
}

namespace {

struct SupportingHalfspaces {
  std::vector<Vec> normals;
  std::vector<double> offsets;  // <normal, y>
  std::vector<Vec> points;
};

SupportingHalfspaces supporting_halfspaces(const BallBody& body, int count) {
  const BoundarySample bs = boundary_samples(Body{body}, count);
  SupportingHalfspaces out;
  out.points = bs.points;
  out.normals = bs.normals;
  for (std::size_t k = 0; k < bs.points.size(); ++k) out.offsets.push_back(bs.normals[k].dot(bs.points[k]));
  return out;
}

bool bounded_polytope(const SupportingHalfspaces& hs, int dim) {
  for (const auto& u : sample_directions(dim, 8 * static_cast<int>(hs.normals.size()))) {
    double g = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < hs.normals.size(); ++k) g = std::max(g, hs.normals[k].dot(u) / hs.offsets[k]);
    if (!(g > 0.0)) return false;
  }
  return true;
}

}  // namespace

double halfspace_reconstruction_gap(const BallBody& body, int normal_samples) {
  if (normal_samples < 4) throw Error(ErrorCode::InvalidArgument, "normal_samples must be >= 4");
  const int dim = body.dim();
  const SupportingHalfspaces hs = supporting_halfspaces(body, normal_samples);
  if (!bounded_polytope(hs, dim)) return std::numeric_limits<double>::infinity();
  const std::size_t n = hs.normals.size();
  const double scale = 2.0 * body.radius();

  auto feasible = [&](const Vec& v) {
    for (std::size_t k = 0; k < n; ++k)
      if (hs.normals[k].dot(v) - hs.offsets[k] > 1e-10 * scale) return false;
    return true;
  };
  auto gap_at = [&](const Vec& v) { return (v - project_body(body, v, 1e-12)).norm(); };

  // Every vertex of the polytope is the solution of `dim` active constraints;
  // the distance to W is convex, so its maximum sits at a vertex.
  const auto worst = kernels::max_over_indices(n, [&](std::size_t a) {
    double best = 0.0;
    if (dim == 2) {
      for (std::size_t b = a + 1; b < n; ++b) {
        Eigen::Matrix2d A;
        A.row(0) = hs.normals[a].transpose();
        A.row(1) = hs.normals[b].transpose();
        if (std::abs(A.determinant()) < 1e-12) continue;
        const Vec v = A.inverse() * Eigen::Vector2d(hs.offsets[a], hs.offsets[b]);
        if (feasible(v)) best = std::max(best, gap_at(v));
      }
    } else {
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) {
          Mat A(dim, dim);
          A.row(0) = hs.normals[a].transpose();
          A.row(1) = hs.normals[b].transpose();
          A.row(2) = hs.normals[c].transpose();
          if (std::abs(A.determinant()) < 1e-12) continue;
          const Vec v = A.partialPivLu().solve(Eigen::Vector3d(hs.offsets[a], hs.offsets[b], hs.offsets[c]));
          if (feasible(v)) best = std::max(best, gap_at(v));
        }
    }
    return best;
  });
  return std::max(0.0, worst.value);
}

CertificateReport halfspace_reconstruction_check(const BallBody& body, int normal_samples) {
  const SupportingHalfspaces hs = supporting_halfspaces(body, normal_samples);
  const BoundarySample dense = boundary_samples(Body{body}, 4 * normal_samples);
  const auto worst = kernels::min_over_pairs(
      dense.points.size(), hs.normals.size(),
      [&](std::size_t i, std::size_t k) { return hs.offsets[k] - hs.normals[k].dot(dense.points[i]); }, false);
  CertificateReport rep;
  rep.condition = Condition::HalfspaceReconstruction;
  rep.constant = halfspace_reconstruction_gap(body, normal_samples);
  rep.samples = dense.points.size() * hs.normals.size();
  rep.worst_witness = {dense.points[worst.first], hs.points[worst.second], worst.value};
  rep.passed = worst.value >= -kCertifyTolerance;
  return rep;
}

bool GraphPatch::contains(const Vec& p) const {
  const Vec t = p.head(p.size() - 1);
  const double s = p(p.size() - 1);
  return value(t) <= s + 1e-12 && s <= cap + 1e-12;
}

namespace {

// Footprint of the patch body: {t : g(t) <= cap} is a ball around -tilt/eta.
std::pair<Vec, double> footprint(const GraphPatch& p) {
  const Vec c = -p.tilt / p.eta;
  const double rad2 = 2.0 * (p.cap + p.tilt.squaredNorm() / (2.0 * p.eta)) / p.eta;
  return {c, std::sqrt(std::max(0.0, rad2))};
}

Vec lift_point(const Vec& t, double s) {
  Vec p(t.size() + 1);
  p.head(t.size()) = t;
  p(t.size()) = s;
  return p;
}

Vec random_in_ball(const Vec& c, double rad, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vec t(c.size());
  do {
    for (int k = 0; k < t.size(); ++k) t(k) = unif(rng);
  } while (t.squaredNorm() > 1.0);
  return c + rad * t;
}

}  // namespace

std::vector<Vec> GraphPatch::sample_points(int count, std::mt19937_64& rng) const {
  const auto [c, rad] = footprint(*this);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Vec> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const Vec t = random_in_ball(c, rad, rng);
    const double lo = value(t);
    switch (k % 3) {
      case 0: out.push_back(lift_point(t, lo)); break;
      case 1: out.push_back(lift_point(t, cap)); break;
      default: out.push_back(lift_point(t, lo + unif(rng) * (cap - lo))); break;
    }
  }
  return out;
}

PatchParams GraphPatch::params() const {
  const auto [c, rad] = footprint(*this);
  std::vector<Vec> pts;
  double spacing = 0.0;
  if (tilt.size() == 1) {
    const int n = 1500;
    spacing = 2.0 * rad / n;
    for (int k = 0; k <= n; ++k) {
      Vec t(1);
      t << c(0) - rad + spacing * k;
      pts.push_back(lift_point(t, value(t)));
      pts.push_back(lift_point(t, cap));
    }
  } else {
    const int n = 60;
    spacing = 2.0 * rad / n;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        Vec t(2);
        t << c(0) - rad + spacing * i, c(1) - rad + spacing * j;
        if ((t - c).norm() > rad) t = c + rad * (t - c).normalized();
        pts.push_back(lift_point(t, value(t)));
        pts.push_back(lift_point(t, cap));
      }
  }
  const double sampled = kernels::max_pairwise_distance(pts).value;
  // Boundary points lie within one grid step (in t) of a sample; the graph
  // rises by at most L_total per unit step.
  const double slope = eta * (rad + c.norm()) + tilt.norm();
  const double margin = 2.0 * spacing * std::sqrt(1.0 + slope * slope) * std::sqrt(static_cast<double>(tilt.size()));

  PatchParams p;
  p.L = tilt.norm() + eta * r;
  p.eta = eta;
  p.r = r;
  p.r0 = r;
  p.diam = sampled + margin;
  return p;
}

CertificateReport patch_containment_check(const GraphPatch& patch, int anchors, int body_samples,
                                          std::mt19937_64& rng) {
  const PatchParams params = patch.params();
  const double R = enclosing_radius(params);
  const Vec origin = Vec::Zero(patch.tilt.size());
  std::vector<Vec> centers;
  std::vector<Vec> anchor_points;
  for (int a = 0; a < anchors; ++a) {
    const Vec x = random_in_ball(origin, patch.r, rng);
    const Vec z = lift_point(x, patch.value(x));
    centers.push_back(z - R * normal_lift(patch.gradient(x)).lift);
    anchor_points.push_back(z);
  }
  const auto pts = patch.sample_points(body_samples, rng);
  const auto worst = kernels::min_over_pairs(
      centers.size(), pts.size(), [&](std::size_t i, std::size_t j) { return R - (pts[j] - centers[i]).norm(); },
      false);
  CertificateReport rep;
  rep.condition = Condition::BallSupport;
  rep.constant = R;
  rep.samples = centers.size() * pts.size();
  rep.worst_witness = {anchor_points[worst.first], pts[worst.second], worst.value};
  rep.passed = worst.value >= -kCertifyTolerance;
  return rep;
}

}  // namespace convexsmooth
