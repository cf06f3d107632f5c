#include "convexsmooth/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "convexsmooth/directions.hpp"
#include "convexsmooth/kernels.hpp"

namespace convexsmooth {

namespace {

constexpr int kDiameterDirections2D = 8192;
constexpr int kDiameterIcosphereLevel = 3;

// Largest distance from a boundary point inside the cone over cell (p1, p2)
// to the nearer of p1, p2. The arc lies between the chord and the two
// supporting lines; when the lines meet over the chord the region is a thin
// triangle and the nearer-endpoint distance is at most hypot(c/2, height).
double cell_inflation_2d(const Vec& p1, const Vec& n1, const Vec& p2, const Vec& n2) {
  const double c = (p2 - p1).norm();
  Eigen::Matrix2d A;
  A << n1(0), n1(1), n2(0), n2(1);
  const double det = A.determinant();
  if (std::abs(det) < 1e-14) return c;
  const Eigen::Vector2d q = A.inverse() * Eigen::Vector2d(n1.dot(p1), n2.dot(p2));
  const Eigen::Vector2d chord = (p2 - p1) / c;
  const double s = (q - Eigen::Vector2d(p1)).dot(chord);
  const double h = std::abs((q - Eigen::Vector2d(p1)).dot(Eigen::Vector2d(-chord(1), chord(0))));
  if (s >= 0.0 && s <= c) return std::hypot(0.5 * c, h);
  return std::max({c, (q - Eigen::Vector2d(p1)).norm(), (q - Eigen::Vector2d(p2)).norm()});
}

// 3D analogue: enumerate the vertices of the region bounded by the cone over
// the triangle, the triangle's plane and the three supporting planes, then
// bound the nearest-vertex distance by min_i max_v |v - p_i|.
double cell_inflation_3d(const std::array<Eigen::Vector3d, 3>& p, const std::array<Eigen::Vector3d, 3>& n) {
  std::vector<std::pair<Eigen::Vector3d, double>> planes;  // a.x <= b
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    Eigen::Vector3d side = p[i].cross(p[j]);
    if (side.dot(p[k]) < 0) side = -side;
    planes.emplace_back(-side, 0.0);
    planes.emplace_back(n[i], n[i].dot(p[i]));
  }
  Eigen::Vector3d m = (p[1] - p[0]).cross(p[2] - p[0]);
  if (m.dot(p[0]) < 0) m = -m;
  planes.emplace_back(-m, -m.dot(p[0]));

  std::vector<Eigen::Vector3d> verts;
  const std::size_t np = planes.size();
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = a + 1; b < np; ++b)
      for (std::size_t c = b + 1; c < np; ++c) {
        Eigen::Matrix3d A;
        A.row(0) = planes[a].first.transpose();
        A.row(1) = planes[b].first.transpose();
        A.row(2) = planes[c].first.transpose();
        if (std::abs(A.determinant()) < 1e-14 * A.norm() * A.norm() * A.norm()) continue;
        const Eigen::Vector3d v = A.partialPivLu().solve(Eigen::Vector3d(planes[a].second, planes[b].second, planes[c].second));
        bool feasible = true;
        for (const auto& [an, bn] : planes)
          if (an.dot(v) > bn + 1e-12 * (1.0 + an.norm() * v.norm())) feasible = false;
        if (feasible) verts.push_back(v);
      }
  if (verts.empty()) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    double worst = 0.0;
    for (const auto& v : verts) worst = std::max(worst, (v - p[i]).norm());
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace

BallBody::BallBody(double radius, std::vector<Vec> centers)
    : radius_(radius), centers_(std::move(centers)), dim_(0), interior_radius_(0.0) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_))
    throw Error(ErrorCode::InvalidBody, "radius > 0 violated");
  if (centers_.empty()) throw Error(ErrorCode::InvalidBody, "centers must be nonempty");
  dim_ = static_cast<int>(centers_.front().size());
  if (dim_ < 2) throw Error(ErrorCode::InvalidBody, "dim >= 2 violated");
  double max_norm = 0.0;
  for (const auto& a : centers_) {
    if (a.size() != dim_) throw Error(ErrorCode::InvalidBody, "all centers must share the body dimension");
    if (!a.allFinite()) throw Error(ErrorCode::InvalidBody, "centers must be finite");
    max_norm = std::max(max_norm, a.norm());
  }
  if (!(max_norm < radius_)) {
    std::ostringstream os;
    os << "max |a_i| < R violated (max |a_i| = " << max_norm << ", R = " << radius_ << ")";
    throw Error(ErrorCode::InvalidBody, os.str());
  }
  interior_radius_ = radius_ - max_norm;
}

BallBody BallBody::with_center(Vec center) const {
  auto cs = centers_;
  cs.push_back(std::move(center));
  return BallBody(radius_, std::move(cs));
}

HalfspaceBody::HalfspaceBody(std::vector<Halfspace> halfspaces) : halfspaces_(std::move(halfspaces)), dim_(0) {
  if (halfspaces_.empty()) throw Error(ErrorCode::InvalidBody, "halfspaces must be nonempty");
  dim_ = static_cast<int>(halfspaces_.front().normal.size());
  if (dim_ < 2) throw Error(ErrorCode::InvalidBody, "dim >= 2 violated");
  for (auto& h : halfspaces_) {
    if (h.normal.size() != dim_) throw Error(ErrorCode::InvalidBody, "all normals must share the body dimension");
    const double len = h.normal.norm();
    if (!(len > 0.0) || !std::isfinite(len)) throw Error(ErrorCode::InvalidBody, "normals must be nonzero");
    h.normal /= len;
    h.offset /= len;
    if (!(h.offset > 0.0)) throw Error(ErrorCode::InvalidBody, "open ball around 0 violated (offset must be > 0)");
  }
  // Boundedness: every sampled direction must eventually leave the body.
  if (dim_ == 2 || dim_ == 3) {
    for (const auto& u : sample_directions(dim_, dim_ == 2 ? 720 : 2000))
      if (!(gauge(u) > 1e-9)) throw Error(ErrorCode::InvalidBody, "bounded body violated (normals do not positively span)");
  }
}

double HalfspaceBody::gauge(const Vec& x) const {
  double g = 0.0;
  for (const auto& h : halfspaces_) g = std::max(g, h.normal.dot(x) / h.offset);
  return g;
}

HalfspaceBody HalfspaceBody::box(int dim, double half_width) {
  std::vector<Halfspace> hs;
  for (int i = 0; i < dim; ++i)
    for (double sign : {1.0, -1.0}) {
      Vec n = Vec::Zero(dim);
      n(i) = sign;
      hs.push_back({n, half_width});
    }
  return HalfspaceBody(std::move(hs));
}

int body_dim(const Body& body) {
  return std::visit([](const auto& b) { return b.dim(); }, body);
}

NormalLift normal_lift(const Vec& xi) {
  const auto n = xi.size();
  Vec lift(n + 1);
  const double scale = 1.0 / std::sqrt(1.0 + xi.squaredNorm());
  lift.head(n) = scale * xi;
  lift(n) = -scale;
  return {xi, lift};
}

bool contains(const BallBody& body, const Vec& x) {
  for (const auto& a : body.centers())
    if ((x - a).norm() - body.radius() > kMembershipSlack) return false;
  return true;
}

bool contains(const HalfspaceBody& body, const Vec& x) {
  for (const auto& h : body.halfspaces())
    if (h.normal.dot(x) - h.offset > kMembershipSlack) return false;
  return true;
}

double ball_exit_radius(const Ball& ball, const Vec& u) {
  const double t = u.dot(ball.center);
  return t + std::sqrt(t * t + ball.k());
}

double exit_radius(const BallBody& body, const Vec& u) {
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < body.size(); ++i) r = std::min(r, ball_exit_radius(body.ball(i), u));
  return r;
}

std::vector<std::size_t> active_balls(const BallBody& body, const Vec& y, double tol) {
  std::vector<std::size_t> out;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const double d = (y - body.centers()[i]).norm() - body.radius();
    if (d > best) {
      best = d;
      best_i = i;
    }
    if (std::abs(d) <= tol) out.push_back(i);
  }
  if (out.empty()) out.push_back(best_i);
  return out;
}

Vec outward_normal(const BallBody& body, const Vec& y) {
  Vec n = Vec::Zero(body.dim());
  for (auto i : active_balls(body, y)) n += (y - body.centers()[i]).normalized();
  return n.normalized();
}

Vec outward_normal(const HalfspaceBody& body, const Vec& y) {
  const double g = body.gauge(y);
  Vec n = Vec::Zero(body.dim());
  for (const auto& h : body.halfspaces())
    if (h.normal.dot(y) / h.offset >= g - 1e-9) n += h.normal;
  return n.normalized();
}

double diameter(const BallBody& body) {
  const int dim = body.dim();
  if (dim != 2 && dim != 3) return 2.0 * body.radius();
  const DirectionGrid grid = dim == 2 ? circle_grid(kDiameterDirections2D) : icosphere(kDiameterIcosphereLevel);
  const std::size_t n = grid.directions.size();
  std::vector<Vec> pts(n), normals(n);
  kernels::for_each_index(n, [&](std::size_t i) {
    pts[i] = exit_radius(body, grid.directions[i]) * grid.directions[i];
    normals[i] = outward_normal(body, pts[i]);
  });
  const double max_pair = kernels::max_pairwise_distance(pts).value;

  const auto inflation = kernels::max_over_indices(grid.cells.size(), [&](std::size_t c) {
    const auto& cell = grid.cells[c];
    if (dim == 2) return cell_inflation_2d(pts[cell[0]], normals[cell[0]], pts[cell[1]], normals[cell[1]]);
    std::array<Eigen::Vector3d, 3> p, nn;
    for (int k = 0; k < 3; ++k) {
      p[k] = pts[cell[k]];
      nn[k] = normals[cell[k]];
    }
    return cell_inflation_3d(p, nn);
  });
  return std::min(2.0 * body.radius(), max_pair + 2.0 * inflation.value);
}

}  // namespace convexsmooth
