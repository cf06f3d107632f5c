#include "convexsmooth/project.hpp"

#include <cmath>
#include <limits>

#include "convexsmooth/directions.hpp"
#include "convexsmooth/kernels.hpp"
#include "convexsmooth/measure.hpp"

namespace convexsmooth {

Vec project_ball(const Ball& ball, const Vec& x) {
  const Vec d = x - ball.center;
  const double len = d.norm();
  if (len <= ball.radius) return x;
  return ball.center + (ball.radius / len) * d;
}

namespace {

double max_violation(const BallBody& body, const Vec& x) {
  double worst = 0.0;
  for (const auto& a : body.centers()) worst = std::max(worst, (x - a).norm() - body.radius());
  return worst;
}

}  // namespace

Vec project_body(const BallBody& body, const Vec& x, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (max_violation(body, x) <= 0.0) return x;
  const std::size_t m = body.size();
  std::vector<Vec> increments(m, Vec::Zero(x.size()));
  Vec cur = x;
  Vec prev = x;
  Vec shifted(x.size());
  for (int cycle = 0; cycle < kDykstraMaxCycles; ++cycle) {
    for (std::size_t i = 0; i < m; ++i) {
      shifted = cur + increments[i];
      const Vec next = project_ball(body.ball(i), shifted);
      increments[i] = shifted - next;
      cur = next;
    }
    const double step = (cur - prev).norm();
    prev = cur;
    if (step < 0.1 * tol && max_violation(body, cur) <= tol) return cur;
  }
  throw Error(ErrorCode::NonConvergence, "Dykstra iteration cap reached");
}

double normal_lipschitz_raw(const BoundaryMesh& mesh) {
  if (mesh.facets.size() < 8) throw Error(ErrorCode::InvalidArgument, "mesh needs at least 8 facets");
  const auto pairs = mesh.adjacent_facets();
  const auto worst = kernels::max_over_indices(pairs.size(), [&](std::size_t k) {
    const auto [f, g] = pairs[k];
    const double dn = (mesh.facet_normal(f) - mesh.facet_normal(g)).norm();
    const double dc = (mesh.facet_centroid(f) - mesh.facet_centroid(g)).norm();
    return dc > 0.0 ? dn / dc : 0.0;
  });
  return std::max(0.0, worst.value);
}

double normal_lipschitz_estimate(const BoundaryMesh& mesh) { return 1.1 * normal_lipschitz_raw(mesh); }

ProjectionDomain projection_domain(const BoundaryMesh& mesh) {
  const double lip = normal_lipschitz_estimate(mesh);
  return {lip, lip > 0.0 ? 1.0 / (2.0 * lip) : std::numeric_limits<double>::infinity()};
}

double distance_to_boundary(const BallBody& body, const Vec& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& a : body.centers()) d = std::min(d, body.radius() - (x - a).norm());
  return std::max(0.0, d);
}

Vec boundary_projection(const BallBody& body, const ProjectionDomain& domain, const Vec& x, double tol) {
  if (!contains(body, x)) return project_body(body, x, tol);
  std::size_t nearest = 0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < body.size(); ++i) {
    const double di = body.radius() - (x - body.centers()[i]).norm();
    if (di < d) {
      d = di;
      nearest = i;
    }
  }
  if (!(d < domain.width))
    throw Error(ErrorCode::OutsideDomain, "interior point is not within 1/(2 Lip(n)) of the boundary");
  const Vec& a = body.centers()[nearest];
  const Vec dir = x - a;
  return a + (body.radius() / dir.norm()) * dir;
}

Vec boundary_projection(const BallBody& body, const BoundaryMesh& mesh, const Vec& x) {
  return boundary_projection(body, projection_domain(mesh), x);
}

namespace {

// Smallest t >= 0 with origin + t*dir on facet f, or +inf.
double ray_facet_hit(const BoundaryMesh& mesh, std::size_t f, const Vec& origin, const Vec& dir) {
  const auto& c = mesh.facets[f];
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (mesh.dim == 2) {
    const Eigen::Vector2d a = mesh.vertex(c[0]);
    const Eigen::Vector2d e = mesh.vertex(c[1]) - a;
    Eigen::Matrix2d M;
    M << dir(0), -e(0), dir(1), -e(1);
    const double det = M.determinant();
    if (std::abs(det) < 1e-15) return inf;
    const Eigen::Vector2d ts = M.inverse() * (a - Eigen::Vector2d(origin));
    if (ts(0) < 0.0 || ts(1) < -1e-12 || ts(1) > 1.0 + 1e-12) return inf;
    return ts(0);
  }
  const Eigen::Vector3d v0 = mesh.vertex(c[0]);
  const Eigen::Vector3d e1 = Eigen::Vector3d(mesh.vertex(c[1])) - v0;
  const Eigen::Vector3d e2 = Eigen::Vector3d(mesh.vertex(c[2])) - v0;
  const Eigen::Vector3d d = dir;
  const Eigen::Vector3d p = d.cross(e2);
  const double det = e1.dot(p);
  if (std::abs(det) < 1e-15) return inf;
  const Eigen::Vector3d s = Eigen::Vector3d(origin) - v0;
  const double u = s.dot(p) / det;
  if (u < -1e-12 || u > 1.0 + 1e-12) return inf;
  const Eigen::Vector3d q = s.cross(e1);
  const double v = d.dot(q) / det;
  if (v < -1e-12 || u + v > 1.0 + 1e-12) return inf;
  const double t = e2.dot(q) / det;
  return t >= 0.0 ? t : inf;
}

}  // namespace

ProbeResult boundary_surjectivity_probe(const BallBody& inner, const BoundaryMesh& outer, int samples) {
  if (outer.dim != inner.dim()) throw Error(ErrorCode::InvalidArgument, "inner and outer dimensions differ");
  for (std::size_t i = 0; i < outer.radii.size(); ++i)
    if (contains(inner, outer.vertex(i)))
      throw Error(ErrorCode::RayMiss, "outer mesh vertex lies inside the inner body (inner not inside outer)");

  const auto dirs = sample_directions(inner.dim(), samples);
  std::vector<double> gaps(dirs.size(), 0.0);
  std::vector<Vec> xs(dirs.size()), zs(dirs.size());
  std::vector<char> hit(dirs.size(), 0);
  kernels::for_each_index(dirs.size(), [&](std::size_t k) {
    const Vec x = exit_radius(inner, dirs[k]) * dirs[k];
    const Vec nu = outward_normal(inner, x);
    double t = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < outer.facets.size(); ++f) t = std::min(t, ray_facet_hit(outer, f, x, nu));
    xs[k] = x;
    if (!std::isfinite(t)) return;
    hit[k] = 1;
    zs[k] = x + t * nu;
    gaps[k] = (project_body(inner, zs[k], 1e-12) - x).norm();
  });

  ProbeResult out;
  out.rays = dirs.size();
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    if (!hit[k]) throw Error(ErrorCode::RayMiss, "a normal ray does not cross the outer boundary");
    ++out.hits;
    if (gaps[k] >= out.max_gap || out.worst_point.size() == 0) {
      out.max_gap = gaps[k];
      out.worst_point = xs[k];
      out.worst_hit = zs[k];
    }
  }
  return out;
}

}  // namespace convexsmooth
