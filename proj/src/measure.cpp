#include "convexsmooth/measure.hpp"

#include <cmath>
#include <map>

#include "convexsmooth/gauge.hpp"

namespace convexsmooth {

std::vector<Vec> BoundaryMesh::vertices() const {
  std::vector<Vec> out;
  out.reserve(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) out.push_back(vertex(i));
  return out;
}

double BoundaryMesh::facet_measure(std::size_t f) const {
  const auto& c = facets[f];
  if (dim == 2) return (vertex(c[1]) - vertex(c[0])).norm();
  const Eigen::Vector3d a = vertex(c[0]);
  const Eigen::Vector3d b = vertex(c[1]);
  const Eigen::Vector3d d = vertex(c[2]);
  return 0.5 * (b - a).cross(d - a).norm();
}

Vec BoundaryMesh::facet_centroid(std::size_t f) const {
  const auto& c = facets[f];
  if (dim == 2) return 0.5 * (vertex(c[0]) + vertex(c[1]));
  return (vertex(c[0]) + vertex(c[1]) + vertex(c[2])) / 3.0;
}

Vec BoundaryMesh::facet_normal(std::size_t f) const {
  const auto& c = facets[f];
  Vec n(dim);
  if (dim == 2) {
    const Vec e = vertex(c[1]) - vertex(c[0]);
    n << e(1), -e(0);
  } else {
    const Eigen::Vector3d a = vertex(c[0]);
    const Eigen::Vector3d b = vertex(c[1]);
    const Eigen::Vector3d d = vertex(c[2]);
    n = (b - a).cross(d - a);
  }
  if (n.dot(facet_centroid(f)) < 0.0) n = -n;
  return n.normalized();
}

std::vector<std::pair<std::size_t, std::size_t>> BoundaryMesh::adjacent_facets() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (dim == 2) {
    std::map<int, std::vector<std::size_t>> by_vertex;
    for (std::size_t f = 0; f < facets.size(); ++f)
      for (int k = 0; k < 2; ++k) by_vertex[facets[f][k]].push_back(f);
    for (const auto& [v, fs] : by_vertex)
      for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j) out.emplace_back(fs[i], fs[j]);
    return out;
  }
  std::map<std::pair<int, int>, std::vector<std::size_t>> by_edge;
  for (std::size_t f = 0; f < facets.size(); ++f)
    for (int k = 0; k < 3; ++k) by_edge[std::minmax(facets[f][k], facets[f][(k + 1) % 3])].push_back(f);
  for (const auto& [e, fs] : by_edge)
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j) out.emplace_back(fs[i], fs[j]);
  return out;
}

double ray_crossing(const RayProfile& profile, double level, double max_radius) {
  if (!(profile(0.0) < level)) throw Error(ErrorCode::BracketFailure, "level function must be below the level at the origin");
  double lo = 0.0;
  double hi = max_radius / 1024.0;
  while (!(profile(hi) >= level)) {
    if (hi >= max_radius) throw Error(ErrorCode::BracketFailure, "no crossing below the search radius");
    lo = hi;
    hi = std::min(2.0 * hi, max_radius);
  }
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (profile(mid) < level)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(profile(lo) - level) < std::abs(profile(hi) - level) ? lo : hi;
}

double ray_crossing(const std::function<double(const Vec&)>& level_fn, const Vec& direction, double level,
                    double max_radius) {
  return ray_crossing([&](double r) { return level_fn(r * direction); }, level, max_radius);
}

DirectionGrid mesh_grid(int dim, int resolution) {
  if (dim == 2) {
    if (resolution < 16) throw Error(ErrorCode::InvalidArgument, "2D mesh resolution must be >= 16");
    return circle_grid(resolution);
  }
  if (dim == 3) {
    if (resolution < 2) throw Error(ErrorCode::InvalidArgument, "3D icosphere level must be >= 2");
    return icosphere(resolution);
  }
  throw Error(ErrorCode::InvalidArgument, "meshing supports dimensions 2 and 3");
}

namespace {

BoundaryMesh empty_mesh(int dim, int resolution, DirectionGrid grid) {
  BoundaryMesh mesh;
  mesh.dim = dim;
  mesh.resolution = resolution;
  mesh.directions = std::move(grid.directions);
  mesh.facets = std::move(grid.cells);
  mesh.radii.assign(mesh.directions.size(), 0.0);
  mesh.agreement.assign(mesh.facets.size(), 1);
  return mesh;
}

std::vector<double> direction_gauges(const BallBody& body, const Vec& u) {
  std::vector<double> mus(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) mus[i] = ball_gauge(body.ball(i), u);
  return mus;
}

}  // namespace

BoundaryMesh boundary_mesh(const BallBody& body, int resolution, kernels::Exec exec) {
  BoundaryMesh mesh = empty_mesh(body.dim(), resolution, mesh_grid(body.dim(), resolution));
  const double max_radius = 20.0 * body.radius();
  kernels::for_each_index(
      mesh.directions.size(),
      [&](std::size_t i) {
        const auto mus = direction_gauges(body, mesh.directions[i]);
        double mu = 0.0;
        for (double m : mus) mu = std::max(mu, m);
        mesh.radii[i] = ray_crossing([mu](double r) { return r * mu; }, 1.0, max_radius);
      },
      exec);
  return mesh;
}

BoundaryMesh boundary_mesh(const HalfspaceBody& body, int resolution) {
  BoundaryMesh mesh = empty_mesh(body.dim(), resolution, mesh_grid(body.dim(), resolution));
  kernels::for_each_index(mesh.directions.size(),
                          [&](std::size_t i) { mesh.radii[i] = 1.0 / body.gauge(mesh.directions[i]); });
  return mesh;
}

void flag_agreement(BoundaryMesh& mesh, const BlendedGauge& gauge, double scale, kernels::Exec exec) {
  std::vector<char> at_vertex(mesh.radii.size());
  kernels::for_each_index(
      at_vertex.size(), [&](std::size_t i) { at_vertex[i] = agreement_indicator(gauge, scale * mesh.vertex(i)); },
      exec);
  const int corners = mesh.dim == 2 ? 2 : 3;
  kernels::for_each_index(
      mesh.facets.size(),
      [&](std::size_t f) {
        bool agree = agreement_indicator(gauge, scale * mesh.facet_centroid(f));
        for (int k = 0; k < corners; ++k) agree = agree && at_vertex[mesh.facets[f][k]];
        mesh.agreement[f] = agree ? 1 : 0;
      },
      exec);
}

BoundaryMesh level_set_mesh(const BlendedGauge& gauge, double level, int resolution, kernels::Exec exec) {
  const BallBody& body = gauge.body();
  BoundaryMesh mesh = empty_mesh(body.dim(), resolution, mesh_grid(body.dim(), resolution));
  const double max_radius = 20.0 * body.radius() * std::max(1.0, level);
  kernels::for_each_index(
      mesh.directions.size(),
      [&](std::size_t i) {
        const auto mus = direction_gauges(body, mesh.directions[i]);
        std::vector<double> scaled(mus.size());
        mesh.radii[i] = ray_crossing(
            [&](double r) {
              for (std::size_t k = 0; k < mus.size(); ++k) scaled[k] = r * mus[k];
              return std::sqrt(blended_value_from_gauges(gauge, scaled));
            },
            level, max_radius);
      },
      exec);
  flag_agreement(mesh, gauge, 1.0, exec);
  return mesh;
}

BoundaryMesh boundary_mesh(const SmoothedBody& body, int resolution, kernels::Exec exec) {
  BoundaryMesh mesh = level_set_mesh(body.gauge, body.t0, resolution, exec);
  for (auto& r : mesh.radii) r /= body.t0;
  return mesh;
}

double hausdorff_measure(const BoundaryMesh& mesh, FacetFilter filter) {
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
    const bool agree = mesh.agreement[f] != 0;
    if (filter == FacetFilter::Agree && !agree) continue;
    if (filter == FacetFilter::Disagree && agree) continue;
    total += mesh.facet_measure(f);
  }
  return total;
}

SymmetricDifference symmetric_difference(const BoundaryMesh& w_mesh, const BoundaryMesh& we_mesh, double match_tol) {
  if (w_mesh.dim != we_mesh.dim || w_mesh.directions.size() != we_mesh.directions.size() ||
      w_mesh.facets != we_mesh.facets)
    throw Error(ErrorCode::GridMismatch, "meshes must share the same direction grid");
  for (std::size_t i = 0; i < w_mesh.directions.size(); ++i)
    if (w_mesh.directions[i] != we_mesh.directions[i])
      throw Error(ErrorCode::GridMismatch, "meshes must share the same direction grid");

  SymmetricDifference out;
  const int corners = w_mesh.dim == 2 ? 2 : 3;
  for (std::size_t f = 0; f < w_mesh.facets.size(); ++f) {
    bool mismatch = false;
    for (int k = 0; k < corners; ++k) {
      const auto v = static_cast<std::size_t>(w_mesh.facets[f][k]);
      if (std::abs(w_mesh.radii[v] - we_mesh.radii[v]) > match_tol) mismatch = true;
    }
    const bool flagged = we_mesh.agreement[f] == 0;
    const double both = w_mesh.facet_measure(f) + we_mesh.facet_measure(f);
    if (flagged) out.by_flag += both;
    if (mismatch) out.by_radius += both;
    if (flagged || mismatch) {
      out.measure += both;
      ++out.facets;
    }
  }
  return out;
}

double symmetric_difference_measure(const BoundaryMesh& w_mesh, const BoundaryMesh& we_mesh, double match_tol) {
  return symmetric_difference(w_mesh, we_mesh, match_tol).measure;
}

}  // namespace convexsmooth
