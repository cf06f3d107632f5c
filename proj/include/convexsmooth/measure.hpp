#pragma once

#include <array>
#include <functional>
#include <vector>

#include "convexsmooth/core.hpp"
#include "convexsmooth/directions.hpp"
#include "convexsmooth/kernels.hpp"
#include "convexsmooth/smooth.hpp"

namespace convexsmooth {

/// Radial discretization of the boundary of a star-shaped body: vertex i is
/// radii[i] * directions[i]; facets are segments (2D) or triangles (3D) over
/// the direction grid's cells.
struct BoundaryMesh {
  int dim = 0;
  int resolution = 0;
  std::vector<Vec> directions;
  std::vector<double> radii;
  std::vector<std::array<int, 3>> facets;
  std::vector<char> agreement;  // per facet

  Vec vertex(std::size_t i) const { return radii[i] * directions[i]; }
  std::vector<Vec> vertices() const;
  double facet_measure(std::size_t f) const;
  Vec facet_centroid(std::size_t f) const;
  /// Unit normal of the facet, oriented away from the origin.
  Vec facet_normal(std::size_t f) const;
  /// Pairs of facets sharing a vertex (2D) or an edge (3D).
  std::vector<std::pair<std::size_t, std::size_t>> adjacent_facets() const;
};

/// Function of the radius along a fixed ray.
using RayProfile = std::function<double(double)>;

/// Radius r with profile(r) = level, found by doubling out from a small
/// radius and then bisecting to machine precision. Needs profile(0) < level
/// and a crossing below max_radius, else BracketFailure.
double ray_crossing(const RayProfile& profile, double level, double max_radius);

/// Same, for a function of points sampled along r * direction.
double ray_crossing(const std::function<double(const Vec&)>& level_fn, const Vec& direction, double level,
                    double max_radius);

/// Direction grid for a mesh: `resolution` angles in 2D (>= 16) or an
/// icosphere of that level in 3D (>= 2).
DirectionGrid mesh_grid(int dim, int resolution);

/// Boundary of W (level 1 of mu_W). Agreement flags are all set.
BoundaryMesh boundary_mesh(const BallBody& body, int resolution, kernels::Exec exec = kernels::Exec::Parallel);
BoundaryMesh boundary_mesh(const HalfspaceBody& body, int resolution);

/// The level set {h = level} of a blended gauge, flagged by flag_agreement.
BoundaryMesh level_set_mesh(const BlendedGauge& gauge, double level, int resolution,
                            kernels::Exec exec = kernels::Exec::Parallel);

/// Boundary of W_eps: the level-t0 mesh with radii divided by t0. Flags are
/// those of the level-t0 mesh.
BoundaryMesh boundary_mesh(const SmoothedBody& body, int resolution, kernels::Exec exec = kernels::Exec::Parallel);

/// Recomputes mesh.agreement: a facet agrees when the indicator holds at
/// scale * p for its centroid and every vertex p, so agreeing facets lie
/// entirely off the blend tube.
void flag_agreement(BoundaryMesh& mesh, const BlendedGauge& gauge, double scale,
                    kernels::Exec exec = kernels::Exec::Parallel);

enum class FacetFilter { All, Agree, Disagree };

/// Sum of facet lengths (2D) or areas (3D) over the facets passing `filter`.
double hausdorff_measure(const BoundaryMesh& mesh, FacetFilter filter = FacetFilter::All);

struct SymmetricDifference {
  double measure = 0.0;       // flag OR radius mismatch (the reported value)
  double by_flag = 0.0;       // disagreement flags only
  double by_radius = 0.0;     // radius mismatch only
  std::size_t facets = 0;     // facets counted
};

/// H^{n-1}(bd W symmetric-difference bd W_eps) on a shared grid: every facet
/// whose vertex radii differ by more than match_tol, or whose W_eps facet is
/// flagged disagree, contributes its measure from both meshes.
SymmetricDifference symmetric_difference(const BoundaryMesh& w_mesh, const BoundaryMesh& we_mesh, double match_tol);
double symmetric_difference_measure(const BoundaryMesh& w_mesh, const BoundaryMesh& we_mesh, double match_tol);

}  // namespace convexsmooth
