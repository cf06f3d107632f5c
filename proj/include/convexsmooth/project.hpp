#pragma once

#include "convexsmooth/core.hpp"

namespace convexsmooth {

struct BoundaryMesh;

inline constexpr double kDefaultProjectionTol = 1e-9;
inline constexpr int kDykstraMaxCycles = 100000;

/// Nearest point of a closed ball.
Vec project_ball(const Ball& ball, const Vec& x);

/// Metric projection onto W by Dykstra's alternating projections over the
/// member balls. Converged when successive cycles move by less than tol/10
/// and the iterate is inside every ball within tol.
Vec project_body(const BallBody& body, const Vec& x, double tol = kDefaultProjectionTol);

/// Lip(n) of the outer normal estimated on a mesh: the largest
/// |n_f - n_g| / |c_f - c_g| over adjacent facets f, g (c = centroid).
double normal_lipschitz_raw(const BoundaryMesh& mesh);

/// normal_lipschitz_raw inflated by 10% as a discretization guard.
double normal_lipschitz_estimate(const BoundaryMesh& mesh);

/// Neighborhood {d(x, bd W) < width} union W^c on which the nearest-point
/// map onto the boundary is well defined; width = 1 / (2 Lip(n)).
struct ProjectionDomain {
  double lip_normal = 0.0;
  double width = 0.0;
};

ProjectionDomain projection_domain(const BoundaryMesh& mesh);

/// Nearest point of bd W. Outside W this is project_body; inside, the
/// distance to the boundary is min_i (R - |x - a_i|) and the nearest point is
/// the radial projection onto that sphere. Throws OutsideDomain when x is
/// interior and at least `width` away from the boundary.
Vec boundary_projection(const BallBody& body, const ProjectionDomain& domain, const Vec& x,
                        double tol = kDefaultProjectionTol);
Vec boundary_projection(const BallBody& body, const BoundaryMesh& mesh, const Vec& x);

/// Distance from an interior point to bd W (0 outside W).
double distance_to_boundary(const BallBody& body, const Vec& x);

struct ProbeResult {
  double max_gap = 0.0;
  std::size_t rays = 0;
  std::size_t hits = 0;
  Vec worst_point;  // boundary point of W where the gap is largest
  Vec worst_hit;    // its ray's crossing of the outer boundary
};

/// Casts x + t nu(x) from `samples` boundary points of `inner`, finds where
/// each ray first crosses the outer mesh, projects that crossing back onto
/// `inner`, and reports max |pi(z) - x|. Throws RayMiss on a missed ray or
/// when an outer vertex lies inside `inner`.
ProbeResult boundary_surjectivity_probe(const BallBody& inner, const BoundaryMesh& outer, int samples);

}  // namespace convexsmooth
