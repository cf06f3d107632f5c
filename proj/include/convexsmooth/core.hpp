#pragma once

#include <variant>
#include <vector>

#include "convexsmooth/types.hpp"

namespace convexsmooth {

/// Absolute slack on |x - a| - R used by every membership test.
inline constexpr double kMembershipSlack = 1e-12;

/// Closed ball B(center, radius).
struct Ball {
  Vec center;
  double radius = 0.0;

  /// R^2 - |a|^2; positive exactly when the origin is interior to the ball.
  double k() const { return radius * radius - center.squaredNorm(); }
};

/// W = intersection of closed balls B(a_i, R), all with the same radius.
/// Construction validates that the origin is interior (max |a_i| < R).
class BallBody {
 public:
  BallBody(double radius, std::vector<Vec> centers);

  double radius() const { return radius_; }
  int dim() const { return dim_; }
  const std::vector<Vec>& centers() const { return centers_; }
  std::size_t size() const { return centers_.size(); }
  Ball ball(std::size_t i) const { return {centers_[i], radius_}; }

  /// rho = R - max |a_i|; B(0, rho) is contained in W.
  double interior_radius() const { return interior_radius_; }

  /// Same radius, one more center.
  BallBody with_center(Vec center) const;

 private:
  double radius_;
  std::vector<Vec> centers_;
  int dim_;
  double interior_radius_;
};

struct Halfspace {
  Vec normal;  // unit, outward
  double offset = 0.0;
};

/// W = intersection of {x : <n_i, x> <= o_i}. Used as a non-strongly-convex
/// fixture. Offsets must be positive (open ball around the origin) and the
/// normals must positively span so that W is bounded.
class HalfspaceBody {
 public:
  explicit HalfspaceBody(std::vector<Halfspace> halfspaces);

  int dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  /// max_i <n_i, x> / o_i, clamped below at 0.
  double gauge(const Vec& x) const;

  /// Axis-aligned box [-half_width, half_width]^dim.
  static HalfspaceBody box(int dim, double half_width);

 private:
  std::vector<Halfspace> halfspaces_;
  int dim_;
};

using Body = std::variant<BallBody, HalfspaceBody>;

int body_dim(const Body& body);

/// Outward unit normal lifted to the graph of a function with subgradient xi:
/// (xi, -1) / sqrt(1 + |xi|^2).
struct NormalLift {
  Vec xi;
  Vec lift;
};

NormalLift normal_lift(const Vec& xi);

bool contains(const BallBody& body, const Vec& x);
bool contains(const HalfspaceBody& body, const Vec& x);

/// Distance from 0 to the sphere of `ball` along unit direction u.
double ball_exit_radius(const Ball& ball, const Vec& u);

/// Distance from 0 to the boundary of W along unit direction u.
double exit_radius(const BallBody& body, const Vec& u);

/// Indices of the balls whose sphere passes through y (within `tol` on
/// |y - a_i| - R).
std::vector<std::size_t> active_balls(const BallBody& body, const Vec& y, double tol = 1e-9);

/// Normalized average of the active spheres' outward normals at y; lies in
/// the normal cone N_W(y).
Vec outward_normal(const BallBody& body, const Vec& y);
Vec outward_normal(const HalfspaceBody& body, const Vec& y);

/// Certified upper bound on diam(W), never above 2R. The boundary is sampled
/// along a direction grid; the largest pairwise distance is inflated by twice
/// the largest distance from a boundary point to its nearest sample, which is
/// bounded with the supporting lines (2D) or the sagitta of the R-spheres (3D).
double diameter(const BallBody& body);

}  // namespace convexsmooth
