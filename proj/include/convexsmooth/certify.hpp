#pragma once

#include <random>
#include <string>
#include <vector>

#include "convexsmooth/core.hpp"

namespace convexsmooth {

/// Absolute margin below which a certificate sample counts as a violation.
inline constexpr double kCertifyTolerance = 1e-9;

enum class Condition {
  Eq39,                     // subgradient inequality with modulus eta
  BallSupport,              // (b) supporting R-ball at every boundary point
  BallFamily,               // (c) W is an intersection of R-balls
  GaugeSqHessian,           // (d) mu^2 has Hessian >= 1/(2R^2)
  LevelSet,                 // (e) sublevel set of a strongly convex function
  HalfspaceReconstruction,  // W = intersection of its supporting halfspaces
};

std::string to_string(Condition c);

struct Witness {
  Vec point;
  Vec other;  // second point of the pair when the condition is pairwise; may be empty
  double margin = 0.0;
};

struct CertificateReport {
  Condition condition = Condition::Eq39;
  bool passed = false;
  double constant = 0.0;
  Witness worst_witness;
  std::size_t samples = 0;
};

/// One sample of a function u: the point, its value, and one subgradient.
struct SubgradientSample {
  Vec x;
  double value = 0.0;
  Vec xi;
};

/// Checks u(y) >= u(x) + <xi, y - x> + (eta/2)|y - x|^2 over every ordered
/// pair of distinct samples. One subgradient per point suffices.
CertificateReport eq39_certificate(const std::vector<SubgradientSample>& points, double eta);

/// Constants of a finite family of graph patches covering a boundary.
struct PatchParams {
  double L = 0.0;     // Lipschitz bound on the patch functions
  double eta = 0.0;   // common strong-convexity modulus
  double r = 0.0;     // largest patch radius
  double r0 = 0.0;    // smallest patch radius
  double diam = 0.0;  // upper bound on diam(W)
};

/// sqrt(1 + L^2) * max{(1 + eta^2 r^2 / 4 + L^2 + eta L r) / eta, diam,
/// diam^2 / (eta r0^2)}: the radius of balls that contain W and touch each
/// patch point.
double enclosing_radius(const PatchParams& p);

/// Supporting-ball test: for `samples` boundary points y with outward normal
/// nu(y), every boundary sample z must satisfy |z - (y - R nu(y))| <= R.
CertificateReport ball_support_check(const Body& body, double R, int samples);

/// Checks that all sampled body points lie in every generating ball.
CertificateReport ball_family_check(const BallBody& body, int samples);

/// Minimum eigenvalue of D^2 mu_a^2 at the maximizing member over random
/// ridge-free points; passes when all are >= 1/(2R^2) - tolerance.
/// Throws NotBallBody for a halfspace body.
CertificateReport gauge_sq_hessian_check(const Body& body, int samples, std::mt19937_64& rng);

/// R = L / eta: sublevel sets of an eta-strongly convex, L-Lipschitz function
/// have supporting balls of this radius.
double level_set_radius(double L, double eta);

/// Realizes W as {mu^2 <= 1}: runs eq39 on mu^2 with eta = 1/(2R^2) at random
/// points of B(0, 2R) (condition Eq39), and the supporting-ball test with
/// radius L / eta (condition LevelSet).
CertificateReport gauge_sq_eq39_check(const BallBody& body, int samples, std::mt19937_64& rng);
CertificateReport level_set_check(const BallBody& body, int samples);

/// f(z) = -sqrt(R^2 - |w|^2) + const with w = z - y + R xi: the lower cap of
/// a supporting sphere written as a graph over the tangent plane.
Mat cap_graph_hessian(double R, const Vec& w);
double cap_graph_value(double R, const Vec& w);

/// Both eigenvalue families R^2/(R^2-|w|^2)^{3/2} and 1/(R^2-|w|^2)^{1/2}
/// must be >= 1/R at w = offset + R xi_y for every offset. Offsets leaving the
/// open cap raise DomainViolation.
CertificateReport cap_graph_hessian_check(double R, const Vec& xi_y, const std::vector<Vec>& z_offsets);

/// One-sided Hausdorff distance from the intersection of `normal_samples`
/// supporting halfspaces to W. The halfspaces are taken at boundary points
/// along an evenly spaced direction grid.
double halfspace_reconstruction_gap(const BallBody& body, int normal_samples);

/// Report wrapper: passes when every boundary sample satisfies all sampled
/// halfspaces; constant records the gap.
CertificateReport halfspace_reconstruction_check(const BallBody& body, int normal_samples);

/// A convex body bounded below by the graph of (eta/2)|t|^2 + <tilt, t> and
/// above by the plane s = cap; its patch is the graph over |t| < r.
struct GraphPatch {
  double eta = 1.0;
  Vec tilt;       // (n-1)-vector
  double r = 0.5;
  double cap = 1.0;

  int dim() const { return static_cast<int>(tilt.size()) + 1; }
  double value(const Vec& t) const { return 0.5 * eta * t.squaredNorm() + tilt.dot(t); }
  Vec gradient(const Vec& t) const { return eta * t + tilt; }
  bool contains(const Vec& p) const;
  /// Points of the body: lower graph, upper cap, and interior.
  std::vector<Vec> sample_points(int count, std::mt19937_64& rng) const;
  /// L from the patch, r = r0, diam from dense boundary sampling plus a
  /// discretization margin.
  PatchParams params() const;
};

/// For `anchors` random points x of the patch, checks that every sampled body
/// point lies in B(z - R n_xi, R) with z = (x, g(x)), xi = grad g(x), R from
/// enclosing_radius. Reported under Condition::BallSupport.
CertificateReport patch_containment_check(const GraphPatch& patch, int anchors, int body_samples,
                                          std::mt19937_64& rng);

}  // namespace convexsmooth
