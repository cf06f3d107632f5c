#include <algorithm>
#include <cmath>
#include <limits>

#include "convexsmooth/gauge.hpp"
#include "convexsmooth/measure.hpp"
#include "convexsmooth/smooth.hpp"

namespace convexsmooth {

namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.25))
    throw Error(ErrorCode::DegenerateEpsilon, "epsilon must lie in (0, 1/4)");
}

}  // namespace

int default_resolution(int dim) { return dim == 2 ? 4096 : 4; }

LevelScan scan_regular_values(const BlendedGauge& gauge, double epsilon, int scan, int resolution) {
  require_epsilon(epsilon);
  if (scan < 8) throw Error(ErrorCode::InvalidArgument, "scan must be >= 8");
  LevelScan out;
  out.levels.resize(scan);
  out.disagree_measure.resize(scan);
  out.level_measure.resize(scan);
  for (int k = 0; k < scan; ++k) {
    const double t = 1.0 + epsilon * (k + 1) / (scan + 1);
    const BoundaryMesh mesh = level_set_mesh(gauge, t, resolution);
    out.levels[k] = t;
    out.disagree_measure[k] = hausdorff_measure(mesh, FacetFilter::Disagree);
    out.level_measure[k] = hausdorff_measure(mesh, FacetFilter::All);
  }
  const double best = *std::min_element(out.disagree_measure.begin(), out.disagree_measure.end());
  const double mid = 1.0 + 0.5 * epsilon;
  double best_offset = std::numeric_limits<double>::infinity();
  for (int k = 0; k < scan; ++k) {
    if (out.disagree_measure[k] != best) continue;
    const double off = std::abs(out.levels[k] - mid);
    if (off < best_offset) {
      best_offset = off;
      out.chosen = static_cast<std::size_t>(k);
    }
  }
  return out;
}

double select_regular_value(const BlendedGauge& gauge, double epsilon, int scan, int resolution) {
  const LevelScan s = scan_regular_values(gauge, epsilon, scan, resolution);
  return s.levels[s.chosen];
}

SmoothedBody extract_smoothed_body(const BallBody& body, const SmoothingOptions& options) {
  require_epsilon(options.epsilon);
  const double R = body.radius();
  const double delta = options.delta > 0.0 ? options.delta : 1e-3 * R * R;
  const int resolution = options.resolution > 0 ? options.resolution : default_resolution(body.dim());
  BlendedGauge gauge(body, delta, options.order);

  BoundaryMesh w_mesh = boundary_mesh(body, resolution);
  flag_agreement(w_mesh, gauge, 1.0);
  SmoothingChecks checks;
  checks.boundary_measure = hausdorff_measure(w_mesh, FacetFilter::All);
  checks.ridge_measure = hausdorff_measure(w_mesh, FacetFilter::Disagree);
  if (checks.ridge_measure >= 0.25 * options.epsilon * checks.boundary_measure)
    throw Error(ErrorCode::ShrinkDelta, "ridge tube measure reaches eps/4 of the boundary measure; shrink delta");

  const double t0 = select_regular_value(gauge, options.epsilon, options.scan, resolution);
  SmoothedBody out{std::move(gauge), t0, checks};

  const BoundaryMesh we_mesh = boundary_mesh(out, resolution);
  std::vector<double> mus(we_mesh.radii.size());
  kernels::for_each_index(mus.size(), [&](std::size_t i) { mus[i] = body_gauge_value(body, we_mesh.vertex(i)); });
  out.checks.tube_min = *std::min_element(mus.begin(), mus.end());
  out.checks.tube_max = *std::max_element(mus.begin(), mus.end());
  out.checks.contained = out.checks.tube_max <= 1.0 + 1e-9;
  out.checks.tube_ok = out.checks.tube_min >= 1.0 - 5.0 * options.epsilon &&
                       out.checks.tube_max <= 1.0 + 5.0 * options.epsilon;
  return out;
}

}  // namespace convexsmooth
