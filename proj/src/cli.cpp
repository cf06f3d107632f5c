#include "convexsmooth/cli.hpp"

#include <Eigen/Eigenvalues>

#include <fstream>
#include <iostream>
#include <random>

#include "convexsmooth/certify.hpp"
#include "convexsmooth/gauge.hpp"
#include "convexsmooth/io.hpp"
#include "convexsmooth/kernels.hpp"
#include "convexsmooth/measure.hpp"
#include "convexsmooth/project.hpp"

namespace convexsmooth::cli {

namespace {

using io::json;

constexpr int kDefaultCertifySamples = 256;
constexpr int kProbeRays = 360;
constexpr double kProbeTolerance = 1e-6;
constexpr double kMatchTolFactor = 1e-10;

struct Outcome {
  json report;
  bool passed = true;
};

void write_report(const std::filesystem::path& dir, const json& report) {
  std::ofstream out(dir / "report.json");
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + (dir / "report.json").string());
  out << report.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidBody, std::string("malformed JSON: ") + e.what());
  }
}

const BallBody& require_ball_body(const Body& body) {
  if (const auto* b = std::get_if<BallBody>(&body)) return *b;
  throw Error(ErrorCode::NotBallBody, "this command needs a ball body");
}

Outcome certify(const RunConfig& cfg, const Body& body) {
  const int samples = cfg.resolution > 0 ? cfg.resolution : kDefaultCertifySamples;
  std::mt19937_64 rng(cfg.seed);
  std::vector<CertificateReport> reports;
  if (const auto* balls = std::get_if<BallBody>(&body)) {
    reports.push_back(ball_support_check(body, balls->radius(), samples));
    reports.push_back(ball_family_check(*balls, samples));
    reports.push_back(gauge_sq_hessian_check(body, samples, rng));
    reports.push_back(level_set_check(*balls, samples));
    reports.push_back(gauge_sq_eq39_check(*balls, samples, rng));
    reports.push_back(halfspace_reconstruction_check(*balls, samples));
  } else {
    for (double R : {1.0, 10.0, 100.0}) reports.push_back(ball_support_check(body, R, samples));
  }
  Outcome out;
  json list = json::array();
  for (const auto& r : reports) {
    list.push_back(io::to_json(r));
    out.passed = out.passed && r.passed;
  }
  out.report = {{"command", "certify"},
                {"body", std::holds_alternative<BallBody>(body) ? "ball" : "halfspace"},
                {"seed", cfg.seed},
                {"samples", samples},
                {"reports", list},
                {"passed", out.passed}};
  return out;
}

double min_hessian_eigenvalue(const SmoothedBody& sb, const BoundaryMesh& we_mesh) {
  std::vector<double> eig(we_mesh.radii.size());
  kernels::for_each_index(eig.size(), [&](std::size_t i) {
    const BlendEval e = blended_gauge_sq(sb.gauge, sb.t0 * we_mesh.vertex(i));
    eig[i] = Eigen::SelfAdjointEigenSolver<Mat>(e.hess, Eigen::EigenvaluesOnly).eigenvalues()(0);
  });
  return *std::min_element(eig.begin(), eig.end());
}

Outcome smooth(const RunConfig& cfg, const Body& body) {
  const BallBody& balls = require_ball_body(body);
  SmoothingOptions opt;
  opt.delta = cfg.delta;
  opt.epsilon = cfg.epsilon;
  opt.order = cfg.order;
  opt.scan = cfg.scan;
  opt.resolution = cfg.resolution;
  const int resolution = opt.resolution > 0 ? opt.resolution : default_resolution(balls.dim());

  Outcome out;
  SmoothedBody sb = [&] {
    try {
      return extract_smoothed_body(balls, opt);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ShrinkDelta) throw;
      out.report = {{"command", "smooth"}, {"error", to_string(e.code())}, {"message", e.what()}, {"passed", false}};
      out.passed = false;
      return SmoothedBody{BlendedGauge(balls, 1.0, opt.order), 1.0, {}};
    }
  }();
  if (!out.passed) return out;

  const BoundaryMesh w_mesh = boundary_mesh(balls, resolution);
  const BoundaryMesh we_mesh = boundary_mesh(sb, resolution);
  const SymmetricDifference sd = symmetric_difference(w_mesh, we_mesh, kMatchTolFactor * balls.radius());
  const double boundary = hausdorff_measure(w_mesh);
  const double bound = cfg.epsilon * boundary;
  const double min_eig = min_hessian_eigenvalue(sb, we_mesh);

  out.passed = sd.measure < bound && sb.checks.contained && sb.checks.tube_ok;
  out.report = {{"command", "smooth"},
                {"t0", sb.t0},
                {"delta", sb.gauge.delta()},
                {"order", io::to_string(sb.gauge.order())},
                {"epsilon", cfg.epsilon},
                {"epsilon_bound", bound},
                {"resolution", resolution},
                {"symdiff_measure", sd.measure},
                {"boundary_measure", boundary},
                {"hessian_min_eig", min_eig},
                {"hessian_floor", 1.0 / (2.0 * balls.radius() * balls.radius())},
                {"contained", sb.checks.contained},
                {"tube_ok", sb.checks.tube_ok},
                {"tube_min", sb.checks.tube_min},
                {"tube_max", sb.checks.tube_max},
                {"passed", out.passed}};
  // Flag-only and radius-only measures are reported when they disagree by more than 1%.
  const double hi = std::max(sd.by_flag, sd.by_radius);
  if (hi > 0.0 && std::abs(sd.by_flag - sd.by_radius) > 0.01 * hi) {
    out.report["symdiff_by_flag"] = sd.by_flag;
    out.report["symdiff_by_radius"] = sd.by_radius;
  }
  out.report["mesh"] = io::write_mesh(we_mesh, cfg.output, "smoothed_boundary").filename().string();
  std::ofstream(cfg.output / "smoothed_body.json") << io::to_json(sb).dump(2) << '\n';
  return out;
}

Outcome measure(const RunConfig& cfg, const Body& body) {
  const int dim = body_dim(body);
  const int resolution = cfg.resolution > 0 ? cfg.resolution : default_resolution(dim);
  const BoundaryMesh mesh =
      std::visit([&](const auto& b) { return boundary_mesh(b, resolution); }, body);
  Outcome out;
  out.report = {{"command", "measure"},
                {"dim", dim},
                {"resolution", resolution},
                {"boundary_measure", hausdorff_measure(mesh)},
                {"vertices", mesh.radii.size()},
                {"facets", mesh.facets.size()}};
  if (const auto* balls = std::get_if<BallBody>(&body)) out.report["diameter"] = diameter(*balls);
  out.report["mesh"] = io::write_mesh(mesh, cfg.output, "boundary").filename().string();
  out.report["passed"] = true;
  return out;
}

Outcome probe(const RunConfig& cfg) {
  const json j = read_json(cfg.input);
  if (!j.is_object() || !j.contains("inner") || !j.contains("outer") || j.size() != 2)
    throw Error(ErrorCode::InvalidBody, "probe input must be {\"inner\": ball body, \"outer\": body}");
  const BallBody inner = io::parse_ball_body(j.at("inner"));
  const Body outer = io::parse_body(j.at("outer"));
  if (body_dim(outer) != inner.dim()) throw Error(ErrorCode::InvalidBody, "inner and outer dimensions differ");
  const int resolution = cfg.resolution > 0 ? cfg.resolution : default_resolution(inner.dim());
  const BoundaryMesh mesh = std::visit([&](const auto& b) { return boundary_mesh(b, resolution); }, outer);
  const ProbeResult r = boundary_surjectivity_probe(inner, mesh, kProbeRays);
  Outcome out;
  out.passed = r.max_gap <= kProbeTolerance;
  out.report = {{"command", "probe"},
                {"max_gap", r.max_gap},
                {"tolerance", kProbeTolerance},
                {"rays", r.rays},
                {"hits", r.hits},
                {"worst_point", io::to_json(r.worst_point)},
                {"worst_hit", io::to_json(r.worst_hit)},
                {"passed", out.passed}};
  return out;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "certify") return Command::Certify;
  if (name == "smooth") return Command::Smooth;
  if (name == "measure") return Command::Measure;
  if (name == "probe") return Command::Probe;
  throw Error(ErrorCode::InvalidArgument, "unknown command '" + name + "'");
}

int run(const RunConfig& cfg, std::ostream& err) {
  kernels::apply_thread_cap();
  try {
    if (cfg.command == Command::Smooth && !(cfg.epsilon > 0.0 && cfg.epsilon < 0.25))
      throw Error(ErrorCode::DegenerateEpsilon, "--epsilon must lie in (0, 1/4)");
    if (cfg.delta < 0.0) throw Error(ErrorCode::InvalidArgument, "--delta must be positive (0 selects the default)");
    if (!std::filesystem::is_directory(cfg.output))
      throw Error(ErrorCode::InvalidArgument, "output directory does not exist: " + cfg.output.string());

    Outcome out;
    if (cfg.command == Command::Probe) {
      out = probe(cfg);
    } else {
      const Body body = io::load_body(cfg.input);
      switch (cfg.command) {
        case Command::Certify: out = certify(cfg, body); break;
        case Command::Smooth: out = smooth(cfg, body); break;
        default: out = measure(cfg, body); break;
      }
    }
    write_report(cfg.output, out.report);
    return out.passed ? kExitOk : kExitFailed;
  } catch (const std::exception& e) {
    err << "convexsmooth: " << e.what() << '\n';
    return kExitInput;
  }
}

int run(const RunConfig& config) { return run(config, std::cerr); }

}  // namespace convexsmooth::cli
