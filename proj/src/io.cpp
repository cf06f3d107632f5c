#include "convexsmooth/io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace convexsmooth::io {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidBody, what); }

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) invalid(what + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) invalid("unknown key '" + key + "' in " + what);
}

double number(const json& j, const std::string& key) {
  if (!j.contains(key)) invalid("missing key '" + key + "'");
  if (!j.at(key).is_number()) invalid("'" + key + "' must be a number");
  return j.at(key).get<double>();
}

Vec vector_of(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) invalid(what + " must be a nonempty array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) invalid(what + " must contain only numbers");
    v(static_cast<Eigen::Index>(k)) = j[k].get<double>();
  }
  return v;
}

}  // namespace

BallBody parse_ball_body(const json& j) {
  require_keys(j, {"dim", "radius", "centers"}, "ball body");
  if (!j.contains("dim") || !j.at("dim").is_number_integer()) invalid("'dim' must be an integer");
  const int dim = j.at("dim").get<int>();
  if (dim < 2) invalid("dim >= 2 violated");
  const double radius = number(j, "radius");
  if (!j.contains("centers") || !j.at("centers").is_array() || j.at("centers").empty())
    invalid("centers must be a nonempty list");
  std::vector<Vec> centers;
  for (const auto& c : j.at("centers")) {
    Vec v = vector_of(c, "center");
    if (v.size() != dim) invalid("every center must have length dim");
    centers.push_back(std::move(v));
  }
  return BallBody(radius, std::move(centers));
}

Body parse_body(const json& j) {
  if (j.is_object() && j.contains("halfspaces")) {
    require_keys(j, {"halfspaces"}, "halfspace body");
    const auto& hs = j.at("halfspaces");
    if (!hs.is_array() || hs.empty()) invalid("halfspaces must be a nonempty list");
    std::vector<Halfspace> out;
    for (const auto& h : hs) {
      require_keys(h, {"normal", "offset"}, "halfspace");
      out.push_back({vector_of(h.value("normal", json()), "normal"), number(h, "offset")});
    }
    return HalfspaceBody(std::move(out));
  }
  return parse_ball_body(j);
}

Body load_body(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
  return parse_body(j);
}

json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

json to_json(const BallBody& body) {
  json centers = json::array();
  for (const auto& c : body.centers()) centers.push_back(to_json(c));
  return {{"dim", body.dim()}, {"radius", body.radius()}, {"centers", centers}};
}

json to_json(const HalfspaceBody& body) {
  json hs = json::array();
  for (const auto& h : body.halfspaces()) hs.push_back({{"normal", to_json(h.normal)}, {"offset", h.offset}});
  return {{"halfspaces", hs}};
}

json to_json(const Body& body) {
  return std::visit([](const auto& b) { return to_json(b); }, body);
}

json to_json(const CertificateReport& report) {
  json witness = {{"point", to_json(report.worst_witness.point)}, {"margin", report.worst_witness.margin}};
  if (report.worst_witness.other.size() > 0) witness["other"] = to_json(report.worst_witness.other);
  return {{"condition", to_string(report.condition)},
          {"passed", report.passed},
          {"constant", report.constant},
          {"worst_witness", witness},
          {"samples", report.samples}};
}

std::string to_string(BlendOrder order) { return order == BlendOrder::C11 ? "C11" : "C2"; }

BlendOrder parse_order(const std::string& text) {
  if (text == "c11" || text == "C11") return BlendOrder::C11;
  if (text == "c2" || text == "C2") return BlendOrder::C2;
  throw Error(ErrorCode::InvalidArgument, "order must be c11 or c2");
}

json to_json(const SmoothedBody& body) {
  return {{"body", to_json(body.gauge.body())},
          {"delta", body.gauge.delta()},
          {"order", to_string(body.gauge.order())},
          {"t0", body.t0}};
}

SmoothedBody parse_smoothed_body(const json& j) {
  require_keys(j, {"body", "delta", "order", "t0"}, "smoothed body");
  if (!j.contains("order") || !j.at("order").is_string()) invalid("'order' must be a string");
  BlendedGauge gauge(parse_ball_body(j.at("body")), number(j, "delta"), parse_order(j.at("order").get<std::string>()));
  const double t0 = number(j, "t0");
  if (!(t0 > 0.0)) invalid("t0 > 0 violated");
  return SmoothedBody{std::move(gauge), t0, {}};
}

json polyline_json(const BoundaryMesh& mesh) {
  json pts = json::array();
  for (std::size_t i = 0; i < mesh.radii.size(); ++i) pts.push_back(to_json(mesh.vertex(i)));
  return {{"points", pts}};
}

std::string off_text(const BoundaryMesh& mesh) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "OFF\n" << mesh.radii.size() << ' ' << mesh.facets.size() << " 0\n";
  for (std::size_t i = 0; i < mesh.radii.size(); ++i) {
    const Vec v = mesh.vertex(i);
    os << v(0) << ' ' << v(1) << ' ' << v(2) << '\n';
  }
  for (const auto& f : mesh.facets) os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  return os.str();
}

std::filesystem::path write_mesh(const BoundaryMesh& mesh, const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::path path = dir / (stem + (mesh.dim == 2 ? ".json" : ".off"));
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  if (mesh.dim == 2)
    out << polyline_json(mesh).dump() << '\n';
  else
    out << off_text(mesh);
  return path;
}

}  // namespace convexsmooth::io
