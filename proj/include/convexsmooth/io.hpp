#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

#include "convexsmooth/certify.hpp"
#include "convexsmooth/core.hpp"
#include "convexsmooth/measure.hpp"
#include "convexsmooth/smooth.hpp"

namespace convexsmooth::io {

using json = nlohmann::json;

/// {"dim": n, "radius": R, "centers": [[...], ...]} or
/// {"halfspaces": [{"normal": [...], "offset": o}, ...]}. Unknown keys,
/// wrong types and violated invariants raise InvalidBody.
Body parse_body(const json& j);
BallBody parse_ball_body(const json& j);
Body load_body(const std::filesystem::path& path);

json to_json(const BallBody& body);
json to_json(const HalfspaceBody& body);
json to_json(const Body& body);
json to_json(const Vec& v);
json to_json(const CertificateReport& report);

/// {"body": ..., "delta": d, "order": "C11"|"C2", "t0": t}
json to_json(const SmoothedBody& body);
SmoothedBody parse_smoothed_body(const json& j);

std::string to_string(BlendOrder order);
BlendOrder parse_order(const std::string& text);  // accepts c11/C11/c2/C2

/// 2D: {"points": [[x, y], ...]} in grid order (closed polyline).
json polyline_json(const BoundaryMesh& mesh);

/// 3D: "OFF", then "<vertices> <faces> 0", then one vertex per line, then
/// "3 i j k" per triangle.
std::string off_text(const BoundaryMesh& mesh);

/// Writes polyline JSON (2D) or OFF (3D); returns the file name used.
std::filesystem::path write_mesh(const BoundaryMesh& mesh, const std::filesystem::path& dir, const std::string& stem);

}  // namespace convexsmooth::io
