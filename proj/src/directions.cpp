#include "convexsmooth/directions.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace convexsmooth {

DirectionGrid circle_grid(int count) {
  if (count < 3) throw Error(ErrorCode::InvalidArgument, "circle grid needs at least 3 directions");
  DirectionGrid grid;
  grid.dim = 2;
  grid.directions.reserve(count);
  grid.cells.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / count;
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    grid.directions.push_back(std::move(u));
    grid.cells.push_back({k, (k + 1) % count, -1});
  }
  return grid;
}

DirectionGrid icosphere(int level) {
  if (level < 0 || level > 8) throw Error(ErrorCode::InvalidArgument, "icosphere level must be in [0, 8]");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> verts = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
      {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
      verts.push_back((verts[a] + verts[b]).normalized());
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  DirectionGrid grid;
  grid.dim = 3;
  grid.directions.reserve(verts.size());
  for (const auto& v : verts) grid.directions.emplace_back(Vec(v));
  grid.cells = std::move(faces);
  return grid;
}

std::vector<Vec> fibonacci_sphere(int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "need at least one direction");
  std::vector<Vec> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * k;
    Vec u(3);
    u << r * std::cos(phi), r * std::sin(phi), z;
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<Vec> sample_directions(int dim, int count) {
  if (dim == 2) return circle_grid(count).directions;
  if (dim == 3) return fibonacci_sphere(count);
  throw Error(ErrorCode::InvalidArgument, "direction sampling supports dimensions 2 and 3");
}

}  // namespace convexsmooth
