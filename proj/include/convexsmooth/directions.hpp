#pragma once

#include <array>
#include <vector>

#include "convexsmooth/types.hpp"

namespace convexsmooth {

/// A unit-vector grid together with the simplices that tile it: consecutive
/// pairs around the circle in 2D, spherical triangles in 3D.
struct DirectionGrid {
  int dim = 0;
  std::vector<Vec> directions;
  std::vector<std::array<int, 3>> cells;  // 2D cells use the first two slots
};

/// `count` equally spaced angles 2*pi*k/count; cell k joins k and k+1.
DirectionGrid circle_grid(int count);

/// Icosahedron subdivided `level` times, vertices pushed to the unit sphere.
/// Level L has 10*4^L + 2 vertices and 20*4^L faces.
DirectionGrid icosphere(int level);

/// Quasi-uniform spiral points on S^2 (no cells).
std::vector<Vec> fibonacci_sphere(int count);

/// `count` sample directions in dimension 2 or 3 (circle grid or spiral).
std::vector<Vec> sample_directions(int dim, int count);

}  // namespace convexsmooth
