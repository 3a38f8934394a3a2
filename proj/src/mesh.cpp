#include "mpsddg/mesh.hpp"

#include <cmath>
#include <string>

#include "mpsddg/errors.hpp"

namespace mpsddg {

Mesh1D build_mesh_1d(double left, double right, int cells) {
  if (cells < 2) throw ConfigError("mesh needs at least 2 cells, got " + std::to_string(cells));
  if (!(right > left) || !std::isfinite(left) || !std::isfinite(right))
    throw ConfigError("mesh endpoints must satisfy left < right");
  Mesh1D m;
  m.left = left;
  m.right = right;
  m.cells = cells;
  m.h = (right - left) / cells;
  return m;
}

Mesh2D build_mesh_2d(double x_left, double x_right, int nx, double y_left, double y_right, int ny) {
  return Mesh2D{build_mesh_1d(x_left, x_right, nx), build_mesh_1d(y_left, y_right, ny)};
}

}  // namespace mpsddg
