#pragma once

#include <algorithm>

namespace mpsddg {

/// Uniform partition of [left, right] into `cells` intervals.
struct Mesh1D {
  double left = 0.0;
  double right = 1.0;
  int cells = 0;
  double h = 0.0;

  double center(int j) const { return left + (j + 0.5) * h; }
  /// Interface k sits between cells k-1 and k; k = 0..cells.
  double interface(int k) const { return k == cells ? right : left + k * h; }
  double to_physical(int j, double xi) const { return center(j) + 0.5 * h * xi; }
  /// Cell index containing x (clamped to the mesh) and the reference coordinate.
  int locate(double x, double& xi) const {
    int j = static_cast<int>((x - left) / h);
    j = std::clamp(j, 0, cells - 1);
    xi = 2.0 * (x - center(j)) / h;
    return j;
  }
};

struct Mesh2D {
  Mesh1D x;
  Mesh1D y;

  int nx() const { return x.cells; }
  int ny() const { return y.cells; }
  double dx() const { return x.h; }
  double dy() const { return y.h; }
  int size() const { return x.cells * y.cells; }
  int index(int i, int j) const { return j * x.cells + i; }
  double area() const { return x.h * y.h; }
  /// kappa = max(dx/dy, dy/dx)
  double aspect() const { return std::max(x.h / y.h, y.h / x.h); }
};

Mesh1D build_mesh_1d(double left, double right, int cells);
Mesh2D build_mesh_2d(double x_left, double x_right, int nx, double y_left, double y_right, int ny);

}  // namespace mpsddg
