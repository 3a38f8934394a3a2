#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpsddg/field.hpp"
#include "mpsddg/fluxes.hpp"

namespace mpsddg {

enum class BoundaryKind { periodic, dirichlet, exact };

struct BoundaryCondition1D {
  BoundaryKind kind = BoundaryKind::periodic;
  double left_value = 0.0;
  double right_value = 0.0;
};

/// M(x) u_t + f(u)_x = (A(x,u) u_x)_x on [x_left, x_right].
struct Problem1D {
  std::string name;
  double x_left = 0.0;
  double x_right = 1.0;
  Function1D weight = [](double) { return 1.0; };
  bool weight_is_constant = true;
  std::function<double(double, double)> diffusivity = [](double, double) { return 1.0; };
  bool diffusivity_depends_on_u = false;
  /// Closed-form max of A over the domain and [c1, c2], if known.
  std::optional<double> diffusivity_bound;
  std::optional<MonotoneFluxSpec> convection;
  Function1D initial;
  BoundaryCondition1D boundary;
  /// Exact solution u(t, x), empty when unknown.
  std::function<double(double, double)> exact;
  std::optional<Bounds> bounds;
  /// Locations of non-smooth points of the exact solution at time t.
  std::function<std::vector<double>(double)> singular_points;
};

struct Tensor2D {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
};

struct TensorBounds {
  double max_ab = 1.0;
  double min_ab = 1.0;
  double max_abs_c = 0.0;
};

/// M(x,y) u_t + div f(u) = div(A grad u) on a periodic rectangle.
struct Problem2D {
  std::string name;
  double x_left = -1.0;
  double x_right = 1.0;
  double y_left = -1.0;
  double y_right = 1.0;
  Function2D weight = [](double, double) { return 1.0; };
  bool weight_is_constant = true;
  /// Constant tensor; when empty, `tensor` is used.
  std::optional<Tensor2D> constant_tensor = Tensor2D{};
  std::function<Tensor2D(double, double, double)> tensor;
  bool tensor_depends_on_u = false;
  std::optional<TensorBounds> tensor_bounds;
  std::optional<MonotoneFluxSpec> flux_x;
  std::optional<MonotoneFluxSpec> flux_y;
  /// Set when f(u) = u * velocity; enables the precomputed linear operator.
  std::optional<std::array<double, 2>> velocity;
  Function2D initial;
  std::function<double(double, double, double)> exact;
  std::optional<Bounds> bounds;

  Tensor2D tensor_at(double x, double y, double u) const {
    return constant_tensor ? *constant_tensor : tensor(x, y, u);
  }
  bool has_convection() const { return flux_x.has_value() || flux_y.has_value(); }
};

}  // namespace mpsddg
