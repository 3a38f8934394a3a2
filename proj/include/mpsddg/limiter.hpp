#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "mpsddg/field.hpp"
#include "mpsddg/fluxes.hpp"
#include "mpsddg/quadrature.hpp"
#include "mpsddg/weighted_geometry.hpp"

namespace mpsddg {

/// Reference-coordinate test points of one cell (shared by all cells).
struct TestSet {
  std::vector<std::array<double, 2>> points;  // (xi, eta); eta unused in 1D
  std::size_t size() const { return points.size(); }
};

TestSet test_set_1d(double gamma);
/// (S^x x Lobatto) u (Lobatto x S^y) with duplicates removed.
TestSet test_set_2d(double gamma_x, double gamma_y, const QuadratureRule& lobatto);

/// strict: a cell average outside the bounds beyond tolerance throws LimiterError.
/// clamp: the cell is replaced by the clamped constant and counted.
enum class LimiterPolicy { strict, clamp };

struct LimiterStats {
  long limited_cells = 0;
  long clamped_cells = 0;
  double worst_average_excess = 0.0;
};

class ScalingLimiter1D {
 public:
  ScalingLimiter1D(std::vector<WeightMoments> moments, double gamma, Bounds bounds,
                   LimiterPolicy policy = LimiterPolicy::strict, double tolerance = 1e-10);
  void apply(DGField1D& u, LimiterStats* stats = nullptr) const;
  const Bounds& bounds() const { return bounds_; }

 private:
  std::vector<std::array<double, 3>> basis_moments_;
  std::vector<double> mass_;
  std::array<std::array<double, 3>, 3> table_{};  // basis values at the test points
  Bounds bounds_;
  LimiterPolicy policy_;
  double tolerance_;
};

class ScalingLimiter2D {
 public:
  /// moments: per-cell <phi_ab>; a single entry is shared by all cells.
  ScalingLimiter2D(std::vector<std::array<double, 9>> moments, const TestSet& tests, Bounds bounds,
                   LimiterPolicy policy = LimiterPolicy::strict, double tolerance = 1e-10);
  void apply(DGField2D& u, LimiterStats* stats = nullptr) const;
  const Bounds& bounds() const { return bounds_; }

 private:
  std::vector<std::array<double, 9>> moments_;
  std::vector<std::array<double, 9>> table_;
  Bounds bounds_;
  LimiterPolicy policy_;
  double tolerance_;
};

DGField1D apply_limiter_1d(const DGField1D& u, const Bounds& bounds, std::span<const WeightMoments> moments,
                           double gamma, LimiterPolicy policy = LimiterPolicy::strict);
DGField2D apply_limiter_2d(const DGField2D& u, const Bounds& bounds, std::span<const std::array<double, 9>> moments,
                           const TestSet& tests, LimiterPolicy policy = LimiterPolicy::strict);

/// max over test points of max(c1 - u, u - c2)
double mps_violation(const DGField1D& u, const Bounds& bounds, double gamma);
double mps_violation(const DGField2D& u, const Bounds& bounds, const TestSet& tests);

/// (min, max) of the solution over all test points.
std::pair<double, double> test_point_range(const DGField1D& u, double gamma);
std::pair<double, double> test_point_range(const DGField2D& u, const TestSet& tests);

}  // namespace mpsddg
