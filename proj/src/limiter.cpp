#include "mpsddg/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mpsddg/errors.hpp"

namespace mpsddg {

namespace {

constexpr double kFlat = 1e-14;

/// Scaling factor toward the average; 1 when the extrema are already inside the bounds.
double scaling_theta(double ubar, double lo_val, double hi_val, const Bounds& b) {
  double theta = 1.0;
  if (lo_val < b.lower) {
    const double d = ubar - lo_val;
    if (std::abs(d) >= kFlat) theta = std::min(theta, std::abs((ubar - b.lower) / d));
  }
  if (hi_val > b.upper) {
    const double d = hi_val - ubar;
    if (std::abs(d) >= kFlat) theta = std::min(theta, std::abs((b.upper - ubar) / d));
  }
  return theta;
}

bool out_of_bounds(double ubar, const Bounds& b, double tol, double& excess) {
  excess = std::max(b.lower - ubar, ubar - b.upper);
  return excess > tol;
}

}  // namespace

TestSet test_set_1d(double gamma) {
  TestSet t;
  t.points = {{-1.0, 0.0}, {gamma, 0.0}, {1.0, 0.0}};
  return t;
}

TestSet test_set_2d(double gamma_x, double gamma_y, const QuadratureRule& lobatto) {
  TestSet t;
  auto add = [&](double xi, double eta) {
    for (const auto& p : t.points)
      if (std::abs(p[0] - xi) < 1e-14 && std::abs(p[1] - eta) < 1e-14) return;
    t.points.push_back({xi, eta});
  };
  const double sx[3] = {-1.0, gamma_x, 1.0};
  const double sy[3] = {-1.0, gamma_y, 1.0};
  for (double xi : sx)
    for (double eta : lobatto.nodes) add(xi, eta);
  for (double xi : lobatto.nodes)
    for (double eta : sy) add(xi, eta);
  return t;
}

ScalingLimiter1D::ScalingLimiter1D(std::vector<WeightMoments> moments, double gamma, Bounds bounds,
                                   LimiterPolicy policy, double tolerance)
    : bounds_(bounds), policy_(policy), tolerance_(tolerance) {
  basis_moments_.reserve(moments.size());
  mass_.reserve(moments.size());
  for (const auto& m : moments) {
    basis_moments_.push_back(basis_moments(m));
    mass_.push_back(m.m0);
  }
  const double pts[3] = {-1.0, gamma, 1.0};
  for (int k = 0; k < 3; ++k)
    for (int a = 0; a < 3; ++a) table_[k][a] = mode(a, pts[k]);
}

void ScalingLimiter1D::apply(DGField1D& u, LimiterStats* stats) const {
  for (std::size_t j = 0; j < u.cells.size(); ++j) {
    auto& c = u.cells[j].c;
    const auto& m = basis_moments_[j];
    const double ubar = (m[0] * c[0] + m[1] * c[1] + m[2] * c[2]) / mass_[j];
    double excess = 0.0;
    if (out_of_bounds(ubar, bounds_, tolerance_, excess)) {
      if (policy_ == LimiterPolicy::strict)
        throw LimiterError("weighted average of cell " + std::to_string(j) + " is outside the bounds by " +
                               std::to_string(excess),
                           static_cast<int>(j), excess);
      c = {std::clamp(ubar, bounds_.lower, bounds_.upper), 0.0, 0.0};
      if (stats) {
        ++stats->clamped_cells;
        stats->worst_average_excess = std::max(stats->worst_average_excess, excess);
      }
      continue;
    }
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& row : table_) {
      const double v = row[0] * c[0] + row[1] * c[1] + row[2] * c[2];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double theta = scaling_theta(ubar, lo, hi, bounds_);
    if (theta < 1.0) {
      c[0] = theta * (c[0] - ubar) + ubar;
      c[1] *= theta;
      c[2] *= theta;
      if (stats) ++stats->limited_cells;
    }
  }
}

ScalingLimiter2D::ScalingLimiter2D(std::vector<std::array<double, 9>> moments, const TestSet& tests, Bounds bounds,
                                   LimiterPolicy policy, double tolerance)
    : moments_(std::move(moments)), bounds_(bounds), policy_(policy), tolerance_(tolerance) {
  for (const auto& p : tests.points) {
    std::array<double, 9> row{};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) row[a * 3 + b] = mode(a, p[0]) * mode(b, p[1]);
    table_.push_back(row);
  }
}

void ScalingLimiter2D::apply(DGField2D& u, LimiterStats* stats) const {
  const bool shared = moments_.size() == 1;
  for (std::size_t k = 0; k < u.cells.size(); ++k) {
    auto& c = u.cells[k].c;
    const auto& m = shared ? moments_[0] : moments_[k];
    double avg = 0.0;
    for (int r = 0; r < 9; ++r) avg += m[r] * c[r];
    const double ubar = avg / m[0];
    double excess = 0.0;
    if (out_of_bounds(ubar, bounds_, tolerance_, excess)) {
      if (policy_ == LimiterPolicy::strict)
        throw LimiterError("weighted average of cell " + std::to_string(k) + " is outside the bounds by " +
                               std::to_string(excess),
                           static_cast<int>(k), excess);
      c.fill(0.0);
      c[0] = std::clamp(ubar, bounds_.lower, bounds_.upper);
      if (stats) {
        ++stats->clamped_cells;
        stats->worst_average_excess = std::max(stats->worst_average_excess, excess);
      }
      continue;
    }
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& row : table_) {
      double v = 0.0;
      for (int r = 0; r < 9; ++r) v += row[r] * c[r];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double theta = scaling_theta(ubar, lo, hi, bounds_);
    if (theta < 1.0) {
      c[0] = theta * (c[0] - ubar) + ubar;
      for (int r = 1; r < 9; ++r) c[r] *= theta;
      if (stats) ++stats->limited_cells;
    }
  }
}

DGField1D apply_limiter_1d(const DGField1D& u, const Bounds& bounds, std::span<const WeightMoments> moments,
                           double gamma, LimiterPolicy policy) {
  ScalingLimiter1D lim(std::vector<WeightMoments>(moments.begin(), moments.end()), gamma, bounds, policy);
  DGField1D out = u;
  lim.apply(out);
  return out;
}

DGField2D apply_limiter_2d(const DGField2D& u, const Bounds& bounds, std::span<const std::array<double, 9>> moments,
                           const TestSet& tests, LimiterPolicy policy) {
  ScalingLimiter2D lim(std::vector<std::array<double, 9>>(moments.begin(), moments.end()), tests, bounds, policy);
  DGField2D out = u;
  lim.apply(out);
  return out;
}

std::pair<double, double> test_point_range(const DGField1D& u, double gamma) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& p : u.cells) {
    for (double xi : {-1.0, gamma, 1.0}) {
      const double v = p.eval(xi);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return {lo, hi};
}

std::pair<double, double> test_point_range(const DGField2D& u, const TestSet& tests) {
  std::vector<std::array<double, 9>> table;
  for (const auto& p : tests.points) {
    std::array<double, 9> row{};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) row[a * 3 + b] = mode(a, p[0]) * mode(b, p[1]);
    table.push_back(row);
  }
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& cell : u.cells) {
    for (const auto& row : table) {
      double v = 0.0;
      for (int r = 0; r < 9; ++r) v += row[r] * cell.c[r];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return {lo, hi};
}

double mps_violation(const DGField1D& u, const Bounds& bounds, double gamma) {
  const auto [lo, hi] = test_point_range(u, gamma);
  return std::max(bounds.lower - lo, hi - bounds.upper);
}

double mps_violation(const DGField2D& u, const Bounds& bounds, const TestSet& tests) {
  const auto [lo, hi] = test_point_range(u, tests);
  return std::max(bounds.lower - lo, hi - bounds.upper);
}

}  // namespace mpsddg
