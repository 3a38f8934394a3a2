#include "mpsddg/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mpsddg/errors.hpp"
#include "mpsddg/polynomial.hpp"
#include "mpsddg/quadrature.hpp"

namespace mpsddg {

double barenblatt(int m, double t, double x) {
  const double a = 1.0 / (m + 1.0);
  const double bracket = 1.0 - a * (m - 1.0) / (2.0 * m) * x * x / std::pow(t, 2.0 * a);
  if (bracket <= 0.0) return 0.0;
  return std::pow(t, -a) * std::pow(bracket, 1.0 / (m - 1.0));
}

double barenblatt_support(int m, double t) {
  const double a = 1.0 / (m + 1.0);
  return std::sqrt(2.0 * m * std::pow(t, 2.0 * a) / (a * (m - 1.0)));
}

Problem1D heat_weighted_1d() {
  Problem1D p;
  p.name = "heat_weighted_1d";
  p.x_left = 1.0;
  p.x_right = 3.0;
  p.weight = [](double x) { return 4.0 * x * std::exp(1.0 - x * x); };
  p.weight_is_constant = false;
  p.diffusivity = [](double x, double) { return std::exp(1.0 - x * x) / x; };
  p.diffusivity_bound = 1.0;  // decreasing on [1,3]
  p.initial = [](double x) { return std::sin(x * x - 1.0); };
  p.exact = [](double t, double x) { return std::exp(-t) * std::sin(x * x - 1.0 - t); };
  p.boundary.kind = BoundaryKind::exact;
  p.bounds = Bounds{-1.0, 1.0};
  return p;
}

Problem1D porous_medium(int m) {
  if (m < 2) throw ConfigError("porous medium exponent must be >= 2");
  Problem1D p;
  p.name = "porous_medium";
  p.x_left = -6.0;
  p.x_right = 6.0;
  p.diffusivity = [m](double, double u) { return u > 0.0 ? m * std::pow(u, m - 1) : 0.0; };
  p.diffusivity_depends_on_u = true;
  p.diffusivity_bound = static_cast<double>(m);
  p.initial = [m](double x) { return barenblatt(m, 1.0, x); };
  p.exact = [m](double t, double x) { return barenblatt(m, 1.0 + t, x); };
  p.boundary = {BoundaryKind::dirichlet, 0.0, 0.0};
  p.bounds = Bounds{0.0, 1.0};
  p.singular_points = [m](double t) {
    const double r = barenblatt_support(m, 1.0 + t);
    return std::vector<double>{-r, r};
  };
  return p;
}

Problem1D buckley_leverett(double epsilon) {
  Problem1D p;
  p.name = "buckley_leverett";
  p.x_left = 0.0;
  p.x_right = 1.0;
  p.diffusivity = [epsilon](double, double u) { return (u >= 0.0 && u <= 1.0) ? epsilon * 4.0 * u * (1.0 - u) : 0.0; };
  p.diffusivity_depends_on_u = true;
  p.diffusivity_bound = epsilon;
  p.initial = [](double x) { return (x >= 0.0 && x <= 1.0 / 3.0) ? 1.0 - 3.0 * x : 0.0; };
  p.boundary = {BoundaryKind::dirichlet, 1.0, 0.0};
  p.bounds = Bounds{0.0, 1.0};
  auto f = [](double u) { return u * u / (u * u + (1.0 - u) * (1.0 - u)); };
  auto df = [](double u) {
    const double d = u * u + (1.0 - u) * (1.0 - u);
    return 2.0 * u * (1.0 - u) / (d * d);
  };
  p.convection = make_monotone_flux(f, df, *p.bounds, 2.0);  // max f' at u = 1/2
  return p;
}

Problem2D aniso_2d(int tensor_case) {
  Tensor2D t;
  switch (tensor_case) {
    case 1: t = {1.0, 1.0, 0.0}; break;
    case 2: t = {1.0, 2.0, 0.0}; break;
    case 3: t = {1.0, 2.0, 1.0}; break;
    default: throw ConfigError("tensor case must be 1, 2 or 3");
  }
  Problem2D p;
  p.name = "aniso_2d";
  p.constant_tensor = t;
  p.velocity = std::array<double, 2>{0.01, 0.01};
  const Bounds b{0.0, 1.0};
  p.bounds = b;
  p.flux_x = make_monotone_flux([](double u) { return 0.01 * u; }, [](double) { return 0.01; }, b, 0.01);
  p.flux_y = p.flux_x;
  constexpr double s0 = 0.01;
  p.exact = [t](double time, double x, double y) {
    const double s11 = s0 * s0 + 2.0 * t.a * time;
    const double s22 = s0 * s0 + 2.0 * t.b * time;
    const double s12 = 2.0 * t.c * time;
    const double det = s11 * s22 - s12 * s12;
    const double px = x - 0.01 * time, py = y - 0.01 * time;
    const double q = (s22 * px * px - 2.0 * s12 * px * py + s11 * py * py) / det;
    return s0 * s0 / std::sqrt(std::abs(det)) * std::exp(-0.5 * q);
  };
  auto exact = p.exact;
  p.initial = [exact](double x, double y) { return exact(0.0, x, y); };
  return p;
}

std::vector<std::string> problem_names() {
  return {"heat_weighted_1d", "porous_medium", "buckley_leverett", "aniso_2d"};
}

bool is_2d_problem(const std::string& name) { return name == "aniso_2d"; }

Problem1D make_problem_1d(const std::string& name, const ProblemOptions& options) {
  if (name == "heat_weighted_1d") return heat_weighted_1d();
  if (name == "porous_medium") return porous_medium(options.porous_m);
  if (name == "buckley_leverett") return buckley_leverett(options.epsilon);
  throw ConfigError("unknown 1D problem '" + name + "'");
}

Problem2D make_problem_2d(const std::string& name, const ProblemOptions& options) {
  if (name == "aniso_2d") return aniso_2d(options.tensor_case);
  throw ConfigError("unknown 2D problem '" + name + "'");
}

namespace {

std::vector<double> sample_offsets(std::initializer_list<double> extra) {
  std::vector<double> xi(volume_rule().nodes);
  for (int k = 0; k < 32; ++k) xi.push_back(-1.0 + 2.0 * k / 31.0);
  xi.insert(xi.end(), extra);
  return xi;
}

}  // namespace

Bounds initial_bounds(const Problem1D& problem, const Mesh1D& mesh, double gamma) {
  if (problem.bounds) return *problem.bounds;
  const auto xi = sample_offsets({gamma});
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int j = 0; j < mesh.cells; ++j)
    for (double s : xi) {
      const double v = problem.initial(mesh.to_physical(j, s));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return {lo, hi};
}

Bounds initial_bounds(const Problem2D& problem, const Mesh2D& mesh, double gamma_x, double gamma_y) {
  if (problem.bounds) return *problem.bounds;
  const auto xs = sample_offsets({gamma_x});
  const auto ys = sample_offsets({gamma_y});
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int j = 0; j < mesh.ny(); ++j)
    for (int i = 0; i < mesh.nx(); ++i)
      for (double sx : xs)
        for (double sy : ys) {
          const double v = problem.initial(mesh.x.to_physical(i, sx), mesh.y.to_physical(j, sy));
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
  return {lo, hi};
}

TensorBounds tensor_bounds(const Problem2D& problem, const Mesh2D& mesh, const Bounds& bounds) {
  if (problem.tensor_bounds) return *problem.tensor_bounds;
  if (problem.constant_tensor) {
    const Tensor2D& t = *problem.constant_tensor;
    return {std::max(t.a, t.b), std::min(t.a, t.b), std::abs(t.c)};
  }
  const int us = problem.tensor_depends_on_u ? 1025 : 1;
  std::vector<double> xi(volume_rule().nodes);
  xi.push_back(-1.0);
  xi.push_back(1.0);
  TensorBounds tb{0.0, std::numeric_limits<double>::infinity(), 0.0};
  for (int j = 0; j < mesh.ny(); ++j)
    for (int i = 0; i < mesh.nx(); ++i)
      for (double sx : xi)
        for (double sy : xi) {
          const double x = mesh.x.to_physical(i, sx), y = mesh.y.to_physical(j, sy);
          for (int k = 0; k < us; ++k) {
            const double u = us == 1 ? bounds.lower : bounds.lower + (bounds.upper - bounds.lower) * k / (us - 1);
            const Tensor2D t = problem.tensor(x, y, u);
            tb.max_ab = std::max({tb.max_ab, t.a, t.b});
            tb.min_ab = std::min({tb.min_ab, t.a, t.b});
            tb.max_abs_c = std::max(tb.max_abs_c, std::abs(t.c));
          }
        }
  tb.max_ab *= 1.05;
  tb.max_abs_c *= 1.05;
  tb.min_ab /= 1.05;
  return tb;
}

}  // namespace mpsddg
