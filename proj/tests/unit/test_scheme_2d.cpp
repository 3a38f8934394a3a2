#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mpsddg/norms.hpp"
#include "mpsddg/scheme_2d.hpp"
#include "mpsddg/time_integration.hpp"
#include "oracles.hpp"

using namespace mpsddg;

namespace {

Problem2D constant_problem(double a, double b, double c) {
  Problem2D p;
  p.name = "test";
  p.constant_tensor = Tensor2D{a, b, c};
  p.initial = [](double, double) { return 0.0; };
  return p;
}

DGField2D random_field(const Mesh2D& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DGField2D f(m);
  for (auto& c : f.cells)
    for (double& v : c.c) v = u(rng);
  return f;
}

double max_abs(const DGField2D& f) {
  double m = 0.0;
  for (const auto& c : f.cells)
    for (double v : c.c) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("2D constant states are steady") {
  const Mesh2D m = build_mesh_2d(-1, 1, 6, -1, 1, 5);
  const Scheme2D s(m, constant_problem(1.0, 2.0, 1.0), {4.0, 0.16, 0.1, 0.1});
  DGField2D c(m);
  for (auto& p : c.cells) {
    p.c = {};
    p.c[0] = 0.8;
  }
  CHECK(max_abs(s.rhs(c, 0.0)) < 1e-12);

  Problem2D var = constant_problem(1, 1, 0);
  var.constant_tensor.reset();
  var.tensor = [](double x, double y, double) { return Tensor2D{2.0 + x, 2.0 + y, 0.3 * x * y}; };
  const Scheme2D sv(m, var, {8.0, 0.16, 0.0, 0.0}, 5);
  CHECK(max_abs(sv.rhs(c, 0.0)) < 1e-12);
}

TEST_CASE("data constant in y reduces to the 1D operator") {
  const FluxParams2D p2{2.0, 0.16, 0.1, 0.1};
  const Mesh2D m2 = build_mesh_2d(0, 1, 8, 0, 1, 5);
  const Scheme2D s2(m2, constant_problem(1.7, 0.6, 0.0), p2);
  Problem1D p1;
  p1.diffusivity = [](double, double) { return 1.7; };
  p1.initial = [](double) { return 0.0; };
  const Scheme1D s1(m2.x, p1, p2.along_x());

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DGField1D f1(m2.x);
  DGField2D f2(m2);
  for (int i = 0; i < 8; ++i) {
    f1.cells[i] = CellPoly1D{{u(rng), u(rng), u(rng)}};
    for (int j = 0; j < 5; ++j) {
      f2.at(i, j).c = {};
      for (int a = 0; a < 3; ++a) f2.at(i, j).c[a * 3] = f1.cells[i].c[a];
    }
  }
  const DGField1D r1 = s1.rhs(f1, 0.0);
  const DGField2D r2 = s2.rhs(f2, 0.0);
  double scale = 0.0;
  for (const auto& c : r1.cells) scale = std::max({scale, std::abs(c.c[0]), std::abs(c.c[1]), std::abs(c.c[2])});
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 5; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double expect = b == 0 ? r1.cells[i].c[a] : 0.0;
          CHECK(std::abs(r2.at(i, j).c[a * 3 + b] - expect) <= 1e-12 * scale);
        }
}

TEST_CASE("cell averages of x^2 + y^2 move at the rate of its Laplacian") {
  const Mesh2D m = build_mesh_2d(-1, 1, 6, -1, 1, 6);
  const Scheme2D s(m, constant_problem(1.0, 1.0, 0.0), {2.0, 0.16, 0.1, 0.1});
  const DGField2D u = project_initial([](double x, double y) { return x * x + y * y; },
                                      [](double, double) { return 1.0; }, m);
  const double tau = 1e-3;
  for (int j = 1; j < 5; ++j)
    for (int i = 1; i < 5; ++i) {
      const double before = s.weighted_average(u, i, j);
      CHECK((s.cell_average_update(u, i, j, tau) - before) / tau == doctest::Approx(4.0).epsilon(1e-10));
    }
}

TEST_CASE("corner term") {
  const Mesh2D m = build_mesh_2d(-1, 1, 5, -1, 1, 5);
  std::mt19937_64 rng(43);
  const DGField2D r = random_field(m, rng);
  CHECK(Scheme2D(m, constant_problem(1, 1, 0), {2.0, 0.16, 0.1, 0.1}).corner_term_B(r, 2, 3, 0.1) == 0.0);

  const Scheme2D s(m, constant_problem(1, 1, 1), {8.0, 0.16, 0.1, 0.1});
  const DGField2D xy = project_initial([](double x, double y) { return x * y; }, [](double, double) { return 1.0; }, m);
  // d/dy(xy) = x differs by dx across the cell, d/dx(xy) = y by dy: B = 2 c tau on any cell
  CHECK(s.corner_term_B(xy, 2, 2, 0.1) == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(s.corner_term_B(xy, 3, 1, 0.1) == doctest::Approx(0.2).epsilon(1e-13));

  // continuous field: exact tangential integrals reduce to corner differences
  auto f = [](double x, double y) { return 1.0 + x * x * y - 0.5 * x * y * y + 0.3 * y; };
  const DGField2D u = project_initial(f, [](double, double) { return 1.0; }, m);
  const double tau = 0.02;
  for (int j = 1; j < 4; ++j)
    for (int i = 1; i < 4; ++i) {
      const double xl = m.x.interface(i), xr = m.x.interface(i + 1);
      const double yb = m.y.interface(j), yt = m.y.interface(j + 1);
      const double expect = 2.0 * tau / m.area() * (f(xr, yt) - f(xr, yb) - f(xl, yt) + f(xl, yb));
      CHECK(s.corner_term_B(u, i, j, tau) == doctest::Approx(expect).epsilon(1e-12));
    }

  // variable-tensor path with a constant c agrees with the vertex formula
  Problem2D v = constant_problem(1, 1, 1);
  v.constant_tensor.reset();
  v.tensor = [](double, double, double) { return Tensor2D{1.0, 1.0, 1.0}; };
  const Scheme2D sv(m, v, {8.0, 0.16, 0.1, 0.1});
  for (int i = 0; i < 5; ++i)
    CHECK(sv.corner_term_B(r, i, (i + 2) % 5, tau) == doctest::Approx(s.corner_term_B(r, i, (i + 2) % 5, tau)));
}

TEST_CASE("update decomposition reassembles the direct update") {
  const Mesh2D m = build_mesh_2d(-1, 1, 5, -1, 1, 4);
  std::mt19937_64 rng(47);
  const Scheme2D s(m, constant_problem(1.0, 2.0, 1.0), {8.0, 0.16, 0.1, 0.1});
  Problem2D v = constant_problem(1, 1, 0);
  v.constant_tensor.reset();
  v.tensor = [](double x, double y, double) { return Tensor2D{1.5 + 0.5 * std::sin(x), 1.5 + 0.5 * std::cos(y), 0.2}; };
  const Scheme2D sv(m, v, {8.0, 0.16, 0.0, 0.0}, 5);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DGField2D u = random_field(m, rng);
    const int i = trial % 5, j = (trial / 5) % 4;
    for (const Scheme2D* sc : {&s, &sv}) {
      const double direct = sc->cell_average_update(u, i, j, 1e-3);
      const UpdateDecomposition d = sc->decompose_update(u, i, j, 1e-3);
      worst = std::max(worst, std::abs(d.reassembled - direct) / (1.0 + std::abs(direct)));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("swapping axes commutes with the operator") {
  const Mesh2D m = build_mesh_2d(-1, 1, 6, -1, 1, 6);
  std::mt19937_64 rng(53);
  const DGField2D u = random_field(m, rng);
  DGField2D t(m);
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 6; ++i)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) t.at(j, i).c[b * 3 + a] = u.at(i, j).c[a * 3 + b];
  const DGField2D r = Scheme2D(m, constant_problem(1.0, 2.0, 0.7), {8.0, 0.16, 0.1, 0.1}).rhs(u, 0.0);
  const DGField2D rt = Scheme2D(m, constant_problem(2.0, 1.0, 0.7), {8.0, 0.16, 0.1, 0.1}).rhs(t, 0.0);
  const double scale = max_abs(r);
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 6; ++i)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          CHECK(std::abs(rt.at(j, i).c[b * 3 + a] - r.at(i, j).c[a * 3 + b]) <= 1e-13 * scale);
}

TEST_CASE("2D weighted mass is conserved") {
  const Mesh2D m = build_mesh_2d(-1, 1, 6, -1, 1, 6);
  Problem2D p = constant_problem(1.0, 2.0, 0.5);
  p.weight = [](double x, double y) { return 2.0 + std::sin(std::numbers::pi * x) * std::cos(std::numbers::pi * y); };
  p.weight_is_constant = false;
  const Scheme2D s(m, p, {8.0, 0.16, 0.1, 0.1});
  std::mt19937_64 rng(59);
  DGField2D u = random_field(m, rng);
  const double before = s.weighted_mass(u);
  for (int k = 0; k < 20; ++k) u = s.euler_step(u, 0.0, 1e-5);
  CHECK(std::abs(s.weighted_mass(u) - before) <= 1e-11 * std::max(1.0, std::abs(before)));
}

TEST_CASE("third-order convergence on a periodic sine") {
  auto study = [](double a, double b, double c, double beta0) {
    std::vector<double> err;
    for (int n : {8, 16, 32}) {
      const Mesh2D mesh = build_mesh_2d(-1, 1, n, -1, 1, n);
      Problem2D p = constant_problem(a, b, c);
      const double pi = std::numbers::pi;
      const double rate = pi * pi * (a + b + 2.0 * c);
      const Scheme2D s(mesh, p, {beta0, 0.16, 0.1, 0.1});
      DGField2D u = project_initial([&](double x, double y) { return std::sin(pi * (x + y)); },
                                    [](double, double) { return 1.0; }, mesh);
      const double tau = 2e-4 * (8.0 / n) * (8.0 / n), t_end = 0.01;
      const int steps = static_cast<int>(std::lround(t_end / tau));
      double t = 0.0;
      for (int k = 0; k < steps; ++k) {
        u = ssp33_step(u, t, tau, [&](const DGField2D& v, double tt, double dt) { return s.euler_step(v, tt, dt); },
                       [](DGField2D&) {}, k);
        t += tau;
      }
      err.push_back(error_norms(u, [&](double x, double y) { return std::exp(-rate * t) * std::sin(pi * (x + y)); }).e2);
    }
    return err;
  };
  for (auto e : {study(1.0, 2.0, 0.0, 2.0), study(1.0, 2.0, 1.0, 4.0)}) {
    CHECK(std::log2(e[0] / e[1]) > 2.7);
    CHECK(std::log2(e[1] / e[2]) > 2.8);
  }
}
