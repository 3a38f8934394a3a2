#include "mpsddg/norms.hpp"

#include <algorithm>
#include <cmath>

#include "mpsddg/errors.hpp"
#include "mpsddg/quadrature.hpp"

namespace mpsddg {

namespace {

struct Accumulator {
  double s1 = 0.0, s2 = 0.0, inf = 0.0;
  void add(double weight, double diff) {
    const double a = std::abs(diff);
    s1 += weight * a;
    s2 += weight * a * a;
    inf = std::max(inf, a);
  }
  ErrorNorms result() const { return {s1, std::sqrt(s2), inf}; }
};

bool same_extent(const Mesh1D& a, const Mesh1D& b) {
  const double tol = 1e-12 * std::max(1.0, std::abs(a.right - a.left));
  return std::abs(a.left - b.left) <= tol && std::abs(a.right - b.right) <= tol;
}

}  // namespace

ErrorNorms error_norms(const DGField1D& u, const Function1D& exact) {
  const auto& q = volume_rule();
  const Mesh1D& m = u.mesh;
  Accumulator acc;
  for (int j = 0; j < m.cells; ++j)
    for (std::size_t k = 0; k < q.size(); ++k)
      acc.add(m.h * q.weights[k], u.cells[j].eval(q.nodes[k]) - exact(m.to_physical(j, q.nodes[k])));
  return acc.result();
}

ErrorNorms error_norms(const DGField2D& u, const Function2D& exact) {
  const auto& q = volume_rule();
  const Mesh2D& m = u.mesh;
  Accumulator acc;
  for (int j = 0; j < m.ny(); ++j)
    for (int i = 0; i < m.nx(); ++i) {
      const CellPoly2D& p = u.at(i, j);
      for (std::size_t b = 0; b < q.size(); ++b) {
        const CellPoly1D row = p.along_xi(q.nodes[b]);
        const double y = m.y.to_physical(j, q.nodes[b]);
        for (std::size_t a = 0; a < q.size(); ++a)
          acc.add(m.area() * q.weights[a] * q.weights[b],
                  row.eval(q.nodes[a]) - exact(m.x.to_physical(i, q.nodes[a]), y));
      }
    }
  return acc.result();
}

ErrorNorms consecutive_error(const DGField1D& coarse, const DGField1D& fine) {
  if (fine.mesh.cells != 2 * coarse.mesh.cells || !same_extent(coarse.mesh, fine.mesh))
    throw ConfigError("consecutive error needs 2:1 nested meshes");
  const auto& q = volume_rule();
  Accumulator acc;
  for (int k = 0; k < fine.mesh.cells; ++k) {
    const CellPoly1D& c = coarse.cells[k / 2];
    const double shift = (k % 2 == 0) ? -0.5 : 0.5;
    for (std::size_t n = 0; n < q.size(); ++n) {
      const double xi = q.nodes[n];
      acc.add(fine.mesh.h * q.weights[n], fine.cells[k].eval(xi) - c.eval(0.5 * xi + shift));
    }
  }
  return acc.result();
}

ErrorNorms consecutive_error(const DGField2D& coarse, const DGField2D& fine) {
  if (fine.mesh.nx() != 2 * coarse.mesh.nx() || fine.mesh.ny() != 2 * coarse.mesh.ny() ||
      !same_extent(coarse.mesh.x, fine.mesh.x) || !same_extent(coarse.mesh.y, fine.mesh.y))
    throw ConfigError("consecutive error needs 2:1 nested meshes");
  const auto& q = volume_rule();
  Accumulator acc;
  for (int j = 0; j < fine.mesh.ny(); ++j)
    for (int i = 0; i < fine.mesh.nx(); ++i) {
      const CellPoly2D& f = fine.at(i, j);
      const CellPoly2D& c = coarse.at(i / 2, j / 2);
      const double sx = (i % 2 == 0) ? -0.5 : 0.5, sy = (j % 2 == 0) ? -0.5 : 0.5;
      for (std::size_t b = 0; b < q.size(); ++b)
        for (std::size_t a = 0; a < q.size(); ++a) {
          const double xi = q.nodes[a], eta = q.nodes[b];
          acc.add(fine.mesh.area() * q.weights[a] * q.weights[b],
                  f.eval(xi, eta) - c.eval(0.5 * xi + sx, 0.5 * eta + sy));
        }
    }
  return acc.result();
}

ErrorNorms corner_excluding_error(const DGField1D& u, const Function1D& exact, std::span<const double> corners,
                                  double radius) {
  const auto& q = volume_rule();
  const Mesh1D& m = u.mesh;
  Accumulator acc;
  int kept = 0;
  for (int j = 0; j < m.cells; ++j) {
    const double lo = m.interface(j), hi = m.interface(j + 1);
    bool keep = true;
    if (radius > 0.0)
      for (double c : corners) {
        const double dist = c < lo ? lo - c : (c > hi ? c - hi : 0.0);
        if (dist <= radius) keep = false;
      }
    if (!keep) continue;
    ++kept;
    for (std::size_t k = 0; k < q.size(); ++k)
      acc.add(m.h * q.weights[k], u.cells[j].eval(q.nodes[k]) - exact(m.to_physical(j, q.nodes[k])));
  }
  if (kept == 0) throw ConfigError("corner exclusion removed every cell");
  return acc.result();
}

}  // namespace mpsddg
