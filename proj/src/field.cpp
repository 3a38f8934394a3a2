#include "mpsddg/field.hpp"

#include <cmath>
#include <string>

#include "mpsddg/errors.hpp"
#include "mpsddg/quadrature.hpp"

namespace mpsddg {

double DGField1D::value(double x) const {
  double xi = 0.0;
  const int j = mesh.locate(x, xi);
  return cells[j].eval(xi);
}

double DGField2D::value(double x, double y) const {
  double xi = 0.0, eta = 0.0;
  const int i = mesh.x.locate(x, xi);
  const int j = mesh.y.locate(y, eta);
  return at(i, j).eval(xi, eta);
}

InterfaceTraces interface_traces(const CellPoly1D& left, const CellPoly1D& right, double h) {
  const double s = 2.0 / h;
  InterfaceTraces t;
  t.value = {left.eval(1.0), right.eval(-1.0)};
  t.d1 = {s * left.d1(1.0), s * right.d1(-1.0)};
  t.d2 = {s * s * left.d2(), s * s * right.d2()};
  return t;
}

InterfaceTraces trace_pair(const DGField1D& field, int k) {
  const int n = field.mesh.cells;
  if (k < 0 || k > n) throw ConfigError("trace_pair: interface index out of range");
  const CellPoly1D& left = field.cells[(k - 1 + n) % n];
  const CellPoly1D& right = field.cells[k % n];
  return interface_traces(left, right, field.mesh.h);
}

Matrix3 weighted_mass_matrix(const Mesh1D& mesh, int j, const Function1D& weight) {
  const QuadratureRule& g = volume_rule();
  Matrix3 m = Matrix3::Zero();
  for (std::size_t q = 0; q < g.size(); ++q) {
    const double w = weight(mesh.to_physical(j, g.nodes[q]));
    if (!(w > 0.0)) throw ConfigError("weight M is not positive in cell " + std::to_string(j));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m(a, b) += g.weights[q] * w * mode(a, g.nodes[q]) * mode(b, g.nodes[q]);
  }
  m *= mesh.h;
  if (m.llt().info() != Eigen::Success)
    throw ConfigError("mass matrix not positive definite in cell " + std::to_string(j));
  return m;
}

Matrix9 weighted_mass_matrix(const Mesh2D& mesh, int i, int j, const Function2D& weight) {
  const QuadratureRule& g = volume_rule();
  Matrix9 m = Matrix9::Zero();
  double phi[9];
  for (std::size_t qx = 0; qx < g.size(); ++qx) {
    for (std::size_t qy = 0; qy < g.size(); ++qy) {
      const double xi = g.nodes[qx], eta = g.nodes[qy];
      const double w = weight(mesh.x.to_physical(i, xi), mesh.y.to_physical(j, eta));
      if (!(w > 0.0))
        throw ConfigError("weight M is not positive in cell (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) phi[a * 3 + b] = mode(a, xi) * mode(b, eta);
      const double ww = g.weights[qx] * g.weights[qy] * w;
      for (int r = 0; r < 9; ++r)
        for (int s = 0; s < 9; ++s) m(r, s) += ww * phi[r] * phi[s];
    }
  }
  m *= mesh.area();
  if (m.llt().info() != Eigen::Success)
    throw ConfigError("mass matrix not positive definite in cell (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
  return m;
}

CellPoly1D project_cell(const Function1D& u0, const Function1D& weight, double center, double h,
                        ProjectionKind kind) {
  const QuadratureRule& g = volume_rule();
  Matrix3 m = Matrix3::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (std::size_t q = 0; q < g.size(); ++q) {
    const double xi = g.nodes[q];
    const double x = center + 0.5 * h * xi;
    const double w = kind == ProjectionKind::weighted ? weight(x) : 1.0;
    if (!(w > 0.0)) throw ConfigError("weight M is not positive at x = " + std::to_string(x));
    const double u = u0(x);
    for (int a = 0; a < 3; ++a) {
      rhs(a) += g.weights[q] * w * u * mode(a, xi);
      for (int b = 0; b < 3; ++b) m(a, b) += g.weights[q] * w * mode(a, xi) * mode(b, xi);
    }
  }
  const Eigen::Vector3d c = m.ldlt().solve(rhs);
  CellPoly1D p;
  for (int a = 0; a < 3; ++a) p.c[a] = c(a);
  return p;
}

DGField1D project_initial(const Function1D& u0, const Function1D& weight, const Mesh1D& mesh,
                          ProjectionKind kind) {
  DGField1D f(mesh);
  for (int j = 0; j < mesh.cells; ++j) f.cells[j] = project_cell(u0, weight, mesh.center(j), mesh.h, kind);
  return f;
}

DGField2D project_initial(const Function2D& u0, const Function2D& weight, const Mesh2D& mesh,
                          ProjectionKind kind) {
  const QuadratureRule& g = volume_rule();
  const int nq = static_cast<int>(g.size());
  DGField2D f(mesh);
  std::vector<double> phi(nq * nq * 9);
  for (int qx = 0; qx < nq; ++qx)
    for (int qy = 0; qy < nq; ++qy)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          phi[(qx * nq + qy) * 9 + a * 3 + b] = mode(a, g.nodes[qx]) * mode(b, g.nodes[qy]);
  // the plain mass matrix is diagonal in this basis
  const double diag1d[3] = {1.0, 1.0 / 3.0, 4.0 / 45.0};
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      Matrix9 m = Matrix9::Zero();
      Eigen::Matrix<double, 9, 1> rhs = Eigen::Matrix<double, 9, 1>::Zero();
      for (int qx = 0; qx < nq; ++qx) {
        const double x = mesh.x.to_physical(i, g.nodes[qx]);
        for (int qy = 0; qy < nq; ++qy) {
          const double y = mesh.y.to_physical(j, g.nodes[qy]);
          const double w = kind == ProjectionKind::weighted ? weight(x, y) : 1.0;
          if (!(w > 0.0)) throw ConfigError("weight M is not positive in the projection");
          const double ww = g.weights[qx] * g.weights[qy] * w;
          const double u = u0(x, y);
          const double* p = &phi[(qx * nq + qy) * 9];
          for (int r = 0; r < 9; ++r) {
            rhs(r) += ww * u * p[r];
            if (kind == ProjectionKind::weighted)
              for (int s = 0; s < 9; ++s) m(r, s) += ww * p[r] * p[s];
          }
        }
      }
      CellPoly2D& cell = f.at(i, j);
      if (kind == ProjectionKind::weighted) {
        const Eigen::Matrix<double, 9, 1> c = m.ldlt().solve(rhs);
        for (int r = 0; r < 9; ++r) cell.c[r] = c(r);
      } else {
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) cell.c[a * 3 + b] = rhs(a * 3 + b) / (diag1d[a] * diag1d[b]);
      }
    }
  }
  return f;
}

DGField2D transfer_field(const DGField2D& source, const Mesh2D& target) {
  const QuadratureRule g = gauss_nodes(3);
  const int rx = std::max(1, static_cast<int>(std::lround(target.dx() / source.mesh.dx())));
  const int ry = std::max(1, static_cast<int>(std::lround(target.dy() / source.mesh.dy())));
  const double diag1d[3] = {1.0, 1.0 / 3.0, 4.0 / 45.0};
  DGField2D out(target);
  for (int j = 0; j < target.ny(); ++j) {
    for (int i = 0; i < target.nx(); ++i) {
      double acc[9] = {};
      for (int sx = 0; sx < rx; ++sx) {
        for (int sy = 0; sy < ry; ++sy) {
          for (std::size_t qx = 0; qx < g.size(); ++qx) {
            const double xi = -1.0 + (2.0 * sx + 1.0 + g.nodes[qx]) / rx;
            for (std::size_t qy = 0; qy < g.size(); ++qy) {
              const double eta = -1.0 + (2.0 * sy + 1.0 + g.nodes[qy]) / ry;
              const double u = source.value(target.x.to_physical(i, xi), target.y.to_physical(j, eta));
              const double w = g.weights[qx] * g.weights[qy] / (rx * ry);
              for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) acc[a * 3 + b] += w * u * mode(a, xi) * mode(b, eta);
            }
          }
        }
      }
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out.at(i, j).c[a * 3 + b] = acc[a * 3 + b] / (diag1d[a] * diag1d[b]);
    }
  }
  return out;
}

}  // namespace mpsddg
