#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "mpsddg/mesh.hpp"
#include "mpsddg/polynomial.hpp"

namespace mpsddg {

using Matrix3 = Eigen::Matrix3d;
using Matrix9 = Eigen::Matrix<double, 9, 9>;

using Function1D = std::function<double(double)>;
using Function2D = std::function<double(double, double)>;

struct DGField1D {
  Mesh1D mesh;
  std::vector<CellPoly1D> cells;

  DGField1D() = default;
  explicit DGField1D(const Mesh1D& m) : mesh(m), cells(m.cells) {}
  /// Point evaluation at physical x (right-continuous except at the last interface).
  double value(double x) const;
};

struct DGField2D {
  Mesh2D mesh;
  std::vector<CellPoly2D> cells;

  DGField2D() = default;
  explicit DGField2D(const Mesh2D& m) : mesh(m), cells(m.size()) {}
  CellPoly2D& at(int i, int j) { return cells[mesh.index(i, j)]; }
  const CellPoly2D& at(int i, int j) const { return cells[mesh.index(i, j)]; }
  double value(double x, double y) const;
};

/// out = a*u + b*v, cellwise (meshes must match).
template <class Field>
Field combine(double a, const Field& u, double b, const Field& v) {
  Field out = u;
  for (std::size_t j = 0; j < out.cells.size(); ++j)
    for (std::size_t m = 0; m < out.cells[j].c.size(); ++m)
      out.cells[j].c[m] = a * u.cells[j].c[m] + b * v.cells[j].c[m];
  return out;
}

struct TracePair {
  double minus = 0.0;
  double plus = 0.0;
  double jump() const { return plus - minus; }
  double average() const { return 0.5 * (plus + minus); }
};

/// Value and physical first/second derivative traces at one interface.
struct InterfaceTraces {
  TracePair value;
  TracePair d1;
  TracePair d2;
};

InterfaceTraces interface_traces(const CellPoly1D& left, const CellPoly1D& right, double h);

/// Traces at interface k (0..N) with periodic wrap at the domain ends.
InterfaceTraces trace_pair(const DGField1D& field, int k);

enum class ProjectionKind { weighted, standard };

/// Physical-measure mass matrices: entries ∫ M phi_a phi_b over the cell.
Matrix3 weighted_mass_matrix(const Mesh1D& mesh, int j, const Function1D& weight);
Matrix9 weighted_mass_matrix(const Mesh2D& mesh, int i, int j, const Function2D& weight);

/// Cellwise projection of u0, minimizing the M-weighted (or plain) L2 distance.
DGField1D project_initial(const Function1D& u0, const Function1D& weight, const Mesh1D& mesh,
                          ProjectionKind kind = ProjectionKind::weighted);
DGField2D project_initial(const Function2D& u0, const Function2D& weight, const Mesh2D& mesh,
                          ProjectionKind kind = ProjectionKind::weighted);

/// Projection of u0 onto one cell [center - h/2, center + h/2].
CellPoly1D project_cell(const Function1D& u0, const Function1D& weight, double center, double h,
                        ProjectionKind kind = ProjectionKind::weighted);

/// L2 transfer of a field onto another (typically coarser) mesh covering the same domain.
DGField2D transfer_field(const DGField2D& source, const Mesh2D& target);

}  // namespace mpsddg
