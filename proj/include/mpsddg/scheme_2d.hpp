#pragma once

#include <array>
#include <vector>

#include "mpsddg/field.hpp"
#include "mpsddg/fluxes.hpp"
#include "mpsddg/problem.hpp"
#include "mpsddg/quadrature.hpp"
#include "mpsddg/scheme_1d.hpp"
#include "mpsddg/weighted_geometry.hpp"

namespace mpsddg {

struct FluxParams2D {
  double beta0 = 2.0;
  double beta1 = 0.16;
  double gamma_x = 0.1;
  double gamma_y = 0.1;

  FluxParams along_x() const { return {beta0, beta1, gamma_x}; }
  FluxParams along_y() const { return {beta0, beta1, gamma_y}; }
};

using Vector9 = Eigen::Matrix<double, 9, 1>;

/// One coefficient of the cell-average update: coefficient * u_{(i+di, j+dj)}(xi, eta).
struct StencilTerm {
  Axis group_axis = Axis::x;  // x: row at a Lobatto eta node; y: column at a Lobatto xi node
  int group_node = 0;
  int di = 0;
  int dj = 0;
  double xi = 0.0;
  double eta = 0.0;
  double coefficient = 0.0;
};

struct UpdateDecomposition {
  std::vector<StencilTerm> terms;   // before merging
  std::vector<StencilTerm> merged;  // equal points merged within each group
  double corner_term = 0.0;         // B evaluated on the field
  double reassembled = 0.0;         // sum of merged coefficients times point values
};

/// DDG operator on a periodic Cartesian mesh for M u_t + div f(u) = div(A grad u).
class Scheme2D {
 public:
  Scheme2D(const Mesh2D& mesh, const Problem2D& problem, const FluxParams2D& params, int lobatto_points = 3,
           SchemeOptions options = {});

  DGField2D rhs(const DGField2D& u, double t) const;
  DGField2D euler_step(const DGField2D& u, double t, double tau) const;

  /// Unsolved residual of one cell (physical measure) from the volume and its four faces.
  Vector9 cell_residual(const DGField2D& u, int i, int j) const;

  /// <u>_{ij} after one forward-Euler step, from the v = 1 component of the weak form.
  double cell_average_update(const DGField2D& u, int i, int j, double tau) const;

  /// Mixed-derivative contribution to the cell-average update over one step tau.
  double corner_term_B(const DGField2D& u, int i, int j, double tau) const;

  /// Cell-average update written as coefficients on test-point values.
  UpdateDecomposition decompose_update(const DGField2D& u, int i, int j, double tau) const;

  /// <u>_{ij} (weighted, average-integral convention) and the weighted mass sum |K| <u>.
  double weighted_cell_integral_average(const DGField2D& u, int i, int j) const;
  double weighted_average(const DGField2D& u, int i, int j) const;
  double weighted_mass(const DGField2D& u) const;

  const Mesh2D& mesh() const { return mesh_; }
  const FluxParams2D& params() const { return params_; }
  const Problem2D& problem() const { return problem_; }
  const QuadratureRule& lobatto() const { return lobatto_; }
  const DirectionalWeights2D& directional() const { return directional_; }
  /// Per-cell (or one shared) <phi_ab> for the limiter.
  const std::vector<std::array<double, 9>>& basis_moments() const { return basis_moments_; }
  bool is_linear() const { return linear_; }
  /// True once a non-definite tensor was seen at a face node.
  bool tensor_warning() const { return tensor_warning_; }

 private:
  Tensor2D face_tensor(double x, double y, double um, double up) const;
  void x_face(const CellPoly2D& L, const CellPoly2D& R, double xf, int j, double* rl, double* rr) const;
  void y_face(const CellPoly2D& B, const CellPoly2D& T, double yf, int i, double* rb, double* rt) const;
  void volume(const CellPoly2D& p, int i, int j, double* r) const;
  void build_linear_blocks();
  const Matrix9& mass_inverse(int cell) const { return mass_inverse_.size() == 1 ? mass_inverse_[0] : mass_inverse_[cell]; }

  Mesh2D mesh_;
  Problem2D problem_;
  FluxParams2D params_;
  SchemeOptions options_;
  QuadratureRule lobatto_;
  // Edge terms against the full test space have degree 4 in the tangential variable; fewer than
  // four Lobatto points leave growing modes. The v = 1 component is integrated exactly either way.
  QuadratureRule edge_;
  DirectionalWeights2D directional_;
  std::vector<Matrix9> mass_inverse_;
  std::vector<std::array<double, 9>> basis_moments_;
  // basis tables: edge nodes and volume nodes
  std::vector<std::array<double, 3>> edge_p_, edge_dp_;
  std::vector<std::array<double, 3>> vol_p_, vol_dp_;
  bool linear_ = false;
  bool fold_mass_ = false;
  Matrix9 block_d_, block_e_, block_w_, block_n_, block_s_;
  mutable bool tensor_warning_ = false;
};

/// Derivatives at `at` of the Lagrange basis on nodes {-1, gamma, 1}.
std::array<double, 3> lagrange_derivative_weights(double gamma, double at);

}  // namespace mpsddg
