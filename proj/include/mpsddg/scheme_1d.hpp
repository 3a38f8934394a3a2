#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mpsddg/field.hpp"
#include "mpsddg/fluxes.hpp"
#include "mpsddg/problem.hpp"
#include "mpsddg/weighted_geometry.hpp"

namespace mpsddg {

struct SchemeOptions {
  /// Include the (u - {u}) v_x interface term; off gives the plain DDG scheme.
  bool interface_correction = true;
  ProjectionKind projection = ProjectionKind::weighted;
};

/// Semi-discrete DDG operator for M u_t + f(u)_x = (A u_x)_x with degree-2 cells.
class Scheme1D {
 public:
  Scheme1D(const Mesh1D& mesh, const Problem1D& problem, const FluxParams& params, SchemeOptions options = {});

  /// Time derivative of the modal coefficients.
  DGField1D rhs(const DGField1D& u, double t) const;
  /// u + tau * rhs(u, t)
  DGField1D euler_step(const DGField1D& u, double t, double tau) const;

  /// Unsolved weak-form residual of cell j given its two neighbors (physical measure).
  Eigen::Vector3d cell_residual(int j, const CellPoly1D& left, const CellPoly1D& self, const CellPoly1D& right,
                                double t) const;

  /// Ghost polynomial outside the left (or right) boundary at time t.
  CellPoly1D ghost(bool left, double t) const;

  double weighted_average(const DGField1D& u, int j) const;
  /// sum_j h <u>_j
  double weighted_mass(const DGField1D& u) const;

  const Mesh1D& mesh() const { return mesh_; }
  const FluxParams& params() const { return params_; }
  const std::vector<WeightMoments>& moments() const { return moments_; }
  const Problem1D& problem() const { return problem_; }
  bool is_linear() const { return linear_; }
  /// max over interfaces of A(x_{j+1/2}) (u-independent A) or the problem's bound.
  double max_interface_diffusivity(const Bounds& bounds) const;

 private:
  struct InterfaceTerms {
    double flux = 0.0;        // A F - fhat
    double correction = 0.0;  // A [u] / 2
  };
  InterfaceTerms interface_terms(int k, const CellPoly1D& left, const CellPoly1D& right) const;
  void build_linear_blocks();

  Mesh1D mesh_;
  Problem1D problem_;
  FluxParams params_;
  SchemeOptions options_;
  std::vector<WeightMoments> moments_;
  std::vector<Matrix3> mass_inverse_;
  std::vector<double> quad_x_;          // physical volume nodes, cell-major
  std::vector<double> quad_a_;          // A at volume nodes when u-independent
  std::vector<double> interface_a_;     // A at interfaces when u-independent
  bool linear_ = false;
  std::vector<Matrix3> west_, diag_, east_;  // mass-solved blocks of the linear operator
};

}  // namespace mpsddg
