#pragma once

#include <string>
#include <vector>

#include "mpsddg/mesh.hpp"
#include "mpsddg/problem.hpp"

namespace mpsddg {

struct ProblemOptions {
  int porous_m = 2;
  int tensor_case = 1;  // 1 isotropic, 2 diag(1,2), 3 [[1,1],[1,2]]
  double epsilon = 0.01;
};

/// B_m(t, x) = t^-a [1 - a(m-1)|x|^2 / (2m t^(2a))]_+^(1/(m-1)), a = 1/(m+1)
double barenblatt(int m, double t, double x);
/// |x| where the Barenblatt bracket vanishes.
double barenblatt_support(int m, double t);

/// M u_t = (A u_x)_x on [1,3], M = 4x exp(1-x^2), A = exp(1-x^2)/x, exact exp(-t) sin(x^2-1-t).
Problem1D heat_weighted_1d();
/// u_t = (m u^(m-1) u_x)_x on [-6,6] from B_m(1,x); exact B_m(1+t,x), zero Dirichlet data.
Problem1D porous_medium(int m);
/// u_t + f(u)_x = eps (4u(1-u) u_x)_x on [0,1], f = u^2/(u^2+(1-u)^2), u(t,0)=1, u(t,1)=0.
Problem1D buckley_leverett(double epsilon = 0.01);
/// Periodic Gaussian on [-1,1]^2 with drift (0.01, 0.01) and one of three tensors.
Problem2D aniso_2d(int tensor_case);

std::vector<std::string> problem_names();
bool is_2d_problem(const std::string& name);
Problem1D make_problem_1d(const std::string& name, const ProblemOptions& options = {});
Problem2D make_problem_2d(const std::string& name, const ProblemOptions& options = {});

/// Problem bounds if given, else min/max of u0 over quadrature nodes, the test points and
/// 32 evenly spaced points per cell.
Bounds initial_bounds(const Problem1D& problem, const Mesh1D& mesh, double gamma);
Bounds initial_bounds(const Problem2D& problem, const Mesh2D& mesh, double gamma_x, double gamma_y);

/// Closed form if the problem has one, else sampled on a tensor grid of volume nodes and cell edges with
/// u over the bounds (1025 values when the tensor depends on u), inflated by 5%.
TensorBounds tensor_bounds(const Problem2D& problem, const Mesh2D& mesh, const Bounds& bounds);

}  // namespace mpsddg
