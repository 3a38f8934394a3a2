#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "mpsddg/errors.hpp"
#include "mpsddg/field.hpp"
#include "mpsddg/fluxes.hpp"
#include "mpsddg/problem.hpp"
#include "mpsddg/scheme_2d.hpp"
#include "mpsddg/weighted_geometry.hpp"

namespace mpsddg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// mu0 for weighted 1D diffusion: min over cells and both test-offset signs, divided by max A.
double cfl_1d_diffusion(std::span<const WeightMoments> moments, double max_a, const FluxParams& params);

/// lambda0 = (1/(2L)) min_j min(w1_j, w3_j) for the convective part with weight M.
double cfl_1d_convection(std::span<const WeightMoments> moments, double gamma, double lipschitz);

/// lambda0 = (1 - 3|gamma|) / (12 L (1 - |gamma|)) for M = 1.
double lambda0_unit_weight(double gamma, double lipschitz);

struct ConvDiffBound {
  double lambda0 = kInf;
  double mu0 = kInf;
};

/// Split bound for convection-diffusion with weight M: lambda0 as above, mu0 half the diffusion bound.
ConvDiffBound cfl_1d_convdiff(std::span<const WeightMoments> moments, double max_a, const FluxParams& params,
                              double lipschitz);

/// Closed-form mu0 for convection-diffusion with M = 1.
double mu0_convdiff_unit_weight(const FluxParams& params, double max_a);

/// Smallest beta0 allowed with a constant tensor: 1 + kappa |c| / (2 w_hat_1 min(a, b)).
double beta0_threshold_constant(const Tensor2D& tensor, double kappa, int lobatto_points);

/// Smallest beta0 allowed with a variable tensor: 1 + 2 kappa |c| L (L-1) / ((1 - gamma) min(a, b)).
double beta0_threshold_variable(const TensorBounds& bounds, double gamma, double kappa, int lobatto_points);

/// mu0 for the constant-tensor 2D scheme; throws ConfigError when beta0 is below its threshold.
double cfl_2d_constant(const DirectionalWeights2D& weights, const Tensor2D& tensor, const FluxParams2D& params,
                       const Mesh2D& mesh, int lobatto_points, bool validate_beta0 = true);

/// mu0 for the variable-tensor 2D scheme with M = 1; throws ConfigError when beta0 is too small.
double cfl_2d_variable(const TensorBounds& bounds, const FluxParams2D& params, const Mesh2D& mesh,
                       int lobatto_points, bool validate_beta0 = true);

struct CflReport {
  double mu0 = kInf;
  double lambda0 = kInf;
  double tau = 0.0;
  double safety = 0.9;
  std::string binding;  // which constraint set tau
  bool heuristic = false;
};

/// SSP(3,3) convex-combination coefficients: stage k = a_k u^n + b_k E(previous stage).
struct SspTableau {
  static constexpr double a[3] = {0.0, 0.75, 1.0 / 3.0};
  static constexpr double b[3] = {1.0, 0.25, 2.0 / 3.0};
  static constexpr double time[3] = {0.0, 1.0, 0.5};
};

/// Index of the first cell holding a non-finite coefficient, or -1.
template <class Field>
int first_nonfinite_cell(const Field& u) {
  for (std::size_t k = 0; k < u.cells.size(); ++k)
    for (double c : u.cells[k].c)
      if (!std::isfinite(c)) return static_cast<int>(k);
  return -1;
}

/// One SSP(3,3) step. `euler(u, t, tau)` returns u + tau L(u, t); `limit(u)` limits in place
/// and is applied to every stage result, so each forward-Euler substage starts from limited data.
template <class Field, class Euler, class Limit>
Field ssp33_step(const Field& u, double t, double tau, Euler&& euler, Limit&& limit, long step = 0) {
  auto check = [&](const Field& v, int stage) {
    const int bad = first_nonfinite_cell(v);
    if (bad >= 0)
      throw BlowUpError("non-finite solution in stage " + std::to_string(stage) + " of step " + std::to_string(step) +
                            " at cell " + std::to_string(bad),
                        step, t, bad);
  };
  Field stage = u;
  for (int k = 0; k < 3; ++k) {
    const Field e = euler(stage, t + SspTableau::time[k] * tau, tau);
    stage = k == 0 ? e : combine(SspTableau::a[k], u, SspTableau::b[k], e);
    check(stage, k + 1);
    limit(stage);
  }
  return stage;
}

}  // namespace mpsddg
