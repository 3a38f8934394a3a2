#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mpsddg/field.hpp"
#include "mpsddg/quadrature.hpp"

namespace mpsddg {

/// Average-integral moments <1>, <xi>, <xi^2> of a weight on the reference cell.
struct WeightMoments {
  double m0 = 1.0;
  double m1 = 0.0;
  double m2 = 1.0 / 3.0;

  /// <q0 + q1 xi + q2 xi^2>
  double of(double q0, double q1, double q2) const { return q0 * m0 + q1 * m1 + q2 * m2; }
  WeightMoments scaled(double s) const { return {s * m0, s * m1, s * m2}; }
};

/// <q> = (1/2)∫ M(xi) q(xi) dxi with the 16-point Gauss rule; M given on the reference cell.
double weighted_moment(const Function1D& weight_ref, const Function1D& q);

WeightMoments weight_moments(const Function1D& weight_ref);
WeightMoments cell_weight_moments(const Mesh1D& mesh, int j, const Function1D& weight);

/// Open interval (a_j, b_j) of test-point offsets giving positive interpolation weights.
struct AdmissibleInterval {
  double a = -1.0 / 3.0;
  double b = 1.0 / 3.0;
  bool contains(double g) const { return a < g && g < b; }
};

AdmissibleInterval compute_ab(const WeightMoments& w);

/// Weights with <p> = w1 p(-1) + w2 p(gamma) + w3 p(1) for every quadratic p.
struct OmegaTilde {
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;
  double sum() const { return w1 + w2 + w3; }
};

OmegaTilde compute_omega_tilde(const WeightMoments& w, double gamma);

struct WeightedCellData {
  WeightMoments moments;
  AdmissibleInterval ab;
  OmegaTilde omega;
  double mass() const { return moments.m0; }
};

std::vector<WeightMoments> weight_moments_1d(const Mesh1D& mesh, const Function1D& weight);
std::vector<WeightedCellData> weighted_cell_data(std::span<const WeightMoments> moments, double gamma);

/// Pick (or validate) one global gamma in the intersection of all intervals and |gamma| <= 8 beta1 - 1.
double select_gamma(std::span<const AdmissibleInterval> intervals, double beta1,
                    std::optional<double> user_gamma = std::nullopt);

/// Moments <phi_a> of the 1D basis: (m0, m1, m2 - m0/3).
std::array<double, 3> basis_moments(const WeightMoments& w);

/// Per-direction moments at every transverse Lobatto node of every 2D cell.
struct DirectionalWeights2D {
  int nx = 0;
  int ny = 0;
  int lobatto_points = 3;
  /// x_moments[cell * L + s]: moments in xi of M(., y_s) over cell, s over Lobatto nodes in eta.
  std::vector<WeightMoments> x_moments;
  /// y_moments[cell * L + s]: moments in eta of M(x_s, .) over cell.
  std::vector<WeightMoments> y_moments;

  const WeightMoments& x_at(int cell, int s) const { return x_moments[cell * lobatto_points + s]; }
  const WeightMoments& y_at(int cell, int s) const { return y_moments[cell * lobatto_points + s]; }
};

DirectionalWeights2D directional_weights(const Mesh2D& mesh, const Function2D& weight,
                                         const QuadratureRule& lobatto);

std::vector<AdmissibleInterval> x_intervals(const DirectionalWeights2D& w);
std::vector<AdmissibleInterval> y_intervals(const DirectionalWeights2D& w);

/// Lower bound of the directional interpolation weights of one cell.
double omega_lower_bound(const DirectionalWeights2D& w, int cell, double gamma_x, double gamma_y);
/// Minimum of omega_lower_bound over all cells.
double omega_lower_bound(const DirectionalWeights2D& w, double gamma_x, double gamma_y);

/// <phi_ab> for the 2D basis, average-integral convention, 16x16 Gauss.
std::array<double, 9> basis_moments_2d(const Mesh2D& mesh, int i, int j, const Function2D& weight);

}  // namespace mpsddg
