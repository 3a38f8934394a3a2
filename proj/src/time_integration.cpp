#include "mpsddg/time_integration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mpsddg {

double cfl_1d_diffusion(std::span<const WeightMoments> moments, double max_a, const FluxParams& params) {
  if (max_a <= 0.0) return kInf;
  const double g = params.gamma;
  const AlphaCoefficients ap = alpha_coeffs(g, params);
  const AlphaCoefficients am = alpha_coeffs(-g, params);
  const double den_left = am.a3 + ap.a1;
  const double den_right = ap.a3 + am.a1;
  const double den_mid = 4.0 * (1.0 - 4.0 * params.beta1);
  double mu = kInf;
  for (const auto& m : moments) {
    const OmegaTilde w = compute_omega_tilde(m, g);
    mu = std::min(mu, w.w1 / den_left);
    mu = std::min(mu, w.w3 / den_right);
    if (den_mid > 0.0) mu = std::min(mu, (m.m0 - m.m2) / den_mid);
  }
  if (!(mu > 0.0)) throw ConfigError("diffusion CFL bound is not positive; gamma is not admissible");
  return mu / max_a;
}

double cfl_1d_convection(std::span<const WeightMoments> moments, double gamma, double lipschitz) {
  if (lipschitz <= 0.0) return kInf;
  double w = kInf;
  for (const auto& m : moments) {
    const OmegaTilde o = compute_omega_tilde(m, gamma);
    w = std::min({w, o.w1, o.w3});
  }
  return w / (2.0 * lipschitz);
}

double lambda0_unit_weight(double gamma, double lipschitz) {
  if (lipschitz <= 0.0) return kInf;
  const double g = std::abs(gamma);
  return (1.0 - 3.0 * g) / (12.0 * lipschitz * (1.0 - g));
}

ConvDiffBound cfl_1d_convdiff(std::span<const WeightMoments> moments, double max_a, const FluxParams& params,
                              double lipschitz) {
  ConvDiffBound b;
  b.lambda0 = cfl_1d_convection(moments, params.gamma, lipschitz);
  b.mu0 = max_a > 0.0 ? 0.5 * cfl_1d_diffusion(moments, max_a, params) : kInf;
  return b;
}

double mu0_convdiff_unit_weight(const FluxParams& params, double max_a) {
  if (max_a <= 0.0) return kInf;
  const double g = params.gamma;
  double best = kInf;
  for (double s : {1.0, -1.0}) {
    const double den = params.beta0 * (1.0 + s * g) + 8.0 * params.beta1 - 2.0;
    best = std::min(best, (1.0 + s * 3.0 * g) / den);
  }
  if (params.beta1 < 0.25) best = std::min(best, 2.0 / (1.0 - 4.0 * params.beta1));
  return best / (12.0 * max_a);
}

double beta0_threshold_constant(const Tensor2D& tensor, double kappa, int lobatto_points) {
  if (tensor.c == 0.0) return 1.0;
  const double w1 = 1.0 / (lobatto_points * (lobatto_points - 1.0));
  const double min_ab = std::min(tensor.a, tensor.b);
  if (min_ab <= 0.0) return kInf;
  return 1.0 + kappa * std::abs(tensor.c) / (2.0 * w1 * min_ab);
}

double beta0_threshold_variable(const TensorBounds& bounds, double gamma, double kappa, int lobatto_points) {
  if (bounds.max_abs_c == 0.0) return 1.0;
  if (bounds.min_ab <= 0.0) return kInf;
  const double ll = lobatto_points * (lobatto_points - 1.0);
  return 1.0 + 2.0 * kappa * bounds.max_abs_c * ll / ((1.0 - std::abs(gamma)) * bounds.min_ab);
}

namespace {

void check_beta0(double beta0, double required) {
  if (beta0 < required - 1e-12) {
    std::ostringstream os;
    os << "beta0 = " << beta0 << " is below the required minimum " << required << " for this tensor";
    throw ConfigError(os.str());
  }
}

}  // namespace

double cfl_2d_constant(const DirectionalWeights2D& weights, const Tensor2D& tensor, const FluxParams2D& params,
                       const Mesh2D& mesh, int lobatto_points, bool validate_beta0) {
  const double kappa = mesh.aspect();
  if (validate_beta0) check_beta0(params.beta0, beta0_threshold_constant(tensor, kappa, lobatto_points));
  const double g = std::max(std::abs(params.gamma_x), std::abs(params.gamma_y));
  const double w1 = 1.0 / (lobatto_points * (lobatto_points - 1.0));
  const double max_ab = std::max(tensor.a, tensor.b);
  const double omega = omega_lower_bound(weights, params.gamma_x, params.gamma_y);
  if (!(omega > 0.0)) throw ConfigError("2D interpolation weights are not positive; gamma is not admissible");
  if (max_ab <= 0.0 && tensor.c == 0.0) return kInf;
  double inner = w1 / (w1 * max_ab * (params.beta0 + (8.0 * params.beta1 - 2.0) / (1.0 + g)) +
                       kappa * std::abs(tensor.c));
  if (params.beta1 < 0.25 && max_ab > 0.0)
    inner = std::min(inner, (1.0 - g * g) / (4.0 * max_ab * (1.0 - 4.0 * params.beta1)));
  return omega * inner;
}

double cfl_2d_variable(const TensorBounds& bounds, const FluxParams2D& params, const Mesh2D& mesh,
                       int lobatto_points, bool validate_beta0) {
  const double kappa = mesh.aspect();
  const double g = std::max(std::abs(params.gamma_x), std::abs(params.gamma_y));
  if (validate_beta0) check_beta0(params.beta0, beta0_threshold_variable(bounds, g, kappa, lobatto_points));
  const double ll = lobatto_points * (lobatto_points - 1.0);
  const double max_ab = bounds.max_ab;
  if (max_ab <= 0.0 && bounds.max_abs_c == 0.0) return kInf;
  double mu = (1.0 - 3.0 * g) / (6.0 * max_ab * (params.beta0 + (8.0 * params.beta1 - 2.0) / (1.0 + g)) * (1.0 - g) +
                                 12.0 * kappa * bounds.max_abs_c * ll);
  if (params.beta1 < 0.25 && max_ab > 0.0) mu = std::min(mu, 1.0 / (6.0 * max_ab * (1.0 - 4.0 * params.beta1)));
  return mu;
}

}  // namespace mpsddg
