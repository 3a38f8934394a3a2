#include "mpsddg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mpsddg/errors.hpp"

namespace mpsddg {

void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  // derivative from the recurrence; endpoint values use the closed form
  if (std::abs(std::abs(x) - 1.0) < 1e-300) {
    dp = (x > 0 ? 1.0 : (n % 2 ? 1.0 : -1.0)) * 0.5 * n * (n + 1);
  } else {
    dp = n * (x * p1 - p0) / (x * x - 1.0);
  }
}

QuadratureRule gauss_nodes(int n) {
  if (n < 1) throw ConfigError("gauss_nodes: need at least one point");
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  // enforce exact symmetry
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[n - 1 - i] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule gauss_lobatto_nodes(int points) {
  if (points < 3) throw ConfigError("gauss_lobatto_nodes: need L >= 3");
  const int n = points - 1;  // nodes are +-1 and the roots of P_n'
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_lobatto;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  std::vector<double> x(points);
  for (int i = 0; i < points; ++i) x[i] = -std::cos(std::numbers::pi * i / n);
  for (int i = 1; i < n; ++i) {
    // Newton on (1 - x^2) P_n'(x), using P_n'' from the Legendre ODE
    double xi = x[i];
    for (int it = 0; it < 100; ++it) {
      double p = 0.0, dp = 0.0;
      legendre(n, xi, p, dp);
      const double d2p = (2.0 * xi * dp - n * (n + 1) * p) / (1.0 - xi * xi);
      const double dx = dp / d2p;
      xi -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    x[i] = xi;
  }
  for (int i = 0; i < points; ++i) {
    double p = 0.0, dp = 0.0;
    legendre(n, x[i], p, dp);
    rule.nodes[i] = x[i];
    rule.weights[i] = 1.0 / (n * (n + 1) * p * p);
  }
  for (int i = 0; i < points / 2; ++i) {
    const double xs = 0.5 * (rule.nodes[points - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[points - 1 - i] + rule.weights[i]);
    rule.nodes[i] = -xs;
    rule.nodes[points - 1 - i] = xs;
    rule.weights[i] = rule.weights[points - 1 - i] = w;
  }
  if (points % 2) rule.nodes[points / 2] = 0.0;
  rule.nodes.front() = -1.0;
  rule.nodes.back() = 1.0;
  return rule;
}

const QuadratureRule& volume_rule() {
  static const QuadratureRule rule = gauss_nodes(kVolumePoints);
  return rule;
}

}  // namespace mpsddg
