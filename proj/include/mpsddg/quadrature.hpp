#pragma once

#include <cstddef>
#include <vector>

namespace mpsddg {

enum class QuadratureKind { gauss, gauss_lobatto };

/// Rule on [-1, 1] normalized for the average integral (1/2)∫f, so the weights sum to 1.
struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::gauss;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double average(F&& f) const {
    double s = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) s += weights[q] * f(nodes[q]);
    return s;
  }
};

/// n-point Gauss-Legendre rule, exact through degree 2n-1.
QuadratureRule gauss_nodes(int n);

/// L-point Gauss-Lobatto rule (endpoints included), exact through degree 2L-3.
QuadratureRule gauss_lobatto_nodes(int points);

inline constexpr int kVolumePoints = 16;

/// Shared 16-point Gauss rule used for every cell integral.
const QuadratureRule& volume_rule();

/// Legendre polynomial P_n(x) and its derivative.
void legendre(int n, double x, double& p, double& dp);

}  // namespace mpsddg
