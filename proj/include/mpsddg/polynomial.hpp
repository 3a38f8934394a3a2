#pragma once

#include <array>

namespace mpsddg {

inline constexpr int kModes1D = 3;
inline constexpr int kModes2D = 9;

// Modal basis {1, xi, xi^2 - 1/3} on [-1, 1].
inline double mode(int a, double xi) {
  switch (a) {
    case 0: return 1.0;
    case 1: return xi;
    default: return xi * xi - 1.0 / 3.0;
  }
}
inline double mode_d1(int a, double xi) {
  switch (a) {
    case 0: return 0.0;
    case 1: return 1.0;
    default: return 2.0 * xi;
  }
}
inline double mode_d2(int a) { return a == 2 ? 2.0 : 0.0; }

/// Degree-2 polynomial on one cell in reference coordinates.
struct CellPoly1D {
  std::array<double, kModes1D> c{};

  double eval(double xi) const { return c[0] + c[1] * xi + c[2] * (xi * xi - 1.0 / 3.0); }
  /// d/dxi
  double d1(double xi) const { return c[1] + 2.0 * c[2] * xi; }
  /// d^2/dxi^2
  double d2() const { return 2.0 * c[2]; }
};

/// Tensor-product Q2 polynomial; coefficient c[a*3+b] multiplies P_a(xi) P_b(eta).
struct CellPoly2D {
  std::array<double, kModes2D> c{};

  double& operator()(int a, int b) { return c[a * 3 + b]; }
  double operator()(int a, int b) const { return c[a * 3 + b]; }

  /// Polynomial in xi along the line eta = const.
  CellPoly1D along_xi(double eta) const {
    const double pb[3] = {1.0, eta, eta * eta - 1.0 / 3.0};
    CellPoly1D p;
    for (int a = 0; a < 3; ++a) p.c[a] = c[a * 3] * pb[0] + c[a * 3 + 1] * pb[1] + c[a * 3 + 2] * pb[2];
    return p;
  }
  /// Polynomial in eta along the line xi = const.
  CellPoly1D along_eta(double xi) const {
    const double pa[3] = {1.0, xi, xi * xi - 1.0 / 3.0};
    CellPoly1D p;
    for (int b = 0; b < 3; ++b) p.c[b] = c[b] * pa[0] + c[3 + b] * pa[1] + c[6 + b] * pa[2];
    return p;
  }
  double eval(double xi, double eta) const { return along_xi(eta).eval(xi); }
  double d_xi(double xi, double eta) const { return along_xi(eta).d1(xi); }
  double d_eta(double xi, double eta) const { return along_eta(xi).d1(eta); }
};

}  // namespace mpsddg
