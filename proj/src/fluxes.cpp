#include "mpsddg/fluxes.hpp"

#include <algorithm>
#include <cmath>

#include "mpsddg/errors.hpp"

namespace mpsddg {

AlphaCoefficients alpha_coeffs(double gamma, const FluxParams& p) {
  AlphaCoefficients a;
  a.a1 = (8.0 * p.beta1 - 1.0 + gamma) / (2.0 * (1.0 + gamma));
  a.a2 = 2.0 * (1.0 - 4.0 * p.beta1) / (1.0 - gamma * gamma);
  a.a3 = p.beta0 + (8.0 * p.beta1 - 3.0 + gamma) / (2.0 * (1.0 - gamma));
  return a;
}

double ddg_flux_1d(const InterfaceTraces& t, double h, const FluxParams& p) {
  return p.beta0 / h * t.value.jump() + t.d1.average() + p.beta1 * h * t.d2.jump();
}

double flux_via_alpha(const CellPoly1D& left, const CellPoly1D& right, double gamma, const FluxParams& p,
                      double h) {
  const AlphaCoefficients am = alpha_coeffs(-gamma, p);
  const AlphaCoefficients ap = alpha_coeffs(gamma, p);
  const double from_right = am.a3 * right.eval(-1.0) + am.a2 * right.eval(gamma) + am.a1 * right.eval(1.0);
  const double from_left = ap.a1 * left.eval(-1.0) + ap.a2 * left.eval(gamma) + ap.a3 * left.eval(1.0);
  return (from_right - from_left) / h;
}

MonotoneFluxSpec make_monotone_flux(std::function<double(double)> f, std::function<double(double)> df,
                                    const Bounds& bounds, std::optional<double> closed_form_sigma) {
  MonotoneFluxSpec s;
  s.f = std::move(f);
  s.df = std::move(df);
  if (closed_form_sigma) {
    s.sigma = *closed_form_sigma;
  } else {
    constexpr int samples = 1025;
    double m = 0.0;
    const double span = bounds.upper - bounds.lower;
    for (int k = 0; k < samples; ++k) {
      const double u = bounds.lower + span * k / (samples - 1);
      double d = 0.0;
      if (s.df) {
        d = s.df(u);
      } else {
        const double e = 1e-6 * std::max(1.0, std::abs(u));
        d = (s.f(u + e) - s.f(u - e)) / (2.0 * e);
      }
      m = std::max(m, std::abs(d));
    }
    s.sigma = 1.05 * m;
  }
  if (!(s.sigma >= 0.0) || !std::isfinite(s.sigma)) throw ConfigError("invalid Lax-Friedrichs dissipation");
  return s;
}

double lax_friedrichs(double um, double up, const MonotoneFluxSpec& s) {
  return 0.5 * (s.f(um) + s.f(up) - s.sigma * (up - um));
}

DdgFlux2D ddg_flux_2d(const DGField2D& field, Axis axis, int i, int j, double s, const FluxParams& p) {
  const Mesh2D& m = field.mesh;
  DdgFlux2D out;
  if (axis == Axis::x) {
    const CellPoly2D& L = field.at(i, j);
    const CellPoly2D& R = field.at((i + 1) % m.nx(), j);
    const InterfaceTraces t = interface_traces(L.along_xi(s), R.along_xi(s), m.dx());
    out.normal = ddg_flux_1d(t, m.dx(), p);
    out.tangential = 0.5 * (L.d_eta(1.0, s) + R.d_eta(-1.0, s)) * 2.0 / m.dy();
  } else {
    const CellPoly2D& B = field.at(i, j);
    const CellPoly2D& T = field.at(i, (j + 1) % m.ny());
    const InterfaceTraces t = interface_traces(B.along_eta(s), T.along_eta(s), m.dy());
    out.normal = ddg_flux_1d(t, m.dy(), p);
    out.tangential = 0.5 * (B.d_xi(s, 1.0) + T.d_xi(s, -1.0)) * 2.0 / m.dx();
  }
  return out;
}

}  // namespace mpsddg
