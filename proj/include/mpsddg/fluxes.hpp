#pragma once

#include <functional>
#include <optional>

#include "mpsddg/field.hpp"

namespace mpsddg {

struct FluxParams {
  double beta0 = 2.0;
  double beta1 = 0.16;
  double gamma = 0.1;
};

struct AlphaCoefficients {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double sum() const { return a1 + a2 + a3; }
};

AlphaCoefficients alpha_coeffs(double gamma, const FluxParams& params);

/// (beta0/h)[u] + {u_x} + beta1 h [u_xx]
double ddg_flux_1d(const InterfaceTraces& t, double h, const FluxParams& params);

/// Same flux written through the values of the two neighbor polynomials at {-1, gamma, 1}.
double flux_via_alpha(const CellPoly1D& left, const CellPoly1D& right, double gamma, const FluxParams& params,
                      double h);

struct Bounds {
  double lower = 0.0;
  double upper = 1.0;
};

/// Convective flux with its Lax-Friedrichs dissipation sigma = max |f'| on the bounds.
struct MonotoneFluxSpec {
  std::function<double(double)> f;
  std::function<double(double)> df;
  double sigma = 0.0;
  /// Lipschitz constant used by the CFL bounds; equals sigma for Lax-Friedrichs.
  double lipschitz() const { return sigma; }
};

/// sigma from a closed-form bound if given, else 1025 samples of |f'| on the bounds, inflated by 5%.
MonotoneFluxSpec make_monotone_flux(std::function<double(double)> f, std::function<double(double)> df,
                                    const Bounds& bounds, std::optional<double> closed_form_sigma = std::nullopt);

double lax_friedrichs(double u_minus, double u_plus, const MonotoneFluxSpec& spec);

enum class Axis { x, y };

struct DdgFlux2D {
  double normal = 0.0;
  double tangential = 0.0;
};

/// Flux components at reference position s along the face between cell (i,j) and its
/// neighbor in +axis direction (periodic wrap). Normal uses the DDG penalty, tangential the plain average.
DdgFlux2D ddg_flux_2d(const DGField2D& field, Axis axis, int i, int j, double s, const FluxParams& params);

}  // namespace mpsddg
