#pragma once

#include <functional>
#include <span>

#include "mpsddg/field.hpp"

namespace mpsddg {

struct ErrorNorms {
  double e1 = 0.0;
  double e2 = 0.0;
  double linf = 0.0;  // max over quadrature nodes
};

/// Cellwise L1/L2 errors against `exact` with the 16-point Gauss rule (16x16 in 2D).
ErrorNorms error_norms(const DGField1D& u, const Function1D& exact);
ErrorNorms error_norms(const DGField2D& u, const Function2D& exact);

/// Distance between a coarse field and its 2:1 refinement, integrated on the fine cells.
ErrorNorms consecutive_error(const DGField1D& coarse, const DGField1D& fine);
ErrorNorms consecutive_error(const DGField2D& coarse, const DGField2D& fine);

/// Errors over the cells whose closure is farther than `radius` from every corner.
/// radius <= 0 keeps every cell.
ErrorNorms corner_excluding_error(const DGField1D& u, const Function1D& exact, std::span<const double> corners,
                                  double radius);

}  // namespace mpsddg
