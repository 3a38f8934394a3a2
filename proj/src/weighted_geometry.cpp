#include "mpsddg/weighted_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mpsddg/errors.hpp"

namespace mpsddg {

double weighted_moment(const Function1D& weight_ref, const Function1D& q) {
  return volume_rule().average([&](double xi) { return weight_ref(xi) * q(xi); });
}

WeightMoments weight_moments(const Function1D& weight_ref) {
  const QuadratureRule& g = volume_rule();
  WeightMoments w{0.0, 0.0, 0.0};
  for (std::size_t q = 0; q < g.size(); ++q) {
    const double xi = g.nodes[q];
    const double m = g.weights[q] * weight_ref(xi);
    w.m0 += m;
    w.m1 += m * xi;
    w.m2 += m * xi * xi;
  }
  return w;
}

WeightMoments cell_weight_moments(const Mesh1D& mesh, int j, const Function1D& weight) {
  return weight_moments([&](double xi) { return weight(mesh.to_physical(j, xi)); });
}

AdmissibleInterval compute_ab(const WeightMoments& w) {
  AdmissibleInterval r;
  r.a = w.of(0.0, 1.0, -1.0) / w.of(1.0, -1.0, 0.0);
  r.b = w.of(0.0, 1.0, 1.0) / w.of(1.0, 1.0, 0.0);
  return r;
}

OmegaTilde compute_omega_tilde(const WeightMoments& w, double gamma) {
  OmegaTilde o;
  o.w1 = w.of(gamma, -(1.0 + gamma), 1.0) / (2.0 * (1.0 + gamma));
  o.w2 = w.of(1.0, 0.0, -1.0) / (1.0 - gamma * gamma);
  o.w3 = w.of(-gamma, 1.0 - gamma, 1.0) / (2.0 * (1.0 - gamma));
  return o;
}

std::vector<WeightMoments> weight_moments_1d(const Mesh1D& mesh, const Function1D& weight) {
  std::vector<WeightMoments> out(mesh.cells);
  for (int j = 0; j < mesh.cells; ++j) out[j] = cell_weight_moments(mesh, j, weight);
  return out;
}

std::vector<WeightedCellData> weighted_cell_data(std::span<const WeightMoments> moments, double gamma) {
  std::vector<WeightedCellData> out(moments.size());
  for (std::size_t j = 0; j < moments.size(); ++j) {
    out[j].moments = moments[j];
    out[j].ab = compute_ab(moments[j]);
    out[j].omega = compute_omega_tilde(moments[j], gamma);
  }
  return out;
}

double select_gamma(std::span<const AdmissibleInterval> intervals, double beta1,
                    std::optional<double> user_gamma) {
  if (beta1 < 0.125 - 1e-14 || beta1 > 0.25 + 1e-14)
    throw ConfigError("beta1 must lie in [1/8, 1/4], got " + std::to_string(beta1));
  if (intervals.empty()) throw ConfigError("select_gamma: no cells");
  const double g = std::max(0.0, 8.0 * beta1 - 1.0);
  if (user_gamma) {
    const double gam = *user_gamma;
    if (std::abs(gam) > g + 1e-14)
      throw ConfigError("gamma = " + std::to_string(gam) + " violates |gamma| <= 8*beta1 - 1 = " +
                        std::to_string(g));
    for (std::size_t j = 0; j < intervals.size(); ++j) {
      if (!intervals[j].contains(gam))
        throw ConfigError("gamma = " + std::to_string(gam) + " outside the admissible interval (" +
                          std::to_string(intervals[j].a) + ", " + std::to_string(intervals[j].b) +
                          ") of cell " + std::to_string(j));
    }
    return gam;
  }
  std::size_t ja = 0, jb = 0;
  for (std::size_t j = 1; j < intervals.size(); ++j) {
    if (intervals[j].a > intervals[ja].a) ja = j;
    if (intervals[j].b < intervals[jb].b) jb = j;
  }
  const double lo = intervals[ja].a, hi = intervals[jb].b;
  if (!(lo < hi))
    throw ConfigError("no common admissible gamma: cell " + std::to_string(ja) + " needs gamma > " +
                      std::to_string(lo) + " but cell " + std::to_string(jb) + " needs gamma < " +
                      std::to_string(hi));
  // keep a margin from the open ends, where an interpolation weight vanishes
  const double margin = 0.05 * (hi - lo);
  const double lower = std::max(lo + margin, -g);
  const double upper = std::min(hi - margin, g);
  if (lower <= upper) return std::abs(upper) >= std::abs(lower) ? upper : lower;
  const double mid = 0.5 * (std::max(lo, -g) + std::min(hi, g));
  if (lo < mid && mid < hi && std::abs(mid) <= g + 1e-14) return mid;
  throw ConfigError("no admissible gamma: the cell intervals (" + std::to_string(lo) + ", " +
                    std::to_string(hi) + ") miss [-" + std::to_string(g) + ", " + std::to_string(g) +
                    "] (cells " + std::to_string(ja) + ", " + std::to_string(jb) + ")");
}

std::array<double, 3> basis_moments(const WeightMoments& w) {
  return {w.m0, w.m1, w.m2 - w.m0 / 3.0};
}

DirectionalWeights2D directional_weights(const Mesh2D& mesh, const Function2D& weight,
                                         const QuadratureRule& lobatto) {
  DirectionalWeights2D d;
  d.nx = mesh.nx();
  d.ny = mesh.ny();
  d.lobatto_points = static_cast<int>(lobatto.size());
  const int L = d.lobatto_points;
  d.x_moments.resize(static_cast<std::size_t>(mesh.size()) * L);
  d.y_moments.resize(static_cast<std::size_t>(mesh.size()) * L);
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const int cell = mesh.index(i, j);
      for (int s = 0; s < L; ++s) {
        const double ys = mesh.y.to_physical(j, lobatto.nodes[s]);
        const double xs = mesh.x.to_physical(i, lobatto.nodes[s]);
        d.x_moments[cell * L + s] =
            weight_moments([&](double xi) { return weight(mesh.x.to_physical(i, xi), ys); });
        d.y_moments[cell * L + s] =
            weight_moments([&](double eta) { return weight(xs, mesh.y.to_physical(j, eta)); });
      }
    }
  }
  return d;
}

std::vector<AdmissibleInterval> x_intervals(const DirectionalWeights2D& w) {
  std::vector<AdmissibleInterval> out(w.x_moments.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = compute_ab(w.x_moments[k]);
  return out;
}

std::vector<AdmissibleInterval> y_intervals(const DirectionalWeights2D& w) {
  std::vector<AdmissibleInterval> out(w.y_moments.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = compute_ab(w.y_moments[k]);
  return out;
}

double omega_lower_bound(const DirectionalWeights2D& w, int cell, double gamma_x, double gamma_y) {
  double lb = std::numeric_limits<double>::infinity();
  for (int s = 0; s < w.lobatto_points; ++s) {
    const OmegaTilde ox = compute_omega_tilde(w.x_at(cell, s), gamma_x);
    const OmegaTilde oy = compute_omega_tilde(w.y_at(cell, s), gamma_y);
    lb = std::min({lb, ox.w1, ox.w2, ox.w3, oy.w1, oy.w2, oy.w3});
  }
  return lb;
}

double omega_lower_bound(const DirectionalWeights2D& w, double gamma_x, double gamma_y) {
  double lb = std::numeric_limits<double>::infinity();
  for (int cell = 0; cell < w.nx * w.ny; ++cell) lb = std::min(lb, omega_lower_bound(w, cell, gamma_x, gamma_y));
  return lb;
}

std::array<double, 9> basis_moments_2d(const Mesh2D& mesh, int i, int j, const Function2D& weight) {
  const QuadratureRule& g = volume_rule();
  std::array<double, 9> out{};
  for (std::size_t qx = 0; qx < g.size(); ++qx) {
    const double xi = g.nodes[qx];
    for (std::size_t qy = 0; qy < g.size(); ++qy) {
      const double eta = g.nodes[qy];
      const double w =
          g.weights[qx] * g.weights[qy] * weight(mesh.x.to_physical(i, xi), mesh.y.to_physical(j, eta));
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out[a * 3 + b] += w * mode(a, xi) * mode(b, eta);
    }
  }
  return out;
}

}  // namespace mpsddg
