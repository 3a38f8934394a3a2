#include "mpsddg/scheme_1d.hpp"

#include <algorithm>
#include <cmath>

#include "mpsddg/errors.hpp"
#include "mpsddg/quadrature.hpp"

namespace mpsddg {

namespace {

const double kPhiLeft[3] = {1.0, -1.0, 2.0 / 3.0};
const double kPhiRight[3] = {1.0, 1.0, 2.0 / 3.0};
const double kDPhiLeft[3] = {0.0, 1.0, -2.0};
const double kDPhiRight[3] = {0.0, 1.0, 2.0};

}  // namespace

Scheme1D::Scheme1D(const Mesh1D& mesh, const Problem1D& problem, const FluxParams& params, SchemeOptions options)
    : mesh_(mesh), problem_(problem), params_(params), options_(options) {
  const int n = mesh_.cells;
  moments_ = weight_moments_1d(mesh_, problem_.weight);
  mass_inverse_.resize(n);
  for (int j = 0; j < n; ++j) mass_inverse_[j] = weighted_mass_matrix(mesh_, j, problem_.weight).inverse();

  const QuadratureRule& g = volume_rule();
  quad_x_.resize(static_cast<std::size_t>(n) * g.size());
  for (int j = 0; j < n; ++j)
    for (std::size_t q = 0; q < g.size(); ++q) quad_x_[j * g.size() + q] = mesh_.to_physical(j, g.nodes[q]);
  if (!problem_.diffusivity_depends_on_u) {
    quad_a_.resize(quad_x_.size());
    for (std::size_t k = 0; k < quad_x_.size(); ++k) quad_a_[k] = problem_.diffusivity(quad_x_[k], 0.0);
    interface_a_.resize(n + 1);
    for (int k = 0; k <= n; ++k) interface_a_[k] = problem_.diffusivity(mesh_.interface(k), 0.0);
  }
  linear_ = !problem_.diffusivity_depends_on_u && !problem_.convection;
  if (linear_) build_linear_blocks();
}

Scheme1D::InterfaceTerms Scheme1D::interface_terms(int k, const CellPoly1D& left, const CellPoly1D& right) const {
  const double h = mesh_.h;
  const InterfaceTraces tr = interface_traces(left, right, h);
  const double x = mesh_.interface(k);
  double a = 0.0;
  if (problem_.diffusivity_depends_on_u)
    a = 0.5 * (problem_.diffusivity(x, tr.value.minus) + problem_.diffusivity(x, tr.value.plus));
  else
    a = interface_a_[k];
  InterfaceTerms out;
  out.flux = a * ddg_flux_1d(tr, h, params_);
  if (problem_.convection) out.flux -= lax_friedrichs(tr.value.minus, tr.value.plus, *problem_.convection);
  if (options_.interface_correction) out.correction = 0.5 * a * tr.value.jump();
  return out;
}

Eigen::Vector3d Scheme1D::cell_residual(int j, const CellPoly1D& left, const CellPoly1D& self,
                                        const CellPoly1D& right, double) const {
  const QuadratureRule& g = volume_rule();
  const double h = mesh_.h;
  const double s = 2.0 / h;
  Eigen::Vector3d r = Eigen::Vector3d::Zero();
  for (std::size_t q = 0; q < g.size(); ++q) {
    const double xi = g.nodes[q];
    const std::size_t idx = j * g.size() + q;
    const double ux = s * self.d1(xi);
    double flux = 0.0;
    if (problem_.diffusivity_depends_on_u || problem_.convection) {
      const double u = self.eval(xi);
      const double a = problem_.diffusivity_depends_on_u ? problem_.diffusivity(quad_x_[idx], u) : quad_a_[idx];
      flux = -a * ux;
      if (problem_.convection) flux += problem_.convection->f(u);
    } else {
      flux = -quad_a_[idx] * ux;
    }
    // h * (2/h) phi'
    const double wf = 2.0 * g.weights[q] * flux;
    r(1) += wf;
    r(2) += wf * 2.0 * xi;
  }
  const InterfaceTerms tl = interface_terms(j, left, self);
  const InterfaceTerms tr = interface_terms(j + 1, self, right);
  for (int a = 0; a < 3; ++a) {
    r(a) += tr.flux * kPhiRight[a] - tl.flux * kPhiLeft[a];
    r(a) -= s * (tr.correction * kDPhiRight[a] + tl.correction * kDPhiLeft[a]);
  }
  return r;
}

CellPoly1D Scheme1D::ghost(bool left, double t) const {
  const BoundaryCondition1D& bc = problem_.boundary;
  CellPoly1D p;
  switch (bc.kind) {
    case BoundaryKind::periodic:
      throw ConfigError("ghost cells are not used with periodic boundaries");
    case BoundaryKind::dirichlet:
      p.c[0] = left ? bc.left_value : bc.right_value;
      return p;
    case BoundaryKind::exact: {
      if (!problem_.exact) throw ConfigError("exact boundary condition needs an exact solution");
      const double center = left ? mesh_.left - 0.5 * mesh_.h : mesh_.right + 0.5 * mesh_.h;
      return project_cell([&](double x) { return problem_.exact(t, x); }, problem_.weight, center, mesh_.h,
                          options_.projection);
    }
  }
  return p;
}

void Scheme1D::build_linear_blocks() {
  const int n = mesh_.cells;
  west_.assign(n, Matrix3::Zero());
  diag_.assign(n, Matrix3::Zero());
  east_.assign(n, Matrix3::Zero());
  const CellPoly1D zero;
  for (int j = 0; j < n; ++j) {
    for (int b = 0; b < 3; ++b) {
      CellPoly1D e;
      e.c[b] = 1.0;
      west_[j].col(b) = mass_inverse_[j] * cell_residual(j, e, zero, zero, 0.0);
      diag_[j].col(b) = mass_inverse_[j] * cell_residual(j, zero, e, zero, 0.0);
      east_[j].col(b) = mass_inverse_[j] * cell_residual(j, zero, zero, e, 0.0);
    }
  }
}

DGField1D Scheme1D::rhs(const DGField1D& u, double t) const {
  const int n = mesh_.cells;
  const bool periodic = problem_.boundary.kind == BoundaryKind::periodic;
  const CellPoly1D gl = periodic ? u.cells[n - 1] : ghost(true, t);
  const CellPoly1D gr = periodic ? u.cells[0] : ghost(false, t);
  auto neighbor = [&](int j) -> const CellPoly1D& {
    if (j < 0) return gl;
    if (j >= n) return gr;
    return u.cells[j];
  };
  DGField1D out(mesh_);
  if (linear_) {
    for (int j = 0; j < n; ++j) {
      const Eigen::Map<const Eigen::Vector3d> cw(neighbor(j - 1).c.data());
      const Eigen::Map<const Eigen::Vector3d> cc(u.cells[j].c.data());
      const Eigen::Map<const Eigen::Vector3d> ce(neighbor(j + 1).c.data());
      Eigen::Map<Eigen::Vector3d>(out.cells[j].c.data()) = west_[j] * cw + diag_[j] * cc + east_[j] * ce;
    }
    return out;
  }
  // interface terms once per interface, then volume terms per cell
  std::vector<InterfaceTerms> terms(n + 1);
  for (int k = 0; k <= n; ++k) terms[k] = interface_terms(k, neighbor(k - 1), neighbor(k));
  const QuadratureRule& g = volume_rule();
  const double s = 2.0 / mesh_.h;
  for (int j = 0; j < n; ++j) {
    const CellPoly1D& p = u.cells[j];
    Eigen::Vector3d r = Eigen::Vector3d::Zero();
    for (std::size_t q = 0; q < g.size(); ++q) {
      const double xi = g.nodes[q];
      const std::size_t idx = j * g.size() + q;
      const double uq = p.eval(xi);
      const double a = problem_.diffusivity_depends_on_u ? problem_.diffusivity(quad_x_[idx], uq) : quad_a_[idx];
      double flux = -a * s * p.d1(xi);
      if (problem_.convection) flux += problem_.convection->f(uq);
      const double wf = 2.0 * g.weights[q] * flux;
      r(1) += wf;
      r(2) += wf * 2.0 * xi;
    }
    const InterfaceTerms& tl = terms[j];
    const InterfaceTerms& tr = terms[j + 1];
    for (int a = 0; a < 3; ++a) {
      r(a) += tr.flux * kPhiRight[a] - tl.flux * kPhiLeft[a];
      r(a) -= s * (tr.correction * kDPhiRight[a] + tl.correction * kDPhiLeft[a]);
    }
    Eigen::Map<Eigen::Vector3d>(out.cells[j].c.data()) = mass_inverse_[j] * r;
  }
  return out;
}

DGField1D Scheme1D::euler_step(const DGField1D& u, double t, double tau) const {
  if (tau == 0.0) return u;
  return combine(1.0, u, tau, rhs(u, t));
}

double Scheme1D::weighted_average(const DGField1D& u, int j) const {
  const std::array<double, 3> m = basis_moments(moments_[j]);
  const auto& c = u.cells[j].c;
  return (m[0] * c[0] + m[1] * c[1] + m[2] * c[2]) / moments_[j].m0;
}

double Scheme1D::weighted_mass(const DGField1D& u) const {
  double total = 0.0;
  for (int j = 0; j < mesh_.cells; ++j) {
    const std::array<double, 3> m = basis_moments(moments_[j]);
    const auto& c = u.cells[j].c;
    total += mesh_.h * (m[0] * c[0] + m[1] * c[1] + m[2] * c[2]);
  }
  return total;
}

double Scheme1D::max_interface_diffusivity(const Bounds& bounds) const {
  if (problem_.diffusivity_bound) return *problem_.diffusivity_bound;
  double m = 0.0;
  if (!problem_.diffusivity_depends_on_u) {
    for (double a : interface_a_) m = std::max(m, a);
    return m;
  }
  constexpr int samples = 1025;
  for (int k = 0; k <= mesh_.cells; ++k) {
    const double x = mesh_.interface(k);
    for (int s = 0; s < samples; ++s) {
      const double u = bounds.lower + (bounds.upper - bounds.lower) * s / (samples - 1);
      m = std::max(m, problem_.diffusivity(x, u));
    }
  }
  return 1.05 * m;
}

}  // namespace mpsddg
