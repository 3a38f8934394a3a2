#include "mpsddg/scheme_2d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "mpsddg/errors.hpp"

namespace mpsddg {

namespace {

const double kP[2][3] = {{1.0, -1.0, 2.0 / 3.0}, {1.0, 1.0, 2.0 / 3.0}};  // P_a(-1), P_a(1)
const double kDP[2][3] = {{0.0, 1.0, -2.0}, {0.0, 1.0, 2.0}};

int wrap(int k, int n) { return ((k % n) + n) % n; }

}  // namespace

std::array<double, 3> lagrange_derivative_weights(double g, double s) {
  return {(2.0 * s - g - 1.0) / (2.0 * (1.0 + g)), 2.0 * s / (g * g - 1.0), (2.0 * s + 1.0 - g) / (2.0 * (1.0 - g))};
}

Scheme2D::Scheme2D(const Mesh2D& mesh, const Problem2D& problem, const FluxParams2D& params, int lobatto_points,
                   SchemeOptions options)
    : mesh_(mesh),
      problem_(problem),
      params_(params),
      options_(options),
      lobatto_(gauss_lobatto_nodes(lobatto_points)),
      edge_(gauss_lobatto_nodes(std::max(lobatto_points, 4))) {
  if (!problem_.constant_tensor && !problem_.tensor) throw ConfigError("2D problem has no diffusion tensor");
  const int L = static_cast<int>(lobatto_.size());
  const int le = static_cast<int>(edge_.size());
  edge_p_.resize(le);
  edge_dp_.resize(le);
  for (int s = 0; s < le; ++s)
    for (int a = 0; a < 3; ++a) {
      edge_p_[s][a] = mode(a, edge_.nodes[s]);
      edge_dp_[s][a] = mode_d1(a, edge_.nodes[s]);
    }
  const QuadratureRule& g = volume_rule();
  vol_p_.resize(g.size());
  vol_dp_.resize(g.size());
  for (std::size_t q = 0; q < g.size(); ++q)
    for (int a = 0; a < 3; ++a) {
      vol_p_[q][a] = mode(a, g.nodes[q]);
      vol_dp_[q][a] = mode_d1(a, g.nodes[q]);
    }

  if (problem_.weight_is_constant) {
    const double w = problem_.weight(mesh_.x.center(0), mesh_.y.center(0));
    directional_.nx = mesh_.nx();
    directional_.ny = mesh_.ny();
    directional_.lobatto_points = L;
    const WeightMoments m = WeightMoments{}.scaled(w);
    directional_.x_moments.assign(static_cast<std::size_t>(mesh_.size()) * L, m);
    directional_.y_moments.assign(static_cast<std::size_t>(mesh_.size()) * L, m);
    mass_inverse_.push_back(weighted_mass_matrix(mesh_, 0, 0, problem_.weight).inverse());
    basis_moments_.push_back(basis_moments_2d(mesh_, 0, 0, problem_.weight));
  } else {
    directional_ = directional_weights(mesh_, problem_.weight, lobatto_);
    mass_inverse_.resize(mesh_.size());
    basis_moments_.resize(mesh_.size());
    for (int j = 0; j < mesh_.ny(); ++j)
      for (int i = 0; i < mesh_.nx(); ++i) {
        mass_inverse_[mesh_.index(i, j)] = weighted_mass_matrix(mesh_, i, j, problem_.weight).inverse();
        basis_moments_[mesh_.index(i, j)] = basis_moments_2d(mesh_, i, j, problem_.weight);
      }
  }
  linear_ = problem_.constant_tensor.has_value() && (!problem_.has_convection() || problem_.velocity.has_value());
  if (linear_) build_linear_blocks();
}

Tensor2D Scheme2D::face_tensor(double x, double y, double um, double up) const {
  if (problem_.constant_tensor) return *problem_.constant_tensor;
  Tensor2D t;
  if (problem_.tensor_depends_on_u) {
    const Tensor2D tm = problem_.tensor(x, y, um), tp = problem_.tensor(x, y, up);
    t = {0.5 * (tm.a + tp.a), 0.5 * (tm.b + tp.b), 0.5 * (tm.c + tp.c)};
  } else {
    t = problem_.tensor(x, y, 0.0);
  }
  if (t.a < 0.0 || t.b < 0.0 || t.a * t.b - t.c * t.c < -1e-14) tensor_warning_ = true;
  return t;
}

void Scheme2D::x_face(const CellPoly2D& L, const CellPoly2D& R, double xf, int j, double* rl, double* rr) const {
  const double dx = mesh_.dx(), dy = mesh_.dy();
  const FluxParams px = params_.along_x();
  const CellPoly1D qL = L.along_eta(1.0), qR = R.along_eta(-1.0);
  for (std::size_t s = 0; s < edge_.size(); ++s) {
    const double eta = edge_.nodes[s];
    const double w = dy * edge_.weights[s];
    const InterfaceTraces tr = interface_traces(L.along_xi(eta), R.along_xi(eta), dx);
    const Tensor2D A = face_tensor(xf, mesh_.y.to_physical(j, eta), tr.value.minus, tr.value.plus);
    const double tangential = (qL.d1(eta) + qR.d1(eta)) / dy;  // {u_y}
    double nflux = A.a * ddg_flux_1d(tr, dx, px) + A.c * tangential;
    if (problem_.flux_x) nflux -= lax_friedrichs(tr.value.minus, tr.value.plus, *problem_.flux_x);
    const double corr = options_.interface_correction ? 0.5 * tr.value.jump() : 0.0;
    const auto& pb = edge_p_[s];
    const auto& dpb = edge_dp_[s];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double gl = A.a * 2.0 / dx * kDP[1][a] * pb[b] + A.c * 2.0 / dy * kP[1][a] * dpb[b];
        const double gr = A.a * 2.0 / dx * kDP[0][a] * pb[b] + A.c * 2.0 / dy * kP[0][a] * dpb[b];
        rl[a * 3 + b] += w * (nflux * kP[1][a] * pb[b] - corr * gl);
        rr[a * 3 + b] += w * (-nflux * kP[0][a] * pb[b] - corr * gr);
      }
    }
  }
}

void Scheme2D::y_face(const CellPoly2D& B, const CellPoly2D& T, double yf, int i, double* rb, double* rt) const {
  const double dx = mesh_.dx(), dy = mesh_.dy();
  const FluxParams py = params_.along_y();
  const CellPoly1D qB = B.along_xi(1.0), qT = T.along_xi(-1.0);
  for (std::size_t s = 0; s < edge_.size(); ++s) {
    const double xi = edge_.nodes[s];
    const double w = dx * edge_.weights[s];
    const InterfaceTraces tr = interface_traces(B.along_eta(xi), T.along_eta(xi), dy);
    const Tensor2D A = face_tensor(mesh_.x.to_physical(i, xi), yf, tr.value.minus, tr.value.plus);
    const double tangential = (qB.d1(xi) + qT.d1(xi)) / dx;  // {u_x}
    double nflux = A.b * ddg_flux_1d(tr, dy, py) + A.c * tangential;
    if (problem_.flux_y) nflux -= lax_friedrichs(tr.value.minus, tr.value.plus, *problem_.flux_y);
    const double corr = options_.interface_correction ? 0.5 * tr.value.jump() : 0.0;
    const auto& pa = edge_p_[s];
    const auto& dpa = edge_dp_[s];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double gb = A.c * 2.0 / dx * dpa[a] * kP[1][b] + A.b * 2.0 / dy * pa[a] * kDP[1][b];
        const double gt = A.c * 2.0 / dx * dpa[a] * kP[0][b] + A.b * 2.0 / dy * pa[a] * kDP[0][b];
        rb[a * 3 + b] += w * (nflux * pa[a] * kP[1][b] - corr * gb);
        rt[a * 3 + b] += w * (-nflux * pa[a] * kP[0][b] - corr * gt);
      }
    }
  }
}

void Scheme2D::volume(const CellPoly2D& p, int i, int j, double* r) const {
  const QuadratureRule& g = volume_rule();
  const std::size_t nq = g.size();
  const double dx = mesh_.dx(), dy = mesh_.dy();
  const double sx = 2.0 / dx, sy = 2.0 / dy;
  const double area = mesh_.area();
  for (std::size_t qx = 0; qx < nq; ++qx) {
    const auto& pa = vol_p_[qx];
    const auto& dpa = vol_dp_[qx];
    // restrict to the line xi = const: polynomials in eta for u and u_xi
    double cu[3], cd[3];
    for (int b = 0; b < 3; ++b) {
      cu[b] = p.c[b] * pa[0] + p.c[3 + b] * pa[1] + p.c[6 + b] * pa[2];
      cd[b] = p.c[3 + b] * dpa[1] + p.c[6 + b] * dpa[2];
    }
    for (std::size_t qy = 0; qy < nq; ++qy) {
      const auto& pb = vol_p_[qy];
      const auto& dpb = vol_dp_[qy];
      const double u = cu[0] * pb[0] + cu[1] * pb[1] + cu[2] * pb[2];
      const double ux = sx * (cd[0] * pb[0] + cd[1] * pb[1] + cd[2] * pb[2]);
      const double uy = sy * (cu[1] * dpb[1] + cu[2] * dpb[2]);
      const Tensor2D A = problem_.constant_tensor
                             ? *problem_.constant_tensor
                             : problem_.tensor(mesh_.x.to_physical(i, g.nodes[qx]), mesh_.y.to_physical(j, g.nodes[qy]),
                                               problem_.tensor_depends_on_u ? u : 0.0);
      double gx = -(A.a * ux + A.c * uy);
      double gy = -(A.c * ux + A.b * uy);
      if (problem_.flux_x) gx += problem_.flux_x->f(u);
      if (problem_.flux_y) gy += problem_.flux_y->f(u);
      const double w = area * g.weights[qx] * g.weights[qy];
      const double wx = w * gx * sx, wy = w * gy * sy;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) r[a * 3 + b] += wx * dpa[a] * pb[b] + wy * pa[a] * dpb[b];
    }
  }
}

void Scheme2D::build_linear_blocks() {
  block_d_.setZero();
  block_e_.setZero();
  block_w_.setZero();
  block_n_.setZero();
  block_s_.setZero();
  const CellPoly2D zero;
  const double xf = mesh_.x.interface(1), yf = mesh_.y.interface(1);
  for (int m = 0; m < 9; ++m) {
    CellPoly2D e;
    e.c[m] = 1.0;
    double d[9] = {}, east[9] = {}, west[9] = {}, north[9] = {}, south[9] = {};
    volume(e, 0, 0, d);
    x_face(e, zero, xf, 0, d, west);  // self on the left of its east face; west gets the neighbor view
    x_face(zero, e, xf, 0, east, d);  // self on the right of its west face
    y_face(e, zero, yf, 0, d, south);
    y_face(zero, e, yf, 0, north, d);
    for (int r = 0; r < 9; ++r) {
      block_d_(r, m) = d[r];
      block_e_(r, m) = east[r];
      block_w_(r, m) = west[r];
      block_n_(r, m) = north[r];
      block_s_(r, m) = south[r];
    }
  }
  fold_mass_ = mass_inverse_.size() == 1;
  if (fold_mass_) {
    const Matrix9& mi = mass_inverse_[0];
    block_d_ = mi * block_d_;
    block_e_ = mi * block_e_;
    block_w_ = mi * block_w_;
    block_n_ = mi * block_n_;
    block_s_ = mi * block_s_;
  }
}

DGField2D Scheme2D::rhs(const DGField2D& u, double) const {
  const int nx = mesh_.nx(), ny = mesh_.ny();
  DGField2D out(mesh_);
  if (linear_) {
    for (int j = 0; j < ny; ++j) {
      const int jn = wrap(j + 1, ny), js = wrap(j - 1, ny);
      for (int i = 0; i < nx; ++i) {
        const int ie = wrap(i + 1, nx), iw = wrap(i - 1, nx);
        using CMap = Eigen::Map<const Vector9>;
        Vector9 r = block_d_ * CMap(u.at(i, j).c.data());
        r.noalias() += block_e_ * CMap(u.at(ie, j).c.data());
        r.noalias() += block_w_ * CMap(u.at(iw, j).c.data());
        r.noalias() += block_n_ * CMap(u.at(i, jn).c.data());
        r.noalias() += block_s_ * CMap(u.at(i, js).c.data());
        Eigen::Map<Vector9> o(out.at(i, j).c.data());
        if (fold_mass_)
          o = r;
        else
          o.noalias() = mass_inverse(mesh_.index(i, j)) * r;
      }
    }
    return out;
  }
  std::vector<double> res(static_cast<std::size_t>(mesh_.size()) * 9, 0.0);
  auto R = [&](int i, int j) { return &res[static_cast<std::size_t>(mesh_.index(i, j)) * 9]; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) volume(u.at(i, j), i, j, R(i, j));
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int ie = wrap(i + 1, nx);
      x_face(u.at(i, j), u.at(ie, j), mesh_.x.interface(i + 1), j, R(i, j), R(ie, j));
    }
  for (int j = 0; j < ny; ++j) {
    const int jn = wrap(j + 1, ny);
    for (int i = 0; i < nx; ++i) y_face(u.at(i, j), u.at(i, jn), mesh_.y.interface(j + 1), i, R(i, j), R(i, jn));
  }
  for (int k = 0; k < mesh_.size(); ++k) {
    Eigen::Map<Vector9>(out.cells[k].c.data()).noalias() =
        mass_inverse(k) * Eigen::Map<const Vector9>(&res[static_cast<std::size_t>(k) * 9]);
  }
  return out;
}

DGField2D Scheme2D::euler_step(const DGField2D& u, double t, double tau) const {
  if (tau == 0.0) return u;
  return combine(1.0, u, tau, rhs(u, t));
}

Vector9 Scheme2D::cell_residual(const DGField2D& u, int i, int j) const {
  const int nx = mesh_.nx(), ny = mesh_.ny();
  double r[9] = {}, scratch[9] = {};
  volume(u.at(i, j), i, j, r);
  x_face(u.at(i, j), u.at(wrap(i + 1, nx), j), mesh_.x.interface(i + 1), j, r, scratch);
  x_face(u.at(wrap(i - 1, nx), j), u.at(i, j), mesh_.x.interface(i), j, scratch, r);
  y_face(u.at(i, j), u.at(i, wrap(j + 1, ny)), mesh_.y.interface(j + 1), i, r, scratch);
  y_face(u.at(i, wrap(j - 1, ny)), u.at(i, j), mesh_.y.interface(j), i, scratch, r);
  Vector9 out;
  for (int m = 0; m < 9; ++m) out(m) = r[m];
  return out;
}

double Scheme2D::weighted_cell_integral_average(const DGField2D& u, int i, int j) const {
  const auto& m = basis_moments_.size() == 1 ? basis_moments_[0] : basis_moments_[mesh_.index(i, j)];
  double s = 0.0;
  for (int r = 0; r < 9; ++r) s += m[r] * u.at(i, j).c[r];
  return s;
}

double Scheme2D::weighted_average(const DGField2D& u, int i, int j) const {
  const auto& m = basis_moments_.size() == 1 ? basis_moments_[0] : basis_moments_[mesh_.index(i, j)];
  return weighted_cell_integral_average(u, i, j) / m[0];
}

double Scheme2D::weighted_mass(const DGField2D& u) const {
  double s = 0.0;
  for (int j = 0; j < mesh_.ny(); ++j)
    for (int i = 0; i < mesh_.nx(); ++i) s += mesh_.area() * weighted_cell_integral_average(u, i, j);
  return s;
}

double Scheme2D::cell_average_update(const DGField2D& u, int i, int j, double tau) const {
  return weighted_cell_integral_average(u, i, j) + tau * cell_residual(u, i, j)(0) / mesh_.area();
}

double Scheme2D::corner_term_B(const DGField2D& u, int i, int j, double tau) const {
  const int nx = mesh_.nx(), ny = mesh_.ny();
  const double area = mesh_.area();
  const CellPoly2D& self = u.at(i, j);
  const CellPoly2D& E = u.at(wrap(i + 1, nx), j);
  const CellPoly2D& W = u.at(wrap(i - 1, nx), j);
  const CellPoly2D& N = u.at(i, wrap(j + 1, ny));
  const CellPoly2D& S = u.at(i, wrap(j - 1, ny));
  if (problem_.constant_tensor) {
    const double c = problem_.constant_tensor->c;
    if (c == 0.0) return 0.0;
    // vertex values: first index xi side, second eta side
    const double own = 2.0 * self.eval(1, 1) - 2.0 * self.eval(1, -1) - 2.0 * self.eval(-1, 1) + 2.0 * self.eval(-1, -1);
    const double east_north = E.eval(-1, 1) + N.eval(1, -1) - S.eval(1, 1) - E.eval(-1, -1);
    const double west_south = S.eval(-1, 1) + W.eval(1, -1) - N.eval(-1, -1) - W.eval(1, 1);
    return c * tau / (2.0 * area) * (own + east_north + west_south);
  }
  // edge integrals of {c}{tangential derivative} with the Lobatto rule
  double total = 0.0;
  const double dx = mesh_.dx(), dy = mesh_.dy();
  for (std::size_t s = 0; s < lobatto_.size(); ++s) {
    const double w = lobatto_.weights[s];
    const double eta = lobatto_.nodes[s], xi = lobatto_.nodes[s];
    const double y = mesh_.y.to_physical(j, eta), x = mesh_.x.to_physical(i, xi);
    {
      const double cr = face_tensor(mesh_.x.interface(i + 1), y, self.eval(1, eta), E.eval(-1, eta)).c;
      const double cl = face_tensor(mesh_.x.interface(i), y, W.eval(1, eta), self.eval(-1, eta)).c;
      const double dr = 0.5 * (self.d_eta(1, eta) + E.d_eta(-1, eta)) * 2.0 / dy;
      const double dl = 0.5 * (W.d_eta(1, eta) + self.d_eta(-1, eta)) * 2.0 / dy;
      total += dy * w * (cr * dr - cl * dl);
    }
    {
      const double ct = face_tensor(x, mesh_.y.interface(j + 1), self.eval(xi, 1), N.eval(xi, -1)).c;
      const double cb = face_tensor(x, mesh_.y.interface(j), S.eval(xi, 1), self.eval(xi, -1)).c;
      const double dt = 0.5 * (self.d_xi(xi, 1) + N.d_xi(xi, -1)) * 2.0 / dx;
      const double db = 0.5 * (S.d_xi(xi, 1) + self.d_xi(xi, -1)) * 2.0 / dx;
      total += dx * w * (ct * dt - cb * db);
    }
  }
  return tau / area * total;
}

UpdateDecomposition Scheme2D::decompose_update(const DGField2D& u, int i, int j, double tau) const {
  if (problem_.has_convection()) throw ConfigError("decompose_update covers the diffusion operator only");
  const int nx = mesh_.nx(), ny = mesh_.ny();
  const int L = static_cast<int>(lobatto_.size());
  const double dx = mesh_.dx(), dy = mesh_.dy();
  const double mux = tau / (dx * dx), muy = tau / (dy * dy);
  const double wx = (1.0 / (dx * dx)) / (1.0 / (dx * dx) + 1.0 / (dy * dy));
  const double wy = 1.0 - wx;
  const double gx = params_.gamma_x, gy = params_.gamma_y;
  const FluxParams px = params_.along_x(), py = params_.along_y();
  const AlphaCoefficients axm = alpha_coeffs(-gx, px), axp = alpha_coeffs(gx, px);
  const AlphaCoefficients aym = alpha_coeffs(-gy, py), ayp = alpha_coeffs(gy, py);
  const int cell = mesh_.index(i, j);
  const CellPoly2D& self = u.at(i, j);
  const CellPoly2D& E = u.at(wrap(i + 1, nx), j);
  const CellPoly2D& W = u.at(wrap(i - 1, nx), j);
  const CellPoly2D& N = u.at(i, wrap(j + 1, ny));
  const CellPoly2D& S = u.at(i, wrap(j - 1, ny));
  const double corner_scale = tau / mesh_.area();

  UpdateDecomposition out;
  auto add = [&](Axis axis, int node, int di, int dj, double xi, double eta, double coef) {
    out.terms.push_back({axis, node, di, dj, xi, eta, coef});
  };
  auto node_of = [&](double s) {
    for (int k = 0; k < L; ++k)
      if (std::abs(lobatto_.nodes[k] - s) < 1e-14) return k;
    return -1;
  };
  // tangential-derivative terms of the corner part, attached to the group of their point
  auto add_corner = [&](Axis axis, int di, int dj, double xi, double eta, double coef) {
    const int node = node_of(axis == Axis::x ? eta : xi);
    if (node < 0) {
      if (std::abs(coef) > 1e-13 * (1.0 + std::abs(corner_scale)))
        throw ConfigError("test offset gamma must be a Lobatto node when the off-diagonal tensor entry varies");
      return;
    }
    add(axis, node, di, dj, xi, eta, coef);
    out.corner_term += coef * u.at(wrap(i + di, nx), wrap(j + dj, ny)).eval(xi, eta);
  };
  const double nodes_x[3] = {-1.0, gx, 1.0};
  const double nodes_y[3] = {-1.0, gy, 1.0};
  // constant c: each edge integral of a tangential derivative is a difference of vertex values
  const bool constant_c = problem_.constant_tensor.has_value();
  if (constant_c && problem_.constant_tensor->c != 0.0) {
    const double k = 0.5 * corner_scale * problem_.constant_tensor->c;
    for (double s : {1.0, -1.0}) {
      add_corner(Axis::x, 0, 0, 1.0, s, s * k);
      add_corner(Axis::x, 1, 0, -1.0, s, s * k);
      add_corner(Axis::x, 0, 0, -1.0, s, -s * k);
      add_corner(Axis::x, -1, 0, 1.0, s, -s * k);
      add_corner(Axis::y, 0, 0, s, 1.0, s * k);
      add_corner(Axis::y, 0, 1, s, -1.0, s * k);
      add_corner(Axis::y, 0, 0, s, -1.0, -s * k);
      add_corner(Axis::y, 0, -1, s, 1.0, -s * k);
    }
  }

  for (int s = 0; s < L; ++s) {
    const double ws = lobatto_.weights[s];
    // rows along x at eta_s
    {
      const double eta = lobatto_.nodes[s];
      const double y = mesh_.y.to_physical(j, eta);
      const OmegaTilde om = compute_omega_tilde(directional_.x_at(cell, s), gx);
      add(Axis::x, s, 0, 0, -1.0, eta, wx * ws * om.w1);
      add(Axis::x, s, 0, 0, gx, eta, wx * ws * om.w2);
      add(Axis::x, s, 0, 0, 1.0, eta, wx * ws * om.w3);
      const Tensor2D tr = face_tensor(mesh_.x.interface(i + 1), y, self.eval(1, eta), E.eval(-1, eta));
      const Tensor2D tl = face_tensor(mesh_.x.interface(i), y, W.eval(1, eta), self.eval(-1, eta));
      double k = ws * mux * tr.a;
      add(Axis::x, s, 1, 0, -1.0, eta, k * axm.a3);
      add(Axis::x, s, 1, 0, gx, eta, k * axm.a2);
      add(Axis::x, s, 1, 0, 1.0, eta, k * axm.a1);
      add(Axis::x, s, 0, 0, -1.0, eta, -k * axp.a1);
      add(Axis::x, s, 0, 0, gx, eta, -k * axp.a2);
      add(Axis::x, s, 0, 0, 1.0, eta, -k * axp.a3);
      k = ws * mux * tl.a;
      add(Axis::x, s, 0, 0, -1.0, eta, -k * axm.a3);
      add(Axis::x, s, 0, 0, gx, eta, -k * axm.a2);
      add(Axis::x, s, 0, 0, 1.0, eta, -k * axm.a1);
      add(Axis::x, s, -1, 0, -1.0, eta, k * axp.a1);
      add(Axis::x, s, -1, 0, gx, eta, k * axp.a2);
      add(Axis::x, s, -1, 0, 1.0, eta, k * axp.a3);
      const std::array<double, 3> d = lagrange_derivative_weights(gy, eta);
      for (int m = 0; m < 3 && !constant_c; ++m) {
        const double cr = corner_scale * ws * tr.c * d[m];
        const double cl = corner_scale * ws * tl.c * d[m];
        add_corner(Axis::x, 0, 0, 1.0, nodes_y[m], cr);
        add_corner(Axis::x, 1, 0, -1.0, nodes_y[m], cr);
        add_corner(Axis::x, 0, 0, -1.0, nodes_y[m], -cl);
        add_corner(Axis::x, -1, 0, 1.0, nodes_y[m], -cl);
      }
    }
    // columns along y at xi_s
    {
      const double xi = lobatto_.nodes[s];
      const double x = mesh_.x.to_physical(i, xi);
      const OmegaTilde om = compute_omega_tilde(directional_.y_at(cell, s), gy);
      add(Axis::y, s, 0, 0, xi, -1.0, wy * ws * om.w1);
      add(Axis::y, s, 0, 0, xi, gy, wy * ws * om.w2);
      add(Axis::y, s, 0, 0, xi, 1.0, wy * ws * om.w3);
      const Tensor2D tt = face_tensor(x, mesh_.y.interface(j + 1), self.eval(xi, 1), N.eval(xi, -1));
      const Tensor2D tb = face_tensor(x, mesh_.y.interface(j), S.eval(xi, 1), self.eval(xi, -1));
      double k = ws * muy * tt.b;
      add(Axis::y, s, 0, 1, xi, -1.0, k * aym.a3);
      add(Axis::y, s, 0, 1, xi, gy, k * aym.a2);
      add(Axis::y, s, 0, 1, xi, 1.0, k * aym.a1);
      add(Axis::y, s, 0, 0, xi, -1.0, -k * ayp.a1);
      add(Axis::y, s, 0, 0, xi, gy, -k * ayp.a2);
      add(Axis::y, s, 0, 0, xi, 1.0, -k * ayp.a3);
      k = ws * muy * tb.b;
      add(Axis::y, s, 0, 0, xi, -1.0, -k * aym.a3);
      add(Axis::y, s, 0, 0, xi, gy, -k * aym.a2);
      add(Axis::y, s, 0, 0, xi, 1.0, -k * aym.a1);
      add(Axis::y, s, 0, -1, xi, -1.0, k * ayp.a1);
      add(Axis::y, s, 0, -1, xi, gy, k * ayp.a2);
      add(Axis::y, s, 0, -1, xi, 1.0, k * ayp.a3);
      const std::array<double, 3> d = lagrange_derivative_weights(gx, xi);
      for (int m = 0; m < 3 && !constant_c; ++m) {
        const double ct = corner_scale * ws * tt.c * d[m];
        const double cb = corner_scale * ws * tb.c * d[m];
        add_corner(Axis::y, 0, 0, nodes_x[m], 1.0, ct);
        add_corner(Axis::y, 0, 1, nodes_x[m], -1.0, ct);
        add_corner(Axis::y, 0, 0, nodes_x[m], -1.0, -cb);
        add_corner(Axis::y, 0, -1, nodes_x[m], 1.0, -cb);
      }
    }
  }

  // merge equal points inside each group
  auto key = [](const StencilTerm& t) {
    return std::make_tuple(static_cast<int>(t.group_axis), t.group_node, t.di, t.dj, std::llround(t.xi * 1e12),
                           std::llround(t.eta * 1e12));
  };
  std::map<decltype(key(out.terms[0])), std::size_t> index;
  for (const StencilTerm& t : out.terms) {
    const auto k = key(t);
    auto it = index.find(k);
    if (it == index.end()) {
      index.emplace(k, out.merged.size());
      out.merged.push_back(t);
    } else {
      out.merged[it->second].coefficient += t.coefficient;
    }
  }
  for (const StencilTerm& t : out.merged)
    out.reassembled += t.coefficient * u.at(wrap(i + t.di, nx), wrap(j + t.dj, ny)).eval(t.xi, t.eta);
  return out;
}

}  // namespace mpsddg
