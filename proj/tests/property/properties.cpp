#include "property/properties.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "mpsddg/errors.hpp"
#include "mpsddg/limiter.hpp"
#include "mpsddg/problems.hpp"
#include "mpsddg/runner.hpp"
#include "mpsddg/scheme_1d.hpp"
#include "mpsddg/scheme_2d.hpp"
#include "mpsddg/time_integration.hpp"
#include "oracles.hpp"

using namespace mpsddg;

namespace props {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

PropertyResult result(std::string name, bool ok, std::string detail) { return {std::move(name), ok, std::move(detail)}; }

// ---------------------------------------------------------------- 1D configurations

enum class Diff { none, constant, in_x, in_u };
enum class Conv { none, linear, burgers };

struct Setup1D {
  Mesh1D mesh;
  Problem1D problem;
  FluxParams params;
  double speed = 0.0;  // |c| for linear convection
  double diffusion = 0.0;  // constant A
};

/// Periodic problem on [0, 1] with periodic A; nullopt when the random weight leaves no admissible gamma.
std::optional<Setup1D> random_setup_1d(Rng& rng, bool variable_weight, Diff diff, Conv conv) {
  Setup1D s;
  s.mesh = build_mesh_1d(0.0, 1.0, uniform_int(rng, 8, 20));
  Problem1D& p = s.problem;
  p.name = "property";
  p.initial = [](double) { return 0.0; };
  p.bounds = Bounds{0.0, 1.0};
  if (variable_weight) {
    p.weight = oracle::random_weight(rng);
    p.weight_is_constant = false;
  } else {
    const double w = uniform(rng, 0.5, 2.0);
    p.weight = [w](double) { return w; };
  }
  const double a0 = uniform(rng, 0.2, 3.0);
  s.diffusion = a0;
  switch (diff) {
    case Diff::none:
      p.diffusivity = [](double, double) { return 0.0; };
      break;
    case Diff::constant:
      p.diffusivity = [a0](double, double) { return a0; };
      break;
    case Diff::in_x: {
      const double k = 2.0 * std::numbers::pi * uniform_int(rng, 1, 3), ph = uniform(rng, 0.0, 6.0);
      p.diffusivity = [=](double x, double) { return a0 * (1.0 + 0.5 * std::sin(k * x + ph)); };
      break;
    }
    case Diff::in_u:
      p.diffusivity = [a0](double x, double u) {
        const double s = std::sin(std::numbers::pi * x);
        return a0 * (1.0 + 0.5 * s * s) * (0.5 + u * u);
      };
      p.diffusivity_depends_on_u = true;
      p.diffusivity_bound = a0 * 1.5 * 1.5;
      break;
  }
  if (conv == Conv::linear) {
    const double c = uniform(rng, 0.2, 3.0) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    s.speed = std::abs(c);
    p.convection = make_monotone_flux([c](double u) { return c * u; }, [c](double) { return c; }, {0.0, 1.0},
                                      std::abs(c));
  } else if (conv == Conv::burgers) {
    const double k = uniform(rng, 0.5, 2.0);
    p.convection = make_monotone_flux([k](double u) { return 0.5 * k * u * u; }, [k](double u) { return k * u; },
                                      {0.0, 1.0}, k);
  }

  const double beta1 = uniform(rng, 0.13, 0.24);
  double lo = -(8.0 * beta1 - 1.0), hi = 8.0 * beta1 - 1.0;
  for (const WeightMoments& m : weight_moments_1d(s.mesh, p.weight)) {
    const AdmissibleInterval ab = compute_ab(m);
    lo = std::max(lo, ab.a);
    hi = std::min(hi, ab.b);
  }
  if (hi - lo < 1e-3) return std::nullopt;
  s.params = {uniform(rng, 1.0, 6.0), beta1, lo + (hi - lo) * uniform(rng, 0.05, 0.95)};
  return s;
}

Setup1D draw_1d(Rng& rng, bool variable_weight, Diff diff, Conv conv) {
  for (;;)
    if (auto s = random_setup_1d(rng, variable_weight, diff, conv)) return *s;
}

/// Point value in [0, 1], pushed to an end of the range a quarter of the time.
double bounded_value(Rng& rng) {
  const double r = uniform(rng, 0.0, 1.0);
  if (r < 0.125) return 0.0;
  if (r < 0.25) return 1.0;
  return uniform(rng, 0.0, 1.0);
}

/// Quadratics whose values at -1, gamma and 1 lie in [0, 1].
DGField1D bounded_field_1d(const Mesh1D& mesh, double gamma, Rng& rng) {
  DGField1D u(mesh);
  for (auto& c : u.cells) c = oracle::through(gamma, bounded_value(rng), bounded_value(rng), bounded_value(rng));
  return u;
}

/// Worst excursion of the weighted cell averages outside [0, 1].
double average_excess(const Scheme1D& s, const DGField1D& u) {
  double e = 0.0;
  for (int j = 0; j < s.mesh().cells; ++j) {
    const double a = s.weighted_average(u, j);
    e = std::max({e, -a, a - 1.0});
  }
  return e;
}

PropertyResult monotone_1d(const std::string& name, Diff diff, Conv conv) {
  Rng rng(diff == Diff::in_x ? 202 : 204);
  double worst = -1.0;
  for (int cfg = 0; cfg < 50; ++cfg) {
    const Setup1D st = draw_1d(rng, true, diff, conv);
    const Scheme1D s(st.mesh, st.problem, st.params);
    const double tau = cfl_report(s, {0.0, 1.0}, 1.0).tau;
    for (int f = 0; f < 20; ++f) {
      const DGField1D u = bounded_field_1d(st.mesh, st.params.gamma, rng);
      worst = std::max(worst, average_excess(s, s.euler_step(u, 0.0, tau)));
    }
  }
  return result(name, worst <= 1e-10, "1000 fields, worst excursion " + fmt(worst));
}

// ---------------------------------------------------------------- 2D configurations

struct Setup2D {
  Mesh2D mesh;
  Problem2D problem;
  FluxParams2D params;
  int lobatto = 3;
};

Function2D random_weight_2d(Rng& rng) {
  const double k1 = uniform(rng, 0.5, 3.0), k2 = uniform(rng, 0.5, 3.0);
  const double p1 = uniform(rng, 0.0, 6.0), p2 = uniform(rng, 0.0, 6.0), amp = uniform(rng, 0.1, 0.6);
  return [=](double x, double y) { return 1.5 + amp * std::sin(k1 * x + p1) * std::cos(k2 * y + p2); };
}

Mesh2D random_mesh_2d(Rng& rng) {
  return build_mesh_2d(-1.0, 1.0, uniform_int(rng, 4, 7), -1.0, -1.0 + uniform(rng, 1.0, 3.0), uniform_int(rng, 4, 7));
}

std::optional<std::pair<double, double>> pick_gammas(const DirectionalWeights2D& w, double beta1, Rng& rng) {
  const double cap = 8.0 * beta1 - 1.0;
  auto pick = [&](const std::vector<AdmissibleInterval>& iv) -> std::optional<double> {
    double lo = -cap, hi = cap;
    for (const auto& ab : iv) {
      lo = std::max(lo, ab.a);
      hi = std::min(hi, ab.b);
    }
    if (hi - lo < 1e-3) return std::nullopt;
    return lo + (hi - lo) * uniform(rng, 0.05, 0.95);
  };
  const auto gx = pick(x_intervals(w)), gy = pick(y_intervals(w));
  if (!gx || !gy) return std::nullopt;
  return std::pair{*gx, *gy};
}

/// Constant tensor with c != 0 and beta0 at or above its threshold.
Setup2D draw_constant_2d(Rng& rng, bool variable_weight, double beta0_factor = -1.0) {
  for (;;) {
    Setup2D s;
    s.mesh = random_mesh_2d(rng);
    Problem2D& p = s.problem;
    p.name = "property";
    p.initial = [](double, double) { return 0.0; };
    p.x_left = s.mesh.x.left;
    p.x_right = s.mesh.x.right;
    p.y_left = s.mesh.y.left;
    p.y_right = s.mesh.y.right;
    p.bounds = Bounds{0.0, 1.0};
    if (variable_weight) {
      p.weight = random_weight_2d(rng);
      p.weight_is_constant = false;
    }
    const double a = uniform(rng, 0.5, 2.0), b = uniform(rng, 0.5, 2.0);
    double rho = uniform(rng, 0.1, 0.9);
    if (uniform(rng, 0.0, 1.0) < 0.5) rho = -rho;
    p.constant_tensor = Tensor2D{a, b, rho * std::sqrt(a * b)};
    const double beta1 = uniform(rng, 0.13, 0.24);
    const auto dw = directional_weights(s.mesh, p.weight, gauss_lobatto_nodes(3));
    const auto g = pick_gammas(dw, beta1, rng);
    if (!g) continue;
    const double threshold = beta0_threshold_constant(*p.constant_tensor, s.mesh.aspect(), 3);
    const double factor = beta0_factor > 0.0 ? beta0_factor : 1.0 + uniform(rng, 0.0, 0.5);
    s.params = {threshold * factor, beta1, g->first, g->second};
    return s;
  }
}

/// Smooth tensor in (x, y) with closed-form bounds, M = 1, gamma = 0.
Setup2D draw_variable_2d(Rng& rng, int lobatto) {
  Setup2D s;
  s.mesh = random_mesh_2d(rng);
  s.lobatto = lobatto;
  Problem2D& p = s.problem;
  p.name = "property";
  p.initial = [](double, double) { return 0.0; };
  p.bounds = Bounds{0.0, 1.0};
  const double a0 = uniform(rng, 0.5, 2.0), b0 = uniform(rng, 0.5, 2.0);
  const double c0 = uniform(rng, -0.6, 0.6) * 0.7 * std::sqrt(a0 * b0);
  const double k = uniform(rng, 0.5, 3.0), ph = uniform(rng, 0.0, 6.0);
  p.constant_tensor.reset();
  p.tensor = [=](double x, double y, double) {
    return Tensor2D{a0 * (1.0 + 0.3 * std::sin(k * x + ph)), b0 * (1.0 + 0.3 * std::cos(k * y - ph)),
                    c0 * std::cos(x + y)};
  };
  p.tensor_bounds = TensorBounds{1.3 * std::max(a0, b0), 0.7 * std::min(a0, b0), std::abs(c0)};
  const double beta1 = uniform(rng, 0.13, 0.24);
  const double threshold = beta0_threshold_variable(*p.tensor_bounds, 0.0, s.mesh.aspect(), lobatto);
  s.params = {threshold * (1.0 + uniform(rng, 0.0, 0.3)), beta1, 0.0, 0.0};
  return s;
}

/// Random Q2 data with cell averages in [0, 1], limited into [0, 1] on the test set.
DGField2D bounded_field_2d(const Scheme2D& s, Rng& rng) {
  const Mesh2D& m = s.mesh();
  const auto& mom = s.basis_moments();
  DGField2D u(m);
  for (int cell = 0; cell < m.size(); ++cell) {
    const auto& bm = mom.size() == 1 ? mom[0] : mom[cell];
    auto& c = u.cells[cell].c;
    const double amp = uniform(rng, 0.0, 1.0);
    for (int r = 1; r < 9; ++r) c[r] = amp * uniform(rng, -0.5, 0.5);
    double rest = 0.0;
    for (int r = 1; r < 9; ++r) rest += bm[r] * c[r];
    c[0] = bounded_value(rng) - rest / bm[0];
  }
  const TestSet ts = test_set_2d(s.params().gamma_x, s.params().gamma_y, s.lobatto());
  return apply_limiter_2d(u, {0.0, 1.0}, mom, ts);
}

double average_excess(const Scheme2D& s, const DGField2D& u) {
  double e = 0.0;
  for (int j = 0; j < s.mesh().ny(); ++j)
    for (int i = 0; i < s.mesh().nx(); ++i) {
      const double a = s.weighted_average(u, i, j);
      e = std::max({e, -a, a - 1.0});
    }
  return e;
}

// ---------------------------------------------------------------- properties

PropertyResult flux_representation() {
  Rng rng(101);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    CellPoly1D l, r;
    for (int a = 0; a < 3; ++a) {
      l.c[a] = uniform(rng, -1.0, 1.0);
      r.c[a] = uniform(rng, -1.0, 1.0);
    }
    const double h = uniform(rng, 0.01, 1.0);
    const FluxParams prm{uniform(rng, 1.0, 8.0), uniform(rng, 0.13, 0.24), uniform(rng, -0.9, 0.9)};
    const double ref = oracle::ddg_flux(l, r, h, prm.beta0, prm.beta1);
    const double scale = 1.0 + std::abs(prm.beta0 / h * (r.eval(-1.0) - l.eval(1.0))) +
                         std::abs((r.d1(-1.0) + l.d1(1.0)) / h) + std::abs(prm.beta1 * 4.0 / h * (r.d2() - l.d2()));
    worst = std::max(worst, std::abs(flux_via_alpha(l, r, prm.gamma, prm, h) - ref) / scale);
  }
  return result("flux written through alpha coefficients", worst <= 1e-12, "1000 pairs, worst " + fmt(worst));
}

PropertyResult weighted_decomposition() {
  Rng rng(102);
  double worst = 0.0;
  int draws = 0;
  while (draws < 1000) {
    const auto weight = oracle::random_weight(rng);
    const WeightMoments w = weight_moments(weight);
    const AdmissibleInterval ab = compute_ab(w);
    const double g = ab.a + (ab.b - ab.a) * uniform(rng, 0.0, 1.0);
    if (!ab.contains(g)) continue;
    const OmegaTilde om = compute_omega_tilde(w, g);
    const double q0 = uniform(rng, -2.0, 2.0), q1 = uniform(rng, -2.0, 2.0), q2 = uniform(rng, -2.0, 2.0);
    auto p = [&](double x) { return q0 + q1 * x + q2 * x * x; };
    const double err = std::abs(w.of(q0, q1, q2) - (om.w1 * p(-1.0) + om.w2 * p(g) + om.w3 * p(1.0)));
    worst = std::max(worst, err / w.m0);
    ++draws;
  }
  return result("three-point weighted decomposition of quadratics", worst <= 1e-12,
                "1000 draws, worst relative " + fmt(worst));
}

PropertyResult admissible_interval() {
  Rng rng(103);
  int failures = 0;
  double worst_edge = 0.0;
  for (int k = 0; k < 200; ++k) {
    const auto weight = oracle::random_weight(rng);
    const WeightMoments w = weight_moments(weight);
    const AdmissibleInterval ab = compute_ab(w);
    if (!(ab.a < ab.b)) ++failures;
    const auto [lo, hi] = oracle::positivity_interval(weight);
    worst_edge = std::max({worst_edge, std::abs(ab.a - lo), std::abs(ab.b - hi)});
    auto positive = [&](double g) {
      const OmegaTilde o = compute_omega_tilde(w, g);
      return o.w1 > 0.0 && o.w2 > 0.0 && o.w3 > 0.0;
    };
    for (int t = 0; t < 10; ++t)
      if (!positive(ab.a + (ab.b - ab.a) * uniform(rng, 0.001, 0.999))) ++failures;
    for (int t = 0; t < 5; ++t) {
      if (ab.a > -0.999 && positive(uniform(rng, -0.999, ab.a))) ++failures;
      if (ab.b < 0.999 && positive(uniform(rng, ab.b, 0.999))) ++failures;
    }
  }
  return result("admissible test-point interval", failures == 0 && worst_edge <= 1e-6,
                "200 weights, " + std::to_string(failures) + " misclassified, edge gap " + fmt(worst_edge));
}

PropertyResult limiter_1d() {
  Rng rng(104);
  const Mesh1D m = build_mesh_1d(1.0, 3.0, 1000);
  const auto weight = oracle::random_weight(rng);
  const auto mom = weight_moments_1d(m, weight);
  double lo = -1.0, hi = 1.0;
  for (const auto& w : mom) {
    lo = std::max(lo, compute_ab(w).a);
    hi = std::min(hi, compute_ab(w).b);
  }
  const double g = 0.5 * (lo + hi);
  DGField1D u(m);
  for (int j = 0; j < m.cells; ++j) {
    const auto bm = basis_moments(mom[j]);
    const double c1 = uniform(rng, -1.0, 1.0), c2 = uniform(rng, -1.0, 1.0);
    u.cells[j].c = {(bounded_value(rng) * bm[0] - c1 * bm[1] - c2 * bm[2]) / bm[0], c1, c2};
  }
  const DGField1D v = apply_limiter_1d(u, {0, 1}, mom, g);
  const DGField1D again = apply_limiter_1d(v, {0, 1}, mom, g);
  double drift = 0.0, moved = 0.0;
  for (int j = 0; j < m.cells; ++j) {
    const auto bm = basis_moments(mom[j]);
    auto avg = [&](const CellPoly1D& p) { return (p.c[0] * bm[0] + p.c[1] * bm[1] + p.c[2] * bm[2]) / bm[0]; };
    drift = std::max(drift, std::abs(avg(v.cells[j]) - avg(u.cells[j])));
    for (int a = 0; a < 3; ++a) moved = std::max(moved, std::abs(again.cells[j].c[a] - v.cells[j].c[a]));
  }
  const double viol = mps_violation(v, {0, 1}, g);
  return result("1D scaling limiter", drift <= 1e-13 && viol <= 1e-12 && moved <= 1e-14,
                "1000 cells, average drift " + fmt(drift) + ", violation " + fmt(viol) + ", re-limit change " +
                    fmt(moved));
}

PropertyResult limiter_2d() {
  Rng rng(105);
  const Mesh2D m = build_mesh_2d(-1.0, 1.0, 40, -1.0, 1.0, 25);
  const Function2D weight = random_weight_2d(rng);
  std::vector<std::array<double, 9>> mom;
  for (int j = 0; j < m.ny(); ++j)
    for (int i = 0; i < m.nx(); ++i) mom.push_back(basis_moments_2d(m, i, j, weight));
  const TestSet ts = test_set_2d(0.1, -0.05, gauss_lobatto_nodes(3));
  DGField2D u(m);
  for (int k = 0; k < m.size(); ++k) {
    auto& c = u.cells[k].c;
    double rest = 0.0;
    for (int r = 1; r < 9; ++r) {
      c[r] = uniform(rng, -0.5, 0.5);
      rest += mom[k][r] * c[r];
    }
    c[0] = bounded_value(rng) - rest / mom[k][0];
  }
  const DGField2D v = apply_limiter_2d(u, {0, 1}, mom, ts);
  const DGField2D again = apply_limiter_2d(v, {0, 1}, mom, ts);
  double drift = 0.0, moved = 0.0;
  for (int k = 0; k < m.size(); ++k) {
    auto avg = [&](const CellPoly2D& p) {
      double s = 0.0;
      for (int r = 0; r < 9; ++r) s += mom[k][r] * p.c[r];
      return s / mom[k][0];
    };
    drift = std::max(drift, std::abs(avg(v.cells[k]) - avg(u.cells[k])));
    for (int r = 0; r < 9; ++r) moved = std::max(moved, std::abs(again.cells[k].c[r] - v.cells[k].c[r]));
  }
  const double viol = mps_violation(v, {0, 1}, ts);
  return result("2D scaling limiter", drift <= 1e-13 && viol <= 1e-12 && moved <= 1e-14,
                "1000 cells, average drift " + fmt(drift) + ", violation " + fmt(viol) + ", re-limit change " +
                    fmt(moved));
}

PropertyResult monotone_constant_2d() {
  Rng rng(301);
  double worst = -1.0;
  for (int cfg = 0; cfg < 50; ++cfg) {
    const Setup2D st = draw_constant_2d(rng, cfg % 2 == 1);
    const Scheme2D s(st.mesh, st.problem, st.params, 3);
    const double tau = cfl_report(s, {0.0, 1.0}, 1.0).tau;
    for (int f = 0; f < 10; ++f)
      worst = std::max(worst, average_excess(s, s.euler_step(bounded_field_2d(s, rng), 0.0, tau)));
  }
  return result("one-step monotonicity, constant tensor", worst <= 1e-10,
                "500 fields, worst excursion " + fmt(worst));
}

PropertyResult monotone_variable_2d() {
  Rng rng(302);
  double worst = -1.0;
  for (int cfg = 0; cfg < 50; ++cfg) {
    const Setup2D st = draw_variable_2d(rng, 5);
    const Scheme2D s(st.mesh, st.problem, st.params, 5);
    const double tau = cfl_report(s, {0.0, 1.0}, 1.0).tau;
    for (int f = 0; f < 10; ++f)
      worst = std::max(worst, average_excess(s, s.euler_step(bounded_field_2d(s, rng), 0.0, tau)));
  }
  return result("one-step monotonicity, variable tensor", worst <= 1e-10,
                "500 fields, worst excursion " + fmt(worst));
}

PropertyResult negative_control() {
  // Strong cross diffusion on a unit-aspect mesh with beta0 at half its threshold.
  Rng rng(303);
  int negative = 0;
  double most = 0.0;
  const int trials = 20;
  for (int k = 0; k < trials; ++k) {
    Setup2D st = draw_constant_2d(rng, false, 0.5);
    Tensor2D& t = *st.problem.constant_tensor;
    t.c = (t.c < 0 ? -0.95 : 0.95) * std::sqrt(t.a * t.b);
    st.params.beta0 = 0.5 * beta0_threshold_constant(t, st.mesh.aspect(), 3);
    const Scheme2D s(st.mesh, st.problem, st.params, 3);
    const DirectionalWeights2D& dw = s.directional();
    double mu0 = cfl_2d_constant(dw, t, st.params, st.mesh, 3, false);
    if (!(mu0 > 0.0) || !std::isfinite(mu0)) mu0 = cfl_2d_constant(dw, t, {beta0_threshold_constant(t, st.mesh.aspect(), 3), st.params.beta1, st.params.gamma_x, st.params.gamma_y}, st.mesh, 3);
    const double tau = mu0 / (1.0 / (st.mesh.dx() * st.mesh.dx()) + 1.0 / (st.mesh.dy() * st.mesh.dy()));
    const DGField2D u(st.mesh);
    double low = 0.0;
    for (const auto& term : s.decompose_update(u, 1, 1, tau).merged) low = std::min(low, term.coefficient);
    if (low < 0.0) ++negative;
    most = std::min(most, low);
  }
  return result("negative control below the beta0 threshold", negative == trials,
                std::to_string(negative) + "/" + std::to_string(trials) + " configurations with a negative coefficient, most negative " +
                    fmt(most));
}

PropertyResult conservation() {
  Rng rng(401);
  double worst = 0.0, worst_1d = 0.0;
  {
    const Setup1D st = draw_1d(rng, true, Diff::in_u, Conv::burgers);
    const Scheme1D s(st.mesh, st.problem, st.params);
    const double tau = cfl_report(s, {0.0, 1.0}, 0.9).tau;
    const ScalingLimiter1D lim(s.moments(), st.params.gamma, {0.0, 1.0});
    DGField1D u = bounded_field_1d(st.mesh, st.params.gamma, rng);
    const double m0 = s.weighted_mass(u);
    for (int k = 0; k < 100; ++k)
      u = ssp33_step(u, k * tau, tau, [&](const DGField1D& v, double t, double dt) { return s.euler_step(v, t, dt); },
                     [&](DGField1D& v) { lim.apply(v); }, k);
    worst_1d = std::abs(s.weighted_mass(u) - m0) / std::max(1.0, std::abs(m0));
  }
  {
    Setup2D st = draw_constant_2d(rng, true);
    st.problem.flux_x = make_monotone_flux([](double u) { return 0.5 * u * u; }, [](double u) { return u; }, {0, 1}, 1.0);
    st.problem.flux_y = make_monotone_flux([](double u) { return -0.3 * u; }, [](double) { return -0.3; }, {0, 1}, 0.3);
    const Scheme2D s(st.mesh, st.problem, st.params, 3);
    const double tau = cfl_report(s, {0.0, 1.0}, 0.9).tau;
    const TestSet ts = test_set_2d(st.params.gamma_x, st.params.gamma_y, s.lobatto());
    const ScalingLimiter2D lim(s.basis_moments(), ts, {0.0, 1.0});
    DGField2D u = bounded_field_2d(s, rng);
    const double m0 = s.weighted_mass(u);
    for (int k = 0; k < 100; ++k)
      u = ssp33_step(u, k * tau, tau, [&](const DGField2D& v, double t, double dt) { return s.euler_step(v, t, dt); },
                     [&](DGField2D& v) { lim.apply(v); }, k);
    worst = std::max(worst, std::abs(s.weighted_mass(u) - m0) / std::max(1.0, std::abs(m0)));
  }
  return result("weighted mass over 100 periodic steps", std::max(worst, worst_1d) <= 1e-11,
                "drift 1D " + fmt(worst_1d) + ", 2D " + fmt(worst));
}

/// Stencil oracle for a linear periodic 1D scheme: the largest tau keeping every coefficient >= 0.
double stencil_tau(const Scheme1D& s) {
  double t = oracle::kInf;
  for (int j = 0; j < s.mesh().cells; ++j) t = std::min(t, oracle::stencil_1d(s, j, s.params().gamma).max_tau());
  return t;
}

/// Runs 50 configurations; `formula` returns the bound's step for a scheme.
template <class Draw, class Formula>
PropertyResult cfl_check_1d(const std::string& name, std::uint64_t seed, Draw&& draw, Formula&& formula) {
  Rng rng(seed);
  double worst = 0.0;  // largest formula / oracle ratio
  for (int k = 0; k < 50; ++k) {
    const Setup1D st = draw(rng);
    const Scheme1D s(st.mesh, st.problem, st.params);
    worst = std::max(worst, formula(st, s) / stencil_tau(s));
  }
  return result(name, worst <= 1.0 + 1e-10, "50 configurations, worst formula/oracle " + fmt(worst));
}

template <class Draw, class Formula>
PropertyResult cfl_check_2d(const std::string& name, std::uint64_t seed, Draw&& draw, Formula&& formula) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Setup2D st = draw(rng);
    const Scheme2D s(st.mesh, st.problem, st.params, st.lobatto);
    const DGField2D u(st.mesh);
    double oracle_tau = oracle::kInf;
    for (int j = 0; j < st.mesh.ny(); ++j)
      for (int i = 0; i < st.mesh.nx(); ++i) oracle_tau = std::min(oracle_tau, oracle::max_tau_2d(s, u, i, j));
    const double inv = 1.0 / (st.mesh.dx() * st.mesh.dx()) + 1.0 / (st.mesh.dy() * st.mesh.dy());
    worst = std::max(worst, formula(st, s) / inv / oracle_tau);
  }
  return result(name, worst <= 1.0 + 1e-10, "50 configurations, worst formula/oracle " + fmt(worst));
}

double h2(const Setup1D& st) { return st.mesh.h * st.mesh.h; }

}  // namespace

const std::vector<Property>& all_properties() {
  static const std::vector<Property> list = {
      {"flux_representation", flux_representation},
      {"weighted_decomposition", weighted_decomposition},
      {"admissible_interval", admissible_interval},
      {"limiter_1d", limiter_1d},
      {"limiter_2d", limiter_2d},
      {"monotone_diffusion_1d",
       [] { return monotone_1d("one-step monotonicity, weighted diffusion", Diff::in_x, Conv::none); }},
      {"monotone_convdiff_1d",
       [] { return monotone_1d("one-step monotonicity, nonlinear convection-diffusion", Diff::in_u, Conv::burgers); }},
      {"monotone_constant_2d", monotone_constant_2d},
      {"monotone_variable_2d", monotone_variable_2d},
      {"negative_control", negative_control},
      {"conservation", conservation},
      {"cfl_diffusion_1d",
       [] {
         return cfl_check_1d(
             "diffusion bound vs stencil", 501, [](Rng& r) { return draw_1d(r, true, Diff::in_x, Conv::none); },
             [](const Setup1D& st, const Scheme1D& s) {
               return cfl_1d_diffusion(s.moments(), s.max_interface_diffusivity({0, 1}), st.params) * h2(st);
             });
       }},
      {"cfl_convection_unit_weight",
       [] {
         return cfl_check_1d(
             "unit-weight convection bound vs stencil", 502,
             [](Rng& r) { return draw_1d(r, false, Diff::none, Conv::linear); },
             [](const Setup1D& st, const Scheme1D& s) {
               return s.moments()[0].m0 * lambda0_unit_weight(st.params.gamma, st.speed) * st.mesh.h;
             });
       }},
      {"cfl_convdiff_unit_weight",
       [] {
         return cfl_check_1d(
             "unit-weight convection-diffusion bound vs stencil", 503,
             [](Rng& r) { return draw_1d(r, false, Diff::constant, Conv::linear); },
             [](const Setup1D& st, const Scheme1D& s) {
               const double w = s.moments()[0].m0;
               return std::min(w * mu0_convdiff_unit_weight(st.params, st.diffusion) * h2(st),
                               w * lambda0_unit_weight(st.params.gamma, st.speed) * st.mesh.h);
             });
       }},
      {"cfl_convection_weighted",
       [] {
         return cfl_check_1d(
             "weighted convection bound vs stencil", 504,
             [](Rng& r) { return draw_1d(r, true, Diff::none, Conv::linear); },
             [](const Setup1D& st, const Scheme1D& s) {
               return cfl_1d_convection(s.moments(), st.params.gamma, st.speed) * st.mesh.h;
             });
       }},
      {"cfl_convdiff_weighted",
       [] {
         return cfl_check_1d(
             "weighted convection-diffusion bound vs stencil", 505,
             [](Rng& r) { return draw_1d(r, true, Diff::in_x, Conv::linear); },
             [](const Setup1D& st, const Scheme1D& s) {
               const ConvDiffBound b =
                   cfl_1d_convdiff(s.moments(), s.max_interface_diffusivity({0, 1}), st.params, st.speed);
               return std::min(b.mu0 * h2(st), b.lambda0 * st.mesh.h);
             });
       }},
      {"cfl_constant_tensor_2d",
       [] {
         return cfl_check_2d(
             "constant-tensor 2D bound vs decomposition", 506,
             [](Rng& r) { return draw_constant_2d(r, r() % 2 == 0); },
             [](const Setup2D& st, const Scheme2D& s) {
               return cfl_2d_constant(s.directional(), *st.problem.constant_tensor, st.params, st.mesh, 3);
             });
       }},
      {"cfl_variable_tensor_2d",
       [] {
         return cfl_check_2d(
             "variable-tensor 2D bound vs decomposition", 507, [](Rng& r) { return draw_variable_2d(r, 5); },
             [](const Setup2D& st, const Scheme2D&) {
               return cfl_2d_variable(*st.problem.tensor_bounds, st.params, st.mesh, 5);
             });
       }},
  };
  return list;
}

}  // namespace props
