#include "mpsddg/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>

#include "mpsddg/csv.hpp"
#include "mpsddg/errors.hpp"
#include "mpsddg/mesh.hpp"

namespace mpsddg {

namespace {

double relative_drift(double m, double m0) {
  const double scale = std::abs(m0) > 1e-300 ? std::abs(m0) : 1.0;
  return std::abs(m - m0) / scale;
}

void validate(const RunConfig& c) {
  if (c.nx < 2 || c.ny < 0 || (c.ny > 0 && c.ny < 2)) throw ConfigError("mesh needs at least 2 cells per axis");
  if (!(c.t_final >= 0.0)) throw ConfigError("t_final must be >= 0");
  if (c.dt && !(*c.dt > 0.0)) throw ConfigError("dt must be > 0");
  if (!(c.safety > 0.0 && c.safety <= 1.0)) throw ConfigError("safety must lie in (0, 1]");
  if (c.beta1 < 0.125 || c.beta1 > 0.25) throw ConfigError("beta1 must lie in [1/8, 1/4]");
  if (c.beta0 < 1.0) throw ConfigError("beta0 must be >= 1");
  if (c.lobatto_points < 3) throw ConfigError("lobatto_points must be >= 3");
  for (double s : c.snapshot_times)
    if (!(s > 0.0)) throw ConfigError("snapshot times must be positive");
  if (c.switch_time) {
    if (!(*c.switch_time > 0.0) || c.switch_nx < 2) throw ConfigError("mesh switch needs a positive time and a mesh");
  }
}

/// Sorted landing times in (0, t_final].
std::vector<double> landing_times(const RunConfig& c) {
  std::vector<double> t;
  for (double s : c.snapshot_times)
    if (s < c.t_final) t.push_back(s);
  if (c.switch_time && *c.switch_time < c.t_final) t.push_back(*c.switch_time);
  t.push_back(c.t_final);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

std::vector<double> sample_offsets(int n) {
  std::vector<double> xi(n);
  for (int k = 0; k < n; ++k) xi[k] = n == 1 ? 0.0 : -1.0 + (2.0 * k + 1.0) / n;
  return xi;
}

std::string time_tag(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

/// Drives SSP(3,3) up to t_end, calling `observe(t)` every `cadence` steps.
template <class Field, class Euler, class Limit, class Observe>
void march(Field& u, double& t, double t_end, double dt, long& steps, long cadence, Euler&& euler, Limit&& limit,
           Observe&& observe) {
  while (t_end - t > 1e-12 * std::max(dt, std::abs(t_end))) {
    const bool land = t_end - t <= dt * (1.0 + 1e-9);
    const double tau = land ? t_end - t : dt;
    u = ssp33_step(u, t, tau, euler, limit, steps);
    t = land ? t_end : t + tau;
    ++steps;
    if (!land && steps % cadence == 0) observe(t);
  }
}

long default_cadence(const RunConfig& c, double dt) {
  if (c.snapshot_every > 0) return c.snapshot_every;
  const long total = static_cast<long>(std::ceil(c.t_final / dt));
  return std::max(1L, total / 200);
}

RunResult run_1d(const RunConfig& c) {
  RunResult r;
  r.config = c;
  r.dimension = 1;
  const Problem1D problem = make_problem_1d(c.problem, c.problem_options);
  const Mesh1D mesh = build_mesh_1d(problem.x_left, problem.x_right, c.nx);

  const auto moments = weight_moments_1d(mesh, problem.weight);
  std::vector<AdmissibleInterval> intervals;
  for (const auto& m : moments) intervals.push_back(compute_ab(m));
  const double gamma = select_gamma(intervals, c.beta1, c.gamma);
  r.gamma_x = r.gamma_y = gamma;

  const FluxParams params{c.beta0, c.beta1, gamma};
  const Scheme1D scheme(mesh, problem, params, SchemeOptions{c.interface_correction, c.projection});
  r.bounds = initial_bounds(problem, mesh, gamma);
  r.cfl = cfl_report(scheme, r.bounds, c.safety);
  if (c.dt) {
    r.cfl.tau = *c.dt;
    r.cfl.binding = "user";
  }
  const double dt = r.cfl.tau;

  std::optional<ScalingLimiter1D> limiter;
  if (c.limiter) {
    const auto policy = problem.boundary.kind == BoundaryKind::periodic ? LimiterPolicy::strict : LimiterPolicy::clamp;
    limiter.emplace(moments, gamma, r.bounds, policy);
  }

  DGField1D u = project_initial(problem.initial, problem.weight, mesh, c.projection);
  if (limiter) limiter->apply(u, &r.limiter_stats);
  const double mass0 = scheme.weighted_mass(u);

  auto observe = [&](double t) {
    ReportRow row;
    row.t = t;
    if (problem.exact && c.row_errors) {
      const ErrorNorms e = error_norms(u, [&](double x) { return problem.exact(t, x); });
      row.e1 = e.e1;
      row.e2 = e.e2;
    } else {
      row.e1 = row.e2 = std::nan("");
    }
    const auto [lo, hi] = test_point_range(u, gamma);
    row.min_u = lo;
    row.max_u = hi;
    row.einf = std::max(r.bounds.lower - lo, hi - r.bounds.upper);
    row.mass_drift = relative_drift(scheme.weighted_mass(u), mass0);
    if (r.rows.empty() || r.rows.back().t < t) r.rows.push_back(row);
  };
  auto euler = [&](const DGField1D& v, double t, double tau) { return scheme.euler_step(v, t, tau); };
  auto limit = [&](DGField1D& v) {
    if (limiter) limiter->apply(v, &r.limiter_stats);
  };

  double t = 0.0;
  observe(t);
  const long cadence = default_cadence(c, dt);
  try {
    for (double target : landing_times(c)) {
      march(u, t, target, dt, r.steps, cadence, euler, limit, observe);
      observe(t);
    }
  } catch (const BlowUpError& e) {
    r.blew_up = true;
    r.message = e.what();
  } catch (const LimiterError& e) {
    r.blew_up = true;
    r.message = e.what();
  }
  r.final_time = t;
  r.final_1d = u;
  if (problem.exact && !r.blew_up)
    r.final_error = error_norms(u, [&](double x) { return problem.exact(t, x); });
  return r;
}

struct Stage2D {
  std::unique_ptr<Scheme2D> scheme;
  std::optional<ScalingLimiter2D> limiter;
  TestSet tests;
};

Stage2D make_stage_2d(const Problem2D& problem, const Mesh2D& mesh, const FluxParams2D& params, const RunConfig& c,
                      const Bounds& bounds) {
  Stage2D s;
  s.scheme = std::make_unique<Scheme2D>(mesh, problem, params, c.lobatto_points,
                                        SchemeOptions{c.interface_correction, c.projection});
  s.tests = test_set_2d(params.gamma_x, params.gamma_y, s.scheme->lobatto());
  if (c.limiter) s.limiter.emplace(s.scheme->basis_moments(), s.tests, bounds, LimiterPolicy::strict);
  return s;
}

RunResult run_2d(const RunConfig& c) {
  RunResult r;
  r.config = c;
  r.dimension = 2;
  const Problem2D problem = make_problem_2d(c.problem, c.problem_options);
  Mesh2D mesh = build_mesh_2d(problem.x_left, problem.x_right, c.nx, problem.y_left, problem.y_right, c.ny_or_nx());

  // gamma: admissible for every transverse Lobatto node; a variable tensor needs a Lobatto node (0)
  std::vector<AdmissibleInterval> ix, iy;
  if (problem.weight_is_constant) {
    ix = iy = {compute_ab(WeightMoments{})};
  } else {
    const auto w = directional_weights(mesh, problem.weight, gauss_lobatto_nodes(c.lobatto_points));
    ix = x_intervals(w);
    iy = y_intervals(w);
  }
  std::optional<double> gx = c.gamma, gy = c.gamma_y ? c.gamma_y : c.gamma;
  if (!problem.constant_tensor) {
    if (!gx) gx = 0.0;
    if (!gy) gy = 0.0;
  }
  r.gamma_x = select_gamma(ix, c.beta1, gx);
  r.gamma_y = select_gamma(iy, c.beta1, gy);
  const FluxParams2D params{c.beta0, c.beta1, r.gamma_x, r.gamma_y};

  r.bounds = initial_bounds(problem, mesh, r.gamma_x, r.gamma_y);
  Stage2D stage = make_stage_2d(problem, mesh, params, c, r.bounds);
  r.cfl = cfl_report(*stage.scheme, r.bounds, c.safety, c.validate_beta0);
  if (c.dt) {
    r.cfl.tau = *c.dt;
    r.cfl.binding = "user";
  }
  double dt = r.cfl.tau;

  DGField2D u = project_initial(problem.initial, problem.weight, mesh, c.projection);
  if (stage.limiter) stage.limiter->apply(u, &r.limiter_stats);
  const double mass0 = stage.scheme->weighted_mass(u);

  auto observe = [&](double t) {
    ReportRow row;
    row.t = t;
    if (problem.exact && c.row_errors) {
      const ErrorNorms e = error_norms(u, [&](double x, double y) { return problem.exact(t, x, y); });
      row.e1 = e.e1;
      row.e2 = e.e2;
    } else {
      row.e1 = row.e2 = std::nan("");
    }
    const auto [lo, hi] = test_point_range(u, stage.tests);
    row.min_u = lo;
    row.max_u = hi;
    row.einf = std::max(r.bounds.lower - lo, hi - r.bounds.upper);
    row.mass_drift = relative_drift(stage.scheme->weighted_mass(u), mass0);
    if (r.rows.empty() || r.rows.back().t < t) r.rows.push_back(row);
  };
  auto euler = [&](const DGField2D& v, double t, double tau) { return stage.scheme->euler_step(v, t, tau); };
  auto limit = [&](DGField2D& v) {
    if (stage.limiter) stage.limiter->apply(v, &r.limiter_stats);
  };

  double t = 0.0;
  observe(t);
  long cadence = default_cadence(c, dt);
  try {
    for (double target : landing_times(c)) {
      march(u, t, target, dt, r.steps, cadence, euler, limit, observe);
      if (c.switch_time && target == *c.switch_time) {
        mesh = build_mesh_2d(problem.x_left, problem.x_right, c.switch_nx, problem.y_left, problem.y_right,
                             c.switch_ny > 0 ? c.switch_ny : c.switch_nx);
        stage = make_stage_2d(problem, mesh, params, c, r.bounds);
        u = transfer_field(u, mesh);
        limit(u);
        if (c.switch_dt) dt = *c.switch_dt;
        cadence = std::max(1L, c.snapshot_every > 0 ? c.snapshot_every
                                                    : static_cast<long>((c.t_final - t) / dt) / 200);
      }
      observe(t);
    }
  } catch (const BlowUpError& e) {
    r.blew_up = true;
    r.message = e.what();
  } catch (const LimiterError& e) {
    r.blew_up = true;
    r.message = e.what();
  }
  r.final_time = t;
  r.final_2d = u;
  r.tensor_warning = stage.scheme->tensor_warning();
  if (problem.exact && !r.blew_up)
    r.final_error = error_norms(u, [&](double x, double y) { return problem.exact(t, x, y); });
  return r;
}

}  // namespace

CflReport cfl_report(const Scheme1D& scheme, const Bounds& bounds, double safety) {
  const Problem1D& p = scheme.problem();
  const FluxParams& fp = scheme.params();
  const double h = scheme.mesh().h;
  const double max_a = scheme.max_interface_diffusivity(bounds);
  const double lip = p.convection ? p.convection->lipschitz() : 0.0;
  CflReport r;
  r.safety = safety;
  if (!p.convection && !p.diffusivity_depends_on_u) {
    r.mu0 = cfl_1d_diffusion(scheme.moments(), max_a, fp);
  } else if (p.weight_is_constant) {
    const double w = scheme.moments().front().m0;
    r.mu0 = w * mu0_convdiff_unit_weight(fp, max_a);
    r.lambda0 = w * lambda0_unit_weight(fp.gamma, lip);
  } else {
    const ConvDiffBound b = cfl_1d_convdiff(scheme.moments(), max_a, fp, lip);
    r.mu0 = b.mu0;
    r.lambda0 = b.lambda0;
  }
  const double td = r.mu0 * h * h, tc = r.lambda0 * h;
  if (!std::isfinite(std::min(td, tc))) throw ConfigError("no CFL constraint applies; set dt explicitly");
  r.binding = td <= tc ? "diffusion" : "convection";
  r.tau = safety * std::min(td, tc);
  return r;
}

CflReport cfl_report(const Scheme2D& scheme, const Bounds& bounds, double safety, bool validate_beta0) {
  const Problem2D& p = scheme.problem();
  const Mesh2D& mesh = scheme.mesh();
  const FluxParams2D& prm = scheme.params();
  const int L = static_cast<int>(scheme.lobatto().size());
  CflReport r;
  r.safety = safety;
  if (p.constant_tensor) {
    r.mu0 = cfl_2d_constant(scheme.directional(), *p.constant_tensor, prm, mesh, L, validate_beta0);
  } else {
    const TensorBounds tb = tensor_bounds(p, mesh, bounds);
    if (p.weight_is_constant) {
      const double w = scheme.directional().x_moments.front().m0;
      r.mu0 = w * cfl_2d_variable(tb, prm, mesh, L, validate_beta0);
    } else {
      // no bound covers variable M with a variable tensor: take the smaller of the two
      const Tensor2D frozen{tb.max_ab, tb.max_ab, tb.max_abs_c};
      r.mu0 = std::min(cfl_2d_constant(scheme.directional(), frozen, prm, mesh, L, false),
                       cfl_2d_variable(tb, prm, mesh, L, false));
      r.heuristic = true;
    }
  }
  const double inv = 1.0 / (mesh.dx() * mesh.dx()) + 1.0 / (mesh.dy() * mesh.dy());
  const double td = r.mu0 / inv;
  double tc = kInf;
  if (p.has_convection()) {
    const double sx = p.flux_x ? p.flux_x->lipschitz() : 0.0;
    const double sy = p.flux_y ? p.flux_y->lipschitz() : 0.0;
    const double g = std::max(std::abs(prm.gamma_x), std::abs(prm.gamma_y));
    const double rate = sx / mesh.dx() + sy / mesh.dy();
    if (rate > 0.0) {
      r.lambda0 = lambda0_unit_weight(g, 1.0);
      tc = r.lambda0 / rate;
      r.heuristic = true;
    }
  }
  if (!std::isfinite(std::min(td, tc))) throw ConfigError("no CFL constraint applies; set dt explicitly");
  r.binding = td <= tc ? "diffusion" : "convection";
  r.tau = safety * std::min(td, tc);
  return r;
}

RunResult run(const RunConfig& config) {
  validate(config);
  return is_2d_problem(config.problem) ? run_2d(config) : run_1d(config);
}

ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& meshes) {
  if (meshes.size() < 2) throw ConfigError("a convergence study needs at least 2 meshes");
  for (std::size_t k = 1; k < meshes.size(); ++k)
    if (meshes[k] != 2 * meshes[k - 1]) throw ConfigError("convergence meshes must refine 2:1");
  ConvergenceReport rep;
  const bool two_d = is_2d_problem(base.problem);
  bool has_exact = false;
  std::function<std::vector<double>(double)> corners;
  if (two_d) {
    has_exact = static_cast<bool>(make_problem_2d(base.problem, base.problem_options).exact);
  } else {
    const Problem1D p = make_problem_1d(base.problem, base.problem_options);
    has_exact = static_cast<bool>(p.exact);
    if (p.singular_points && (base.exclusion_radius ? *base.exclusion_radius > 0.0 : base.exclusion_cells > 0.0))
      corners = p.singular_points;
  }
  rep.mode = !has_exact ? "consecutive" : (corners ? "corner_excluding" : "exact");

  for (int n : meshes) {
    RunConfig c = base;
    c.nx = n;
    c.ny = two_d ? n : 0;
    c.out_dir.clear();
    c.row_errors = false;
    rep.runs.push_back(run(c));
  }

  std::vector<ErrorNorms> errs;
  const double nan = std::nan("");
  for (std::size_t k = 0; k < rep.runs.size(); ++k) {
    const RunResult& r = rep.runs[k];
    if (r.blew_up) {
      errs.push_back({nan, nan, nan});
      continue;
    }
    if (rep.mode == "consecutive") {
      if (k + 1 == rep.runs.size()) break;
      const RunResult& f = rep.runs[k + 1];
      if (f.blew_up) {
        errs.push_back({nan, nan, nan});
        continue;
      }
      errs.push_back(two_d ? consecutive_error(r.final_2d, f.final_2d) : consecutive_error(r.final_1d, f.final_1d));
    } else if (rep.mode == "corner_excluding") {
      const Problem1D p = make_problem_1d(base.problem, base.problem_options);
      const auto cs = corners(r.final_time);
      const double t = r.final_time;
      errs.push_back(corner_excluding_error(
          r.final_1d, [&](double x) { return p.exact(t, x); }, cs,
          base.exclusion_radius ? *base.exclusion_radius : base.exclusion_cells * r.final_1d.mesh.h));
    } else {
      errs.push_back(r.final_error ? *r.final_error : ErrorNorms{nan, nan, nan});
    }
  }
  auto order = [nan](double coarse, double fine) {
    if (coarse == 0.0 && fine == 0.0) return nan;
    return std::log2(coarse / fine);
  };
  for (std::size_t k = 0; k < errs.size(); ++k) {
    ConvergenceRow row;
    row.n = meshes[k];
    row.e1 = errs[k].e1;
    row.e2 = errs[k].e2;
    row.order1 = k == 0 ? nan : order(errs[k - 1].e1, errs[k].e1);
    row.order2 = k == 0 ? nan : order(errs[k - 1].e2, errs[k].e2);
    rep.rows.push_back(row);
  }
  return rep;
}

void write_run_outputs(const RunResult& result) {
  const std::string& dir = result.config.out_dir;
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::vector<std::vector<double>> rows;
  for (const auto& r : result.rows) rows.push_back({r.t, r.e1, r.e2, r.einf, r.min_u, r.max_u, r.mass_drift});
  write_csv(dir + "/report.csv", {"t", "e1", "e2", "einf", "min_u", "max_u", "mass_drift"}, rows);

  const std::string path = dir + "/solution_t" + time_tag(result.final_time) + ".csv";
  std::vector<std::vector<double>> samples;
  const int spc = result.config.samples_per_cell > 0 ? result.config.samples_per_cell : (result.dimension == 1 ? 3 : 1);
  const auto xi = sample_offsets(spc);
  if (result.dimension == 1) {
    const DGField1D& u = result.final_1d;
    for (int j = 0; j < u.mesh.cells; ++j)
      for (double s : xi) samples.push_back({u.mesh.to_physical(j, s), u.cells[j].eval(s)});
    write_csv(path, {"x", "u"}, samples);
  } else {
    const DGField2D& u = result.final_2d;
    for (int j = 0; j < u.mesh.ny(); ++j)
      for (double se : xi)
        for (int i = 0; i < u.mesh.nx(); ++i)
          for (double sx : xi)
            samples.push_back({u.mesh.x.to_physical(i, sx), u.mesh.y.to_physical(j, se), u.at(i, j).eval(sx, se)});
    write_csv(path, {"x", "y", "u"}, samples);
  }
}

void write_convergence(const ConvergenceReport& report, const std::string& out_dir) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  std::vector<std::vector<double>> rows;
  for (const auto& r : report.rows) rows.push_back({static_cast<double>(r.n), r.e1, r.order1, r.e2, r.order2});
  write_csv(out_dir + "/convergence.csv", {"N", "e1", "order1", "e2", "order2"}, rows);
}

}  // namespace mpsddg
