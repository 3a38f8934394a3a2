// Command-line driver: single runs and convergence studies.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "mpsddg/errors.hpp"
#include "mpsddg/runner.hpp"

namespace {

std::optional<double> parse_auto(const std::string& s, const char* what) {
  if (s.empty() || s == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw mpsddg::ConfigError(std::string("invalid value for ") + what + ": '" + s + "'");
  }
}

void print_summary(const mpsddg::RunResult& r) {
  std::printf("problem %s  dim %d  gamma (%.6g, %.6g)  bounds [%.6g, %.6g]\n", r.config.problem.c_str(), r.dimension,
              r.gamma_x, r.gamma_y, r.bounds.lower, r.bounds.upper);
  std::printf("mu0 %.6g  lambda0 %.6g  tau %.6g  binding %s%s\n", r.cfl.mu0, r.cfl.lambda0, r.cfl.tau,
              r.cfl.binding.c_str(), r.cfl.heuristic ? " (heuristic)" : "");
  double einf = -1e300;
  for (const auto& row : r.rows) einf = std::max(einf, row.einf);
  std::printf("steps %ld  t %.17g  max e_inf %.6e  limited %ld  clamped %ld\n", r.steps, r.final_time, einf,
              r.limiter_stats.limited_cells, r.limiter_stats.clamped_cells);
  if (r.final_error) std::printf("e1 %.6e  e2 %.6e\n", r.final_error->e1, r.final_error->e2);
  if (r.tensor_warning) std::printf("warning: diffusion tensor not nonnegative definite at some face node\n");
  if (r.blew_up) std::printf("blow-up: %s\n", r.message.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-preserving third-order DDG solver for weighted convection-diffusion"};
  mpsddg::RunConfig cfg;
  std::string gamma = "auto", gamma_y = "auto", dt = "auto", projection = "weighted", limiter = "on";
  std::vector<int> study;
  bool no_correction = false, skip_beta0 = false;
  double switch_time = 0.0, switch_dt = 0.0, exclusion_radius = -1.0;

  app.set_config("--config", "", "key = value file; command-line flags override it");
  app.add_option("--problem", cfg.problem, "heat_weighted_1d | porous_medium | buckley_leverett | aniso_2d")
      ->capture_default_str();
  app.add_option("--nx", cfg.nx, "cells along x")->capture_default_str();
  app.add_option("--ny", cfg.ny, "cells along y (2D, default nx)");
  app.add_option("--beta0", cfg.beta0)->capture_default_str();
  app.add_option("--beta1", cfg.beta1)->capture_default_str();
  app.add_option("--gamma", gamma, "test-point offset or 'auto'")->capture_default_str();
  app.add_option("--gamma-y", gamma_y, "offset along y (2D), default --gamma");
  app.add_option("--dt", dt, "time step or 'auto' (CFL bound times safety)")->capture_default_str();
  app.add_option("--safety", cfg.safety)->capture_default_str();
  app.add_option("--t-final", cfg.t_final)->capture_default_str();
  app.add_option("--limiter", limiter, "on | off")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  app.add_option("--lobatto-points", cfg.lobatto_points)->capture_default_str();
  app.add_option("--out-dir", cfg.out_dir, "directory for CSV output");
  app.add_option("--study", study, "mesh list for a convergence study, e.g. 16,32,64,128")->delimiter(',');
  app.add_option("--m", cfg.problem_options.porous_m, "porous medium exponent")->capture_default_str();
  app.add_option("--tensor-case", cfg.problem_options.tensor_case, "aniso_2d tensor: 1, 2 or 3")
      ->capture_default_str();
  app.add_option("--epsilon", cfg.problem_options.epsilon, "Buckley-Leverett diffusion scale")
      ->capture_default_str();
  app.add_option("--snapshot-every", cfg.snapshot_every, "report cadence in steps (0: steps/200)");
  app.add_option("--snapshot-times", cfg.snapshot_times, "extra report times")->delimiter(',');
  app.add_option("--samples-per-cell", cfg.samples_per_cell, "solution dump points per cell and axis");
  app.add_option("--exclusion-cells", cfg.exclusion_cells, "corner exclusion radius in cells")
      ->capture_default_str();
  app.add_option("--exclusion-radius", exclusion_radius, "corner exclusion radius in length units");
  app.add_option("--projection", projection, "weighted | standard")
      ->check(CLI::IsMember({"weighted", "standard"}))
      ->capture_default_str();
  app.add_flag("--no-interface-correction", no_correction, "plain DDG scheme");
  app.add_flag("--skip-beta0-check", skip_beta0, "run even when beta0 is below the 2D threshold");
  app.add_option("--switch-time", switch_time, "2D: time of the mesh switch");
  app.add_option("--switch-nx", cfg.switch_nx, "2D: cells per axis after the switch");
  app.add_option("--switch-dt", switch_dt, "2D: time step after the switch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.gamma = parse_auto(gamma, "--gamma");
    cfg.gamma_y = parse_auto(gamma_y, "--gamma-y");
    cfg.dt = parse_auto(dt, "--dt");
    cfg.limiter = limiter == "on";
    cfg.projection = projection == "standard" ? mpsddg::ProjectionKind::standard : mpsddg::ProjectionKind::weighted;
    cfg.interface_correction = !no_correction;
    cfg.validate_beta0 = !skip_beta0;
    if (switch_time > 0.0) cfg.switch_time = switch_time;
    if (switch_dt > 0.0) cfg.switch_dt = switch_dt;
    if (exclusion_radius >= 0.0) cfg.exclusion_radius = exclusion_radius;

    if (!study.empty()) {
      const auto rep = mpsddg::convergence_study(cfg, study);
      std::printf("mode %s\n%6s %14s %8s %14s %8s\n", rep.mode.c_str(), "N", "e1", "order1", "e2", "order2");
      for (const auto& r : rep.rows)
        std::printf("%6d %14.6e %8.3f %14.6e %8.3f\n", r.n, r.e1, r.order1, r.e2, r.order2);
      mpsddg::write_convergence(rep, cfg.out_dir);
      for (const auto& r : rep.runs)
        if (r.blew_up) {
          std::fprintf(stderr, "N=%d: %s\n", r.config.nx, r.message.c_str());
          return 3;
        }
      return 0;
    }

    const auto result = mpsddg::run(cfg);
    print_summary(result);
    mpsddg::write_run_outputs(result);
    return result.blew_up ? 3 : 0;
  } catch (const mpsddg::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  }
}
