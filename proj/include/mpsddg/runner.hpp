#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpsddg/field.hpp"
#include "mpsddg/limiter.hpp"
#include "mpsddg/norms.hpp"
#include "mpsddg/problems.hpp"
#include "mpsddg/scheme_1d.hpp"
#include "mpsddg/scheme_2d.hpp"
#include "mpsddg/time_integration.hpp"

namespace mpsddg {

struct RunConfig {
  std::string problem = "heat_weighted_1d";
  ProblemOptions problem_options;
  int nx = 64;
  int ny = 0;  // 0: same as nx
  double beta0 = 2.0;
  double beta1 = 0.16;
  std::optional<double> gamma;    // empty: automatic selection
  std::optional<double> gamma_y;  // empty: same as gamma
  std::optional<double> dt;       // empty: from the CFL bound
  double safety = 0.9;
  double t_final = 0.1;
  bool limiter = true;
  int lobatto_points = 3;
  bool interface_correction = true;
  ProjectionKind projection = ProjectionKind::weighted;
  bool validate_beta0 = true;

  std::string out_dir;        // empty: nothing written
  int snapshot_every = 0;     // 0: max(1, steps / 200)
  std::vector<double> snapshot_times;
  bool row_errors = true;     // e1/e2 in every report row
  int samples_per_cell = 0;   // 0: 3 in 1D, 1 in 2D
  double exclusion_cells = 2.0;
  std::optional<double> exclusion_radius;  // physical units; overrides exclusion_cells

  // optional mesh switch (2D): at switch_time, transfer to switch_nx x switch_ny with step switch_dt
  std::optional<double> switch_time;
  int switch_nx = 0;
  int switch_ny = 0;
  std::optional<double> switch_dt;

  int ny_or_nx() const { return ny > 0 ? ny : nx; }
};

struct ReportRow {
  double t = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double einf = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  double mass_drift = 0.0;
};

struct RunResult {
  RunConfig config;
  int dimension = 1;
  double gamma_x = 0.0;
  double gamma_y = 0.0;
  Bounds bounds;
  CflReport cfl;
  std::vector<ReportRow> rows;
  long steps = 0;
  bool blew_up = false;
  std::string message;
  double final_time = 0.0;
  LimiterStats limiter_stats;
  DGField1D final_1d;
  DGField2D final_2d;
  std::optional<ErrorNorms> final_error;  // plain errors at final_time when an exact solution exists
  bool tensor_warning = false;
};

/// Throws ConfigError on invalid configuration; blow-up is reported in the result.
RunResult run(const RunConfig& config);

CflReport cfl_report(const Scheme1D& scheme, const Bounds& bounds, double safety);
CflReport cfl_report(const Scheme2D& scheme, const Bounds& bounds, double safety, bool validate_beta0 = true);

struct ConvergenceRow {
  int n = 0;
  double e1 = 0.0;
  double order1 = 0.0;
  double e2 = 0.0;
  double order2 = 0.0;
};

struct ConvergenceReport {
  std::string mode;  // "exact", "corner_excluding" or "consecutive"
  std::vector<ConvergenceRow> rows;
  std::vector<RunResult> runs;
};

/// Runs the template on every mesh (1D: nx; 2D: nx = ny) and tabulates errors and observed orders.
ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& meshes);

/// Writes report.csv (and the final solution) for one run into config.out_dir.
void write_run_outputs(const RunResult& result);
void write_convergence(const ConvergenceReport& report, const std::string& out_dir);

}  // namespace mpsddg
