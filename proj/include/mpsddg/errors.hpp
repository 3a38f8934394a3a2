#pragma once

#include <stdexcept>
#include <string>

namespace mpsddg {

/// Invalid configuration or inadmissible parameters (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values appeared during time stepping (CLI exit code 3).
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, long step, double last_healthy_time, int cell)
      : std::runtime_error(what), step(step), last_healthy_time(last_healthy_time), cell(cell) {}
  long step;
  double last_healthy_time;
  int cell;
};

/// A cell average left [c1, c2] by more than the limiter tolerance.
class LimiterError : public std::runtime_error {
 public:
  LimiterError(const std::string& what, int cell, double excess)
      : std::runtime_error(what), cell(cell), excess(excess) {}
  int cell;
  double excess;
};

}  // namespace mpsddg
