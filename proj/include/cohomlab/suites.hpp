#pragma once

// Named verification suites.  Each suite expands a parameter grid into
// independent checks, runs them (optionally across worker threads), and
// reports pass/fail counts with the first counterexample.

#include <functional>
#include <string>
#include <vector>

#include "cohomlab/massey.hpp"

namespace cohomlab::suites {

using linalg::i64;

struct SuiteOptions {
  i64 p = 0;        // fix p (0 = suite default grid)
  int n = 0;        // fix n
  int m = 0;        // fix m
  int k = -1;       // fix k
  i64 pmax = 0;     // largest prime in the grid
  i64 pn_max = 0;   // largest p^n in the grid
  unsigned long long seed = 12345;
  int jobs = 1;
};

struct CheckResult {
  std::string params;
  bool pass = false;
  bool anomaly = false;  // recorded finding that does not fail the suite
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::string grid;
  int passed = 0;
  int failed = 0;
  int anomalies = 0;
  std::string first_counterexample;
  double wall_ms = 0;
  std::vector<CheckResult> checks;
  bool ok() const { return failed == 0; }
};

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);

// Shared instance factories.
massey::Instance truncated_regular_instance(const massey::Params& par, int dep,
                                            i64 t, int omega_level = -1);
massey::Instance jordan_pair_instance();
struct GridInstance {
  std::string label;
  massey::Instance instance;
};
std::vector<GridInstance> masseytrans_grid();

}  // namespace cohomlab::suites
