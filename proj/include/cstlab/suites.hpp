#pragma once

#include <string>
#include <vector>

#include "cstlab/cst.hpp"
#include "cstlab/group.hpp"
#include "cstlab/quadrature.hpp"
#include "cstlab/quantization.hpp"
#include "cstlab/report.hpp"

namespace cstlab {

// Batch-run configuration, loaded from JSON. Numeric fields must be positive
// and the suite list nonempty.
struct RunConfig {
  GroupSpec spec;
  double hbar0 = 1.0;
  std::vector<double> hbar_values{0.25, 1.0};
  std::vector<double> s_values{0.5, 1.0, 2.0};
  double rep_cutoff = 6.0;
  GridSpec grid;
  double tol_certify = 1e-6;
  double tol_unitarity = 1e-6;
  double tol_connection = 1e-5;
  std::string output_dir = "out";
  std::vector<std::string> suites;

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);
};

const std::vector<std::string>& known_suites();

// Quadrature rule sized for every integral the configured batteries request:
// the widest Gaussian among hbar_values, hbar0 / s and s hbar0.
QuadratureRule config_rule(const RunConfig& cfg);

// Runs one named verification suite and returns its checks.
std::vector<CheckResult> run_suite(const std::string& name, const RunConfig& cfg,
                                   const QuadratureRule& rule);

struct ConvergenceRow {
  int level = 0;
  std::size_t nodes_total = 0;
  double max_rel_err = 0.0;
  double runtime_ms = 0.0;
};

// Error of a suite's battery across grid-doubling levels. refine_radial_only
// doubles only the algebra-side radial count, isolating radial convergence.
std::vector<ConvergenceRow> convergence_table(const std::string& suite, const RunConfig& cfg,
                                              int levels, bool refine_radial_only = false);

}  // namespace cstlab
