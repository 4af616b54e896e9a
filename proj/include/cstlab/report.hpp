#pragma once

#include <string>
#include <vector>

namespace cstlab {

// One cross-checked quantity: a computed value against its reference.
struct CheckResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline CheckResult make_check(std::string name, double lhs, double rhs, double tolerance) {
  CheckResult c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.abs_err = std::abs(lhs - rhs);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  c.rel_err = scale > 0.0 ? c.abs_err / scale : c.abs_err;
  c.tolerance = tolerance;
  c.pass = c.rel_err <= tolerance;
  return c;
}

// Check on a residual that should vanish; rel_err is the residual itself.
inline CheckResult make_residual_check(std::string name, double residual, double tolerance) {
  CheckResult c;
  c.name = std::move(name);
  c.lhs = residual;
  c.rhs = 0.0;
  c.abs_err = std::abs(residual);
  c.rel_err = std::abs(residual);
  c.tolerance = tolerance;
  c.pass = c.rel_err <= tolerance;
  return c;
}

inline bool all_pass(const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace cstlab
