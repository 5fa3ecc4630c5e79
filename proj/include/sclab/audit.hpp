#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace sclab {

enum class Verdict { pass, fail, skipped };

std::string to_string(Verdict v);

// One checked inequality. Convention: the check is lhs <= rhs and
// margin = rhs - lhs, so a negative margin beyond tolerance fails.
struct AuditRecord {
  static constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  std::string audit;
  std::string statement;  // the inequality in plain notation
  double beta = nan;
  double lambda = nan;
  double epsilon = nan;
  double lhs = nan;
  double rhs = nan;
  double margin = nan;
  double tolerance = 0.0;
  Verdict verdict = Verdict::skipped;
  bool advisory = false;  // expected to fail; does not count against a run
  std::string note;
  std::map<std::string, double> discretization;

  bool passed() const { return verdict == Verdict::pass; }
  bool failed() const { return verdict == Verdict::fail && !advisory; }
};

// Records lhs <= rhs with absolute tolerance tol.
AuditRecord check_le(std::string audit, std::string statement, double lhs, double rhs,
                     double tol);

AuditRecord skipped(std::string audit, std::string statement, std::string why);

}  // namespace sclab
