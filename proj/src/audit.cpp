#include "sclab/audit.hpp"

namespace sclab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

AuditRecord check_le(std::string audit, std::string statement, double lhs, double rhs,
                     double tol) {
  AuditRecord r;
  r.audit = std::move(audit);
  r.statement = std::move(statement);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tol;
  r.verdict = (std::isfinite(r.margin) && r.margin >= -tol) ? Verdict::pass : Verdict::fail;
  return r;
}

AuditRecord skipped(std::string audit, std::string statement, std::string why) {
  AuditRecord r;
  r.audit = std::move(audit);
  r.statement = std::move(statement);
  r.verdict = Verdict::skipped;
  r.note = std::move(why);
  return r;
}

}  // namespace sclab
