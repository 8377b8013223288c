#include <cmath>
#include <sstream>

#include "rkbench/norms.hpp"
#include "rkbench/problem.hpp"
#include "rkbench/types.hpp"

namespace rkbench {

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Success: return "success";
    case RunStatus::RejectionLimit: return "rejection_limit";
    case RunStatus::MaxSteps: return "max_steps";
    case RunStatus::StepFailure: return "step_failure";
  }
  return "unknown";
}

void OdeProblem::validate() const {
  if (dimension <= 0) throw std::invalid_argument("problem dimension must be positive");
  if (!rhs) throw std::invalid_argument("problem has no rhs callback");
  if (!(t0 < tF)) throw std::invalid_argument("problem requires t0 < tF");
  if (y0.size() != dimension)
    throw std::invalid_argument("y0 length does not match problem dimension");
}

namespace {

[[noreturn]] void throw_non_finite(const char* what, const Vec& v) {
  Eigen::Index bad = -1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) { bad = i; break; }
  }
  std::ostringstream os;
  os << what << ": non-finite entry at index " << bad;
  throw NonFiniteError(os.str());
}

}  // namespace

void eval_rhs(const OdeProblem& p, const Vec& y, Vec& out, WorkCounters& work) {
  out.resize(p.dimension);
  p.rhs(y, out);
  work.rhs_evals += 1;
  if (out.size() != p.dimension)
    throw std::invalid_argument("rhs output length does not match problem dimension");
  if (!out.allFinite()) throw_non_finite("rhs output", out);
}

double weighted_error_norm(const Vec& err, const Vec& y_old, const Vec& y_new,
                           double abs_tol, double rel_tol) {
  const Eigen::Index n = err.size();
  if (y_old.size() != n || y_new.size() != n)
    throw std::invalid_argument("weighted_error_norm: length mismatch");
  if (!(abs_tol > 0.0) || rel_tol < 0.0)
    throw std::invalid_argument("weighted_error_norm: need abs_tol > 0 and rel_tol >= 0");
  if (!err.allFinite()) throw_non_finite("weighted_error_norm err", err);
  if (!y_old.allFinite()) throw_non_finite("weighted_error_norm y_old", y_old);
  if (!y_new.allFinite()) throw_non_finite("weighted_error_norm y_new", y_new);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale = abs_tol + rel_tol * std::max(std::abs(y_old[i]), std::abs(y_new[i]));
    const double w = err[i] / scale;
    acc += w * w;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

double l2_error(const Vec& y, const Vec& y_ref) {
  if (y.size() != y_ref.size())
    throw std::invalid_argument("l2_error: length mismatch");
  return (y - y_ref).norm();
}

}  // namespace rkbench
