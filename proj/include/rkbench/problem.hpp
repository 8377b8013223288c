#pragma once

#include <functional>
#include <string>

#include "rkbench/types.hpp"

namespace rkbench {

// Autonomous initial value problem y' = f(y), y(t0) = y0. Non-autonomous
// systems are handled by appending t as an extra state with derivative 1.
struct OdeProblem {
  int dimension = 0;
  std::function<void(const Vec& y, Vec& f)> rhs;
  // Optional: exact Jacobian-vector product (y, v) -> J(y) v.
  std::function<void(const Vec& y, const Vec& v, Vec& out)> exact_jvp;
  // Optional: dense Jacobian, intended for small-N verification only.
  std::function<Mat(const Vec& y)> dense_jacobian;
  double t0 = 0.0;
  double tF = 1.0;
  Vec y0;
  std::string name;

  bool has_exact_jvp() const { return static_cast<bool>(exact_jvp); }
  bool has_dense_jacobian() const { return static_cast<bool>(dense_jacobian); }
  void validate() const;  // throws std::invalid_argument on contract violations
};

// Evaluates f(y) into out, bumping work.rhs_evals. Throws NonFiniteError if
// the output contains NaN/Inf (message names the first offending index).
void eval_rhs(const OdeProblem& p, const Vec& y, Vec& out, WorkCounters& work);

}  // namespace rkbench
