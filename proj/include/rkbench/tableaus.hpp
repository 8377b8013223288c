#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rkbench/types.hpp"

namespace rkbench {

enum class Family { ERK, SDIRK, ROS, ROW, ROK };

std::string to_string(Family f);

struct MethodTableau {
  std::string name;
  Family family = Family::ERK;
  int s = 0;      // stage count
  int p = 0;      // claimed order
  int p_hat = 0;  // embedded order
  // a for ERK/SDIRK (strictly lower triangular for ERK, diagonal = gamma for
  // SDIRK); alpha for ROS/ROW/ROK (strictly lower triangular).
  Mat a;
  // ROS/ROW/ROK only: lower triangular with constant diagonal gamma.
  Mat Gamma;
  Vec b;
  Vec b_hat;
  Vec c;  // row sums of a (including the diagonal), for documentation/checks
  double gamma = 0.0;
  int min_basis = 0;  // ROK: minimum Krylov dimension for full order

  bool has_b_hat() const { return b_hat.size() == s; }
  bool is_ros_type() const {
    return family == Family::ROS || family == Family::ROW ||
           family == Family::ROK;
  }
};

// Registered methods: ERK4, DOPRI5, DOPRI853, SDIRK4, ROS4, ROW3, ROK4.
// Lookup is case-insensitive; throws std::invalid_argument listing the valid
// names on a miss.
const MethodTableau& registry_get(const std::string& name);
const std::vector<std::string>& registry_names();

struct ConditionResidual {
  std::string id;  // tree / colored-tree encoding of the condition
  int order;
  double residual;
};

struct ConditionReport {
  std::vector<ConditionResidual> conditions;
  double max_abs_residual = 0.0;
};

// Evaluates the family-appropriate order conditions with the given weights up
// to the given order. ERK/SDIRK: rooted-tree conditions. ROS: Rosenbrock
// conditions under the exact-Jacobian assumption. ROW: two-colored tree
// conditions valid for an arbitrary operator in place of the Jacobian.
// ROK: the Krylov construction's conditions (per-shape merged sums plus zero
// conditions for colorings the reduced space cannot reproduce).
ConditionReport verify_order_conditions(const MethodTableau& t,
                                        const Vec& weights, int order);

// Same, at the tableau's claimed order with its own weights b.
ConditionReport verify_order_conditions(const MethodTableau& t);

// R(z) = 1 + z b^T (I - z A_eff)^{-1} 1 with A_eff = a (ERK/SDIRK) or
// alpha + Gamma (ROS/ROW/ROK), via an s x s dense solve. Throws
// std::runtime_error when I - z A_eff is singular. weights defaults to b;
// pass b_hat for the embedded stability function.
std::complex<double> stability_function_value(const MethodTableau& t,
                                              std::complex<double> z);
std::complex<double> stability_function_value(const MethodTableau& t,
                                              std::complex<double> z,
                                              const Vec& weights);

}  // namespace rkbench
