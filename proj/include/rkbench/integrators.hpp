#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "rkbench/matfree.hpp"
#include "rkbench/problem.hpp"
#include "rkbench/tableaus.hpp"
#include "rkbench/types.hpp"

namespace rkbench {

struct SolverOptions {
  JvpMode jvp_mode = JvpMode::FD;
  int krylov_dim = 4;  // ROK basis size M; 0 degenerates to the explicit scheme
  // NaN means "derive from the tolerance cascade": 0.1 * min(abs_tol, rel_tol)
  // in adaptive mode, 1e-13 in fixed-step mode.
  double newton_tol = std::nan("");
  int newton_max = 10;
  double linear_rel_tol = 0.01;  // GMRES tolerance inside Newton
  // GMRES tolerance for ROS/ROW stage systems. Near machine precision by
  // default so stage solves never limit measured convergence order.
  double stage_linear_rel_tol = 1e-12;
  int gmres_restart = 30;
  int gmres_max_iters = 100;
  bool frozen_jacobian = false;  // SDIRK Newton: linearize at y_n all step
};

struct StepOutcome {
  Vec y_proposed;
  Vec error_estimate;  // size 0 when the method carries no estimator
  WorkCounters work;
  bool ok = false;
  std::string message;

  bool has_estimate() const { return error_estimate.size() > 0; }
};

// One step of each scheme. All report work deltas for exactly this step and
// convert non-finite intermediate states into ok = false outcomes.
StepOutcome erk_step(const OdeProblem& p, const MethodTableau& t, const Vec& y,
                     double h);
StepOutcome sdirk_step(const OdeProblem& p, const MethodTableau& t,
                       const Vec& y, double h, const SolverOptions& opt);
// ROS and ROW tableaus; Jacobian products frozen at y for the whole step.
StepOutcome ros_step(const OdeProblem& p, const MethodTableau& t, const Vec& y,
                     double h, const SolverOptions& opt);
StepOutcome rok_step(const OdeProblem& p, const MethodTableau& t, const Vec& y,
                     double h, const SolverOptions& opt);

// Family dispatch.
StepOutcome take_step(const OdeProblem& p, const MethodTableau& t, const Vec& y,
                      double h, const SolverOptions& opt);

struct IntegrationConfig {
  enum class Mode { Fixed, Adaptive };
  Mode mode = Mode::Adaptive;
  double h0 = 0.0;  // <= 0 in adaptive mode means 1e-3 * (tF - t0)
  double abs_tol = 1e-6;
  double rel_tol = 1e-6;
  std::uint64_t max_steps = 50'000'000;
  SolverOptions solver;
  // Step-doubling estimator (one h step vs two h/2 steps, difference scaled
  // by 1/(2^p - 1)); the fallback when a tableau lacks embedded weights.
  bool use_step_doubling = false;
  bool record_trace = true;
};

// Step-size update factor: clamp(0.9 * e^(-1/(min(p, p_hat)+1)), 0.2, 5.0)
// with e floored at 1e-10.
double controller_factor(double e, int p, int p_hat);

// Fixed steps of size h, the final step shortened to land on tF exactly.
IntegrationResult fixed_drive(const OdeProblem& p, const MethodTableau& t,
                              double h, const SolverOptions& opt = {},
                              bool record_trace = true);

// Accept when weighted_error_norm(estimate, y_n, y_proposed) <= 1; rejected
// or failed steps halve-or-shrink h; 20 consecutive rejections fail the run.
IntegrationResult adaptive_drive(const OdeProblem& p, const MethodTableau& t,
                                 const IntegrationConfig& cfg);

}  // namespace rkbench
