#include <algorithm>
#include <cmath>

#include "rkbench/integrators.hpp"
#include "rkbench/norms.hpp"

namespace rkbench {

namespace {

double resolved_newton_tol(const SolverOptions& opt, double abs_tol,
                           double rel_tol) {
  if (!std::isnan(opt.newton_tol)) return opt.newton_tol;
  return 0.1 * std::min(abs_tol, rel_tol);
}

// Fixed-step studies run the inner solvers at reference quality.
constexpr double kFixedModeNewtonTol = 1e-13;
// Residual a Rosenbrock stage solve must reach for a stagnated or
// iteration-capped GMRES result to count as solved.
constexpr double kStageLinearSlack = 1e-6;

void check_finite_state(const Vec& y, const char* what) {
  if (!y.allFinite()) throw NonFiniteError(std::string(what) + ": non-finite state");
}

// Index of an earlier identical coefficient row, or -1. Methods that repeat a
// row (ROS4 stages 3/4) share the stage evaluation.
int matching_earlier_row(const Mat& a, int i) {
  for (int j = 0; j < i; ++j)
    if (a.row(i) == a.row(j)) return j;
  return -1;
}

StepOutcome fail_outcome(WorkCounters work, const std::string& msg) {
  StepOutcome o;
  o.work = work;
  o.ok = false;
  o.message = msg;
  return o;
}

}  // namespace

StepOutcome erk_step(const OdeProblem& p, const MethodTableau& t, const Vec& y,
                     double h) {
  StepOutcome o;
  try {
    const int n = p.dimension;
    const int s = t.s;
    Mat K(n, s);
    Vec Y(n), f(n);
    for (int i = 0; i < s; ++i) {
      Y = y;
      for (int j = 0; j < i; ++j)
        if (t.a(i, j) != 0.0) Y += (h * t.a(i, j)) * K.col(j);
      check_finite_state(Y, "erk stage argument");
      eval_rhs(p, Y, f, o.work);
      K.col(i) = f;
    }
    o.y_proposed = y;
    for (int i = 0; i < s; ++i)
      if (t.b[i] != 0.0) o.y_proposed += (h * t.b[i]) * K.col(i);
    check_finite_state(o.y_proposed, "erk update");
    if (t.has_b_hat()) o.error_estimate = h * (K * (t.b - t.b_hat));
    o.ok = true;
  } catch (const NonFiniteError& e) {
    return fail_outcome(o.work, e.what());
  }
  return o;
}

StepOutcome sdirk_step(const OdeProblem& p, const MethodTableau& t,
                       const Vec& y, double h, const SolverOptions& opt) {
  StepOutcome o;
  const double newton_tol =
      std::isnan(opt.newton_tol) ? kFixedModeNewtonTol : opt.newton_tol;
  try {
    const int n = p.dimension;
    const int s = t.s;
    Mat K(n, s);
    Vec xi(n);
    for (int i = 0; i < s; ++i) {
      xi = y;
      for (int j = 0; j < i; ++j)
        if (t.a(i, j) != 0.0) xi += (h * t.a(i, j)) * K.col(j);
      check_finite_state(xi, "sdirk stage argument");
      NewtonResult nr = newton_solve_stage(
          p, xi, h, t.gamma, opt.jvp_mode, newton_tol, opt.newton_max,
          opt.linear_rel_tol, o.work, opt.frozen_jacobian ? &y : nullptr,
          opt.gmres_restart, opt.gmres_max_iters);
      if (!nr.converged)
        return fail_outcome(o.work, "stage " + std::to_string(i + 1) + ": " + nr.message);
      K.col(i) = nr.k;
    }
    o.y_proposed = y;
    for (int i = 0; i < s; ++i)
      if (t.b[i] != 0.0) o.y_proposed += (h * t.b[i]) * K.col(i);
    check_finite_state(o.y_proposed, "sdirk update");
    if (t.has_b_hat()) o.error_estimate = h * (K * (t.b - t.b_hat));
    o.ok = true;
  } catch (const NonFiniteError& e) {
    return fail_outcome(o.work, e.what());
  }
  return o;
}

StepOutcome ros_step(const OdeProblem& p, const MethodTableau& t, const Vec& y,
                     double h, const SolverOptions& opt) {
  StepOutcome o;
  try {
    const int n = p.dimension;
    const int s = t.s;
    Vec f1(n);
    eval_rhs(p, y, f1, o.work);
    // One Jacobian-vector operator frozen at y_n for the whole step.
    LinearOperator jvp = (opt.jvp_mode == JvpMode::Exact && p.has_exact_jvp())
                             ? make_exact_jvp_operator(p, y, o.work)
                             : make_fd_jvp_operator(p, y, f1, o.work);
    LinearOperator shifted = make_shifted_operator(jvp, h, t.gamma);

    Mat K(n, s), F(n, s);
    Vec Y(n), w(n), rhs(n), jw(n);
    for (int i = 0; i < s; ++i) {
      const int dup = matching_earlier_row(t.a, i);
      if (dup >= 0) {
        F.col(i) = F.col(dup);
      } else if (i == 0) {
        F.col(0) = f1;
      } else {
        Y = y;
        for (int j = 0; j < i; ++j)
          if (t.a(i, j) != 0.0) Y += t.a(i, j) * K.col(j);
        check_finite_state(Y, "ros stage argument");
        Vec fi(n);
        eval_rhs(p, Y, fi, o.work);
        F.col(i) = fi;
      }
      rhs = h * F.col(i);
      w.setZero();
      bool any = false;
      for (int j = 0; j < i; ++j) {
        if (t.Gamma(i, j) != 0.0) {
          w += t.Gamma(i, j) * K.col(j);
          any = true;
        }
      }
      if (any) {
        jvp.apply(w, jw);
        rhs += h * jw;
      }
      GmresResult gm =
          gmres_solve(shifted, rhs, Vec::Zero(n), opt.stage_linear_rel_tol,
                      opt.gmres_max_iters, opt.gmres_restart, &o.work);
      // FD Jacobian products bound the attainable residual near sqrt(eps),
      // below the default stage tolerance; a solve that stalled or ran out of
      // iterations after reaching stage accuracy is still usable.
      if (!gm.converged && gm.rel_residual > kStageLinearSlack)
        return fail_outcome(o.work,
                            "stage " + std::to_string(i + 1) + " linear solve: " + gm.message);
      K.col(i) = gm.x;
    }
    o.y_proposed = y;
    for (int i = 0; i < s; ++i)
      if (t.b[i] != 0.0) o.y_proposed += t.b[i] * K.col(i);
    check_finite_state(o.y_proposed, "ros update");
    if (t.has_b_hat()) o.error_estimate = K * (t.b - t.b_hat);
    o.ok = true;
  } catch (const NonFiniteError& e) {
    return fail_outcome(o.work, e.what());
  }
  return o;
}

StepOutcome rok_step(const OdeProblem& p, const MethodTableau& t, const Vec& y,
                     double h, const SolverOptions& opt) {
  StepOutcome o;
  try {
    const int n = p.dimension;
    const int s = t.s;
    Vec fy(n);
    eval_rhs(p, y, fy, o.work);

    Mat K(n, s), F(n, s);
    Vec Y(n);
    auto stage_rhs = [&](int i) {
      const int dup = matching_earlier_row(t.a, i);
      if (dup >= 0) {
        F.col(i) = F.col(dup);
      } else if (i == 0) {
        F.col(0) = fy;  // the Arnoldi seed doubles as stage 1's evaluation
      } else {
        Y = y;
        for (int j = 0; j < i; ++j)
          if (t.a(i, j) != 0.0) Y += t.a(i, j) * K.col(j);
        check_finite_state(Y, "rok stage argument");
        Vec fi(n);
        eval_rhs(p, Y, fi, o.work);
        F.col(i) = fi;
      }
    };

    const int M = std::min(opt.krylov_dim, n);
    if (M <= 0 || fy.norm() == 0.0) {
      // M = 0 degenerates to the explicit scheme with nodes alpha, weights b
      // (and f(y_n) = 0 is a fixed point either way).
      for (int i = 0; i < s; ++i) {
        stage_rhs(i);
        K.col(i) = h * F.col(i);
      }
    } else {
      LinearOperator jvp = (opt.jvp_mode == JvpMode::Exact && p.has_exact_jvp())
                               ? make_exact_jvp_operator(p, y, o.work)
                               : make_fd_jvp_operator(p, y, fy, o.work);
      KrylovBasis kb = build_arnoldi(jvp, fy, M);
      const int m = kb.m_eff;
      const Mat lhs = Mat::Identity(m, m) - (h * t.gamma) * kb.H;
      Eigen::FullPivLU<Mat> lu(lhs);
      if (!lu.isInvertible())
        return fail_outcome(o.work, "singular reduced stage matrix I - h*gamma*H");
      Mat lambda(m, s);
      Vec phi(m), wred(m), red_rhs(m);
      for (int i = 0; i < s; ++i) {
        stage_rhs(i);
        phi.noalias() = kb.V.transpose() * F.col(i);
        wred.setZero();
        for (int j = 0; j < i; ++j)
          if (t.Gamma(i, j) != 0.0) wred += t.Gamma(i, j) * lambda.col(j);
        red_rhs = h * phi + h * (kb.H * wred);
        lambda.col(i) = lu.solve(red_rhs);
        K.col(i) = kb.V * lambda.col(i) + h * (F.col(i) - kb.V * phi);
      }
    }
    o.y_proposed = y;
    for (int i = 0; i < s; ++i)
      if (t.b[i] != 0.0) o.y_proposed += t.b[i] * K.col(i);
    check_finite_state(o.y_proposed, "rok update");
    if (t.has_b_hat()) o.error_estimate = K * (t.b - t.b_hat);
    o.ok = true;
  } catch (const NonFiniteError& e) {
    return fail_outcome(o.work, e.what());
  }
  return o;
}

StepOutcome take_step(const OdeProblem& p, const MethodTableau& t, const Vec& y,
                      double h, const SolverOptions& opt) {
  switch (t.family) {
    case Family::ERK: return erk_step(p, t, y, h);
    case Family::SDIRK: return sdirk_step(p, t, y, h, opt);
    case Family::ROS:
    case Family::ROW: return ros_step(p, t, y, h, opt);
    case Family::ROK: return rok_step(p, t, y, h, opt);
  }
  throw std::logic_error("take_step: unknown family");
}

double controller_factor(double e, int p, int p_hat) {
  const double e_eff = std::max(e, 1e-10);
  const double k = std::min(p, p_hat) + 1;
  return std::clamp(0.9 * std::pow(e_eff, -1.0 / k), 0.2, 5.0);
}

IntegrationResult fixed_drive(const OdeProblem& p, const MethodTableau& t,
                              double h, const SolverOptions& opt_in,
                              bool record_trace) {
  p.validate();
  if (!(h > 0.0)) throw std::invalid_argument("fixed_drive: h must be positive");
  SolverOptions opt = opt_in;
  if (std::isnan(opt.newton_tol)) opt.newton_tol = kFixedModeNewtonTol;

  IntegrationResult res;
  res.y = p.y0;
  res.t = p.t0;
  const double span = p.tF - p.t0;
  const double end_tol = 1e-12 * span;
  std::uint64_t i = 0;
  while (res.t < p.tF - end_tol) {
    double h_step = h;
    bool last = false;
    if (res.t + h >= p.tF - end_tol) {
      h_step = p.tF - res.t;
      last = true;
    }
    StepOutcome out = take_step(p, t, res.y, h_step, opt);
    res.work += out.work;
    if (record_trace) res.step_trace.push_back({res.t, h_step, out.ok});
    if (!out.ok) {
      res.status = RunStatus::StepFailure;
      res.message = out.message;
      return res;
    }
    res.y = out.y_proposed;
    ++i;
    res.t = last ? p.tF : p.t0 + static_cast<double>(i) * h;
    res.accepted_steps += 1;
  }
  return res;
}

namespace {

StepOutcome doubling_step(const OdeProblem& p, const MethodTableau& t,
                          const Vec& y, double h, const SolverOptions& opt) {
  StepOutcome full = take_step(p, t, y, h, opt);
  if (!full.ok) return full;
  StepOutcome halfa = take_step(p, t, y, h / 2, opt);
  halfa.work += full.work;
  if (!halfa.ok) return halfa;
  StepOutcome halfb = take_step(p, t, halfa.y_proposed, h / 2, opt);
  halfb.work += halfa.work;
  if (!halfb.ok) return halfb;
  halfb.error_estimate =
      (halfb.y_proposed - full.y_proposed) / (std::pow(2.0, t.p) - 1.0);
  return halfb;
}

}  // namespace

IntegrationResult adaptive_drive(const OdeProblem& p, const MethodTableau& t,
                                 const IntegrationConfig& cfg) {
  p.validate();
  if (!(cfg.abs_tol > 0.0) || cfg.rel_tol < 0.0)
    throw std::invalid_argument("adaptive_drive: need abs_tol > 0 and rel_tol >= 0");
  const bool doubling = cfg.use_step_doubling || !t.has_b_hat();
  const int p_hat_eff = doubling ? t.p : t.p_hat;
  SolverOptions opt = cfg.solver;
  opt.newton_tol = resolved_newton_tol(cfg.solver, cfg.abs_tol, cfg.rel_tol);

  IntegrationResult res;
  res.y = p.y0;
  res.t = p.t0;
  const double span = p.tF - p.t0;
  const double end_tol = 1e-12 * span;
  double h = cfg.h0 > 0.0 ? std::min(cfg.h0, span) : 1e-3 * span;
  int consecutive_rejections = 0;

  while (res.t < p.tF - end_tol) {
    if (res.accepted_steps + res.rejected_steps >= cfg.max_steps) {
      res.status = RunStatus::MaxSteps;
      res.message = "max_steps reached at t = " + std::to_string(res.t);
      return res;
    }
    const bool last = res.t + h >= p.tF - end_tol;
    const double h_try = last ? p.tF - res.t : h;
    StepOutcome out = doubling ? doubling_step(p, t, res.y, h_try, opt)
                               : take_step(p, t, res.y, h_try, opt);
    res.work += out.work;
    if (!out.ok) {
      res.rejected_steps += 1;
      if (cfg.record_trace) res.step_trace.push_back({res.t, h_try, false});
      if (++consecutive_rejections >= 20) {
        res.status = RunStatus::RejectionLimit;
        res.message = "20 consecutive rejections; last failure: " + out.message;
        return res;
      }
      h = h_try / 2;
      continue;
    }
    const double e = weighted_error_norm(out.error_estimate, res.y,
                                         out.y_proposed, cfg.abs_tol, cfg.rel_tol);
    if (e <= 1.0) {
      res.y = out.y_proposed;
      res.t = last ? p.tF : res.t + h_try;
      res.accepted_steps += 1;
      consecutive_rejections = 0;
      if (cfg.record_trace) res.step_trace.push_back({res.t - h_try, h_try, true});
    } else {
      res.rejected_steps += 1;
      if (cfg.record_trace) res.step_trace.push_back({res.t, h_try, false});
      if (++consecutive_rejections >= 20) {
        res.status = RunStatus::RejectionLimit;
        res.message = "20 consecutive rejections (error test)";
        return res;
      }
    }
    h = h_try * controller_factor(e, t.p, p_hat_eff);
  }
  return res;
}

}  // namespace rkbench
