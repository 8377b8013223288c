#include <cmath>
#include <limits>
#include <sstream>

#include "rkbench/matfree.hpp"

namespace rkbench {

Vec fd_jvp(const OdeProblem& p, const Vec& y, const Vec& f_y, const Vec& v,
           WorkCounters& work, double eps_override) {
  const double vnorm = v.norm();
  if (vnorm == 0.0) return Vec::Zero(v.size());
  const double eps =
      eps_override > 0.0
          ? eps_override
          : std::sqrt(std::numeric_limits<double>::epsilon()) * (1.0 + y.norm()) / vnorm;
  if (!std::isfinite(eps))
    throw NonFiniteError("fd_jvp: non-finite perturbation size");
  Vec f_pert(p.dimension);
  p.rhs(y + eps * v, f_pert);
  work.jvp_evals += 1;
  if (!f_pert.allFinite())
    throw NonFiniteError("fd_jvp: non-finite rhs at the perturbed state");
  return (f_pert - f_y) / eps;
}

LinearOperator make_fd_jvp_operator(const OdeProblem& p, const Vec& y,
                                    const Vec& f_y, WorkCounters& work) {
  LinearOperator op;
  op.dimension = p.dimension;
  op.kind = OpKind::FdJvp;
  op.apply = [&p, y, f_y, &work](const Vec& v, Vec& out) {
    out = fd_jvp(p, y, f_y, v, work);
  };
  return op;
}

LinearOperator make_exact_jvp_operator(const OdeProblem& p, const Vec& y,
                                       WorkCounters& work) {
  if (!p.has_exact_jvp())
    throw std::invalid_argument("problem provides no exact_jvp callback");
  LinearOperator op;
  op.dimension = p.dimension;
  op.kind = OpKind::ExactJvp;
  op.apply = [&p, y, &work](const Vec& v, Vec& out) {
    out.resize(v.size());
    p.exact_jvp(y, v, out);
    work.jvp_evals += 1;
    if (!out.allFinite()) throw NonFiniteError("exact_jvp: non-finite output");
  };
  return op;
}

LinearOperator make_dense_operator(const Mat& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("dense operator requires a square matrix");
  LinearOperator op;
  op.dimension = static_cast<int>(A.rows());
  op.kind = OpKind::DenseBacked;
  op.apply = [A](const Vec& v, Vec& out) { out = A * v; };
  return op;
}

LinearOperator make_shifted_operator(const LinearOperator& inner, double h,
                                     double gamma) {
  LinearOperator op;
  op.dimension = inner.dimension;
  op.kind = OpKind::Shifted;
  op.apply = [inner, h, gamma](const Vec& v, Vec& out) {
    if (h == 0.0) {
      out = v;
      return;
    }
    Vec jv(v.size());
    inner.apply(v, jv);
    out = v - (h * gamma) * jv;
  };
  return op;
}

KrylovBasis build_arnoldi(const LinearOperator& op, const Vec& r0, int M) {
  const int n = static_cast<int>(r0.size());
  const double r0norm = r0.norm();
  if (r0norm == 0.0)
    throw std::invalid_argument("build_arnoldi: zero seed vector");
  if (M < 1 || M > n)
    throw std::invalid_argument("build_arnoldi: need 1 <= M <= N");

  KrylovBasis kb;
  Mat V(n, M);
  Mat H = Mat::Zero(M, M);
  V.col(0) = r0 / r0norm;
  double hmax = 0.0;
  int m_eff = M;
  bool breakdown = false;
  Vec w(n);
  for (int j = 0; j < M; ++j) {
    op.apply(V.col(j), w);
    for (int i = 0; i <= j; ++i) {
      const double hij = V.col(i).dot(w);
      w -= hij * V.col(i);
      H(i, j) = hij;
    }
    // One unconditional reorthogonalization pass keeps the basis orthonormal
    // to ~1e-14 even for strongly nonnormal operators.
    for (int i = 0; i <= j; ++i) {
      const double corr = V.col(i).dot(w);
      w -= corr * V.col(i);
      H(i, j) += corr;
    }
    for (int i = 0; i <= j; ++i) hmax = std::max(hmax, std::abs(H(i, j)));
    const double hnext = w.norm();
    if (j + 1 < M) {
      if (hnext < 1e-12 * hmax) {
        m_eff = j + 1;
        breakdown = true;
        break;
      }
      H(j + 1, j) = hnext;
      hmax = std::max(hmax, hnext);
      V.col(j + 1) = w / hnext;
    }
  }
  kb.V = V.leftCols(m_eff);
  kb.H = H.topLeftCorner(m_eff, m_eff);
  kb.m_eff = m_eff;
  kb.breakdown = breakdown;
  return kb;
}

GmresResult gmres_solve(const LinearOperator& op, const Vec& b, const Vec& x0,
                        double rel_tol, int max_iters, int restart,
                        WorkCounters* work) {
  const int n = static_cast<int>(b.size());
  GmresResult res;
  res.x = x0.size() == n ? x0 : Vec::Zero(n).eval();
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    res.converged = true;
    res.rel_residual = 0.0;
    res.message = "zero right-hand side";
    return res;
  }

  Vec best_x = res.x;
  double best_rel = std::numeric_limits<double>::infinity();
  std::uint64_t iters = 0;
  double prev_cycle_rel = std::numeric_limits<double>::infinity();
  const int m_max = std::min(restart, n);

  Vec r(n), w(n);
  Mat V(n, m_max + 1);
  Mat Hh = Mat::Zero(m_max + 1, m_max);
  Vec cs(m_max), sn(m_max), g(m_max + 1);

  auto finish = [&](bool converged, const std::string& msg) {
    res.converged = converged;
    res.message = msg;
    res.x = best_x;
    res.rel_residual = best_rel;
    res.iterations = iters;
    if (work) work->linear_iters += iters;
    return res;
  };

  while (true) {
    op.apply(res.x, w);
    r = b - w;
    const double beta = r.norm();
    const double rel = beta / bnorm;
    if (rel < best_rel) {
      best_rel = rel;
      best_x = res.x;
    }
    if (rel <= rel_tol) return finish(true, "converged");
    if (std::isfinite(prev_cycle_rel) &&
        prev_cycle_rel - rel < 1e-14 * prev_cycle_rel)
      return finish(false, "stagnation");
    prev_cycle_rel = rel;
    if (iters >= static_cast<std::uint64_t>(max_iters))
      return finish(false, "max iterations reached");

    V.col(0) = r / beta;
    g.setZero();
    g[0] = beta;
    int j = 0;
    bool happy = false;
    for (; j < m_max && iters < static_cast<std::uint64_t>(max_iters); ++j) {
      op.apply(V.col(j), w);
      ++iters;
      for (int i = 0; i <= j; ++i) {
        Hh(i, j) = V.col(i).dot(w);
        w -= Hh(i, j) * V.col(i);
      }
      for (int i = 0; i <= j; ++i) {
        const double corr = V.col(i).dot(w);
        w -= corr * V.col(i);
        Hh(i, j) += corr;
      }
      Hh(j + 1, j) = w.norm();
      if (Hh(j + 1, j) > 0.0) V.col(j + 1) = w / Hh(j + 1, j);
      // Apply accumulated Givens rotations, then form the new one.
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * Hh(i, j) + sn[i] * Hh(i + 1, j);
        Hh(i + 1, j) = -sn[i] * Hh(i, j) + cs[i] * Hh(i + 1, j);
        Hh(i, j) = t;
      }
      const double denom = std::hypot(Hh(j, j), Hh(j + 1, j));
      if (denom == 0.0) {
        happy = true;
        ++j;
        break;
      }
      cs[j] = Hh(j, j) / denom;
      sn[j] = Hh(j + 1, j) / denom;
      Hh(j, j) = denom;
      Hh(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      if (std::abs(g[j + 1]) / bnorm <= rel_tol || Hh(j, j) == 0.0) {
        ++j;
        break;
      }
      if (happy) break;
    }
    if (j > 0) {
      // Back-substitute R y = g and update x.
      Vec yv(j);
      for (int i = j - 1; i >= 0; --i) {
        double t = g[i];
        for (int k = i + 1; k < j; ++k) t -= Hh(i, k) * yv[k];
        yv[i] = t / Hh(i, i);
      }
      res.x += V.leftCols(j) * yv;
    }
    if (!res.x.allFinite())
      return finish(false, "non-finite iterate");
  }
}

NewtonResult newton_solve_stage(const OdeProblem& p, const Vec& xi, double h,
                                double gamma, JvpMode jvp_mode,
                                double newton_tol, int newton_max,
                                double linear_rel_tol, WorkCounters& work,
                                const Vec* frozen_at, int gmres_restart,
                                int gmres_max_iters) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("newton_solve_stage: gamma must be positive");
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(p.dimension));
  NewtonResult nr;
  Vec k(p.dimension), fu(p.dimension), u(p.dimension), F(p.dimension);
  eval_rhs(p, xi, k, work);  // k0 = f(xi)
  double prev_res = std::numeric_limits<double>::infinity();
  int growth_streak = 0;
  for (int it = 0; it <= newton_max; ++it) {
    u = xi + (h * gamma) * k;
    eval_rhs(p, u, fu, work);
    F = k - fu;
    const double rnorm = F.norm() * inv_sqrt_n;
    if (rnorm <= newton_tol) {
      nr.k = k;
      nr.converged = true;
      nr.iterations = it;
      nr.final_residual = rnorm;
      return nr;
    }
    if (rnorm >= prev_res) {
      if (++growth_streak >= 2) {
        nr.k = k;
        nr.iterations = it;
        nr.final_residual = rnorm;
        nr.message = "Newton divergence: residual grew twice in a row";
        return nr;
      }
    } else {
      growth_streak = 0;
    }
    prev_res = rnorm;
    if (it == newton_max) {
      nr.k = k;
      nr.iterations = it;
      nr.final_residual = rnorm;
      nr.message = "Newton iteration cap exceeded";
      return nr;
    }
    const Vec& lin_point = frozen_at ? *frozen_at : u;
    LinearOperator jvp_op;
    Vec f_lin;
    if (jvp_mode == JvpMode::Exact && p.has_exact_jvp()) {
      jvp_op = make_exact_jvp_operator(p, lin_point, work);
    } else if (frozen_at) {
      eval_rhs(p, lin_point, f_lin, work);
      jvp_op = make_fd_jvp_operator(p, lin_point, f_lin, work);
    } else {
      f_lin = fu;  // rhs at the current stage argument, already evaluated
      jvp_op = make_fd_jvp_operator(p, lin_point, f_lin, work);
    }
    LinearOperator shifted = make_shifted_operator(jvp_op, h, gamma);
    GmresResult gm = gmres_solve(shifted, -F, Vec::Zero(p.dimension),
                                 linear_rel_tol, gmres_max_iters, gmres_restart,
                                 &work);
    work.newton_iters += 1;
    if (!gm.converged) {
      nr.k = k;
      nr.iterations = it + 1;
      nr.final_residual = rnorm;
      nr.message = "inner linear solve failed: " + gm.message;
      return nr;
    }
    k += gm.x;
  }
  return nr;  // unreachable
}

}  // namespace rkbench
