#pragma once

#include <functional>
#include <string>

#include "rkbench/problem.hpp"
#include "rkbench/types.hpp"

namespace rkbench {

enum class OpKind { ExactJvp, FdJvp, Shifted, DenseBacked };

struct LinearOperator {
  int dimension = 0;
  OpKind kind = OpKind::DenseBacked;
  std::function<void(const Vec& v, Vec& out)> apply;

  Vec operator()(const Vec& v) const {
    Vec out(dimension);
    apply(v, out);
    return out;
  }
};

// Finite-difference directional derivative (f(y + eps v) - f(y)) / eps with
// eps = sqrt(machine_epsilon) * (1 + ||y||_2) / ||v||_2. Each application
// costs one rhs call, booked as one jvp_eval. A zero direction returns the
// exact zero vector without evaluating (and without booking work).
// eps_override > 0 replaces the default eps (used by truncation-order tests).
Vec fd_jvp(const OdeProblem& p, const Vec& y, const Vec& f_y, const Vec& v,
           WorkCounters& work, double eps_override = 0.0);

// Jacobian-vector operators at the linearization point y. The FD variant
// needs f(y) precomputed; both count one jvp_eval per application. The
// returned operators copy y (and f_y) and hold a pointer to work, which must
// outlive them.
LinearOperator make_fd_jvp_operator(const OdeProblem& p, const Vec& y,
                                    const Vec& f_y, WorkCounters& work);
LinearOperator make_exact_jvp_operator(const OdeProblem& p, const Vec& y,
                                       WorkCounters& work);
LinearOperator make_dense_operator(const Mat& A);
// v -> v - h*gamma*(inner v); acts as the identity when h = 0.
LinearOperator make_shifted_operator(const LinearOperator& inner, double h,
                                     double gamma);

struct KrylovBasis {
  Mat V;              // N x m_eff, orthonormal columns
  Mat H;              // m_eff x m_eff upper Hessenberg
  int m_eff = 0;      // effective dimension after breakdown
  bool breakdown = false;
};

// Modified Gram-Schmidt Arnoldi with one unconditional reorthogonalization
// pass. V[:,0] = r0/||r0||. Happy breakdown (next subdiagonal element below
// 1e-12 * max|H| so far) truncates to m_eff < M and sets the flag. Throws
// std::invalid_argument when r0 = 0 or M > N.
KrylovBasis build_arnoldi(const LinearOperator& op, const Vec& r0, int M);

struct GmresResult {
  Vec x;
  std::uint64_t iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
  std::string message;
};

// Restarted GMRES. Success means ||b - op(x)||_2 <= rel_tol * ||b||_2.
// Stagnation (relative residual reduction < 1e-14 across a full restart
// cycle) and the max_iters cap both return the best iterate with
// converged = false. b = 0 returns x = x0 immediately. Iterations are added
// to work.linear_iters when work is supplied.
GmresResult gmres_solve(const LinearOperator& op, const Vec& b, const Vec& x0,
                        double rel_tol, int max_iters = 100, int restart = 30,
                        WorkCounters* work = nullptr);

enum class JvpMode { FD, Exact };

struct NewtonResult {
  Vec k;
  bool converged = false;
  int iterations = 0;  // number of Newton corrections applied
  double final_residual = 0.0;
  std::string message;
};

// Solves the stage equation k = f(xi + h*gamma*k) by Newton iteration with
// GMRES inner solves of (I - h*gamma*J) dk = -F(k), F(k) = k - f(xi+h*gamma*k).
// Initial guess k0 = f(xi). The residual norm is the RMS norm of F. J is the
// JVP at the current stage argument (true Newton); frozen_at, when non-null,
// pins the linearization point for the whole solve instead.
NewtonResult newton_solve_stage(const OdeProblem& p, const Vec& xi, double h,
                                double gamma, JvpMode jvp_mode,
                                double newton_tol, int newton_max,
                                double linear_rel_tol, WorkCounters& work,
                                const Vec* frozen_at = nullptr,
                                int gmres_restart = 30,
                                int gmres_max_iters = 100);

}  // namespace rkbench
