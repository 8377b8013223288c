#include <cmath>
#include <random>

#include "doctest.h"
#include "rkbench/matfree.hpp"
#include "rkbench/problems.hpp"

using namespace rkbench;

namespace {

OdeProblem linear_problem(const Mat& A) {
  OdeProblem p;
  p.dimension = static_cast<int>(A.rows());
  p.rhs = [A](const Vec& y, Vec& f) { f = A * y; };
  p.exact_jvp = [A](const Vec&, const Vec& v, Vec& out) { out = A * v; };
  p.dense_jacobian = [A](const Vec&) { return A; };
  p.y0 = Vec::Ones(A.rows());
  p.tF = 1.0;
  p.name = "linear";
  return p;
}

OdeProblem quadratic_problem(int n) {
  OdeProblem p;
  p.dimension = n;
  p.rhs = [](const Vec& y, Vec& f) { f = y.array().square(); };
  p.y0 = Vec::Ones(n);
  p.tF = 1.0;
  p.name = "quadratic";
  return p;
}

}  // namespace

TEST_CASE("fd_jvp is exact on linear systems") {
  Mat A(3, 3);
  A << 2.0, -1.0, 0.5, 0.0, 1.5, -2.0, 1.0, 0.25, -0.75;
  OdeProblem p = linear_problem(A);
  WorkCounters w;
  Vec y(3), v(3), f(3);
  y << 0.3, -1.2, 2.0;
  v << 1.0, 2.0, -0.5;
  p.rhs(y, f);
  const Vec got = fd_jvp(p, y, f, v, w);
  const Vec want = A * v;
  CHECK((got - want).lpNorm<Eigen::Infinity>() <= 1e-7 * want.norm());
  CHECK(w.jvp_evals == 1);
}

TEST_CASE("fd_jvp short-circuits a zero direction") {
  OdeProblem p = quadratic_problem(4);
  WorkCounters w;
  Vec f(4);
  p.rhs(p.y0, f);
  const std::uint64_t rhs_before = w.rhs_evals;
  const Vec got = fd_jvp(p, p.y0, f, Vec::Zero(4), w);
  CHECK(got.norm() == 0.0);
  CHECK(w.rhs_evals == rhs_before);  // no rhs call spent
  CHECK(w.jvp_evals == 0);           // and no work booked
}

TEST_CASE("fd_jvp truncation error is exactly eps * (v o v) on f = y^2") {
  // f(y+eps v) - f(y) = 2 eps y o v + eps^2 v o v, so the one-sided quotient
  // misses the true product 2 y o v by exactly eps * v o v.
  OdeProblem p = quadratic_problem(3);
  Vec y(3), v(3), f(3);
  y << 1.0, 2.0, 3.0;
  v << 1.0, -1.0, 2.0;
  p.rhs(y, f);
  WorkCounters w;
  for (double eps : {1e-3, 1e-5}) {
    const Vec got = fd_jvp(p, y, f, v, w, eps);
    const Vec truth = 2.0 * y.cwiseProduct(v).eval();
    const Vec defect = got - truth;
    const Vec predicted = eps * v.cwiseProduct(v).eval();
    CHECK((defect - predicted).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
}

TEST_CASE("fd operator matches the analytic product on Lorenz-96") {
  OdeProblem p = make_lorenz96(40, 8.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  WorkCounters w;
  for (int trial = 0; trial < 20; ++trial) {
    Vec y(40), v(40), f(40);
    for (int i = 0; i < 40; ++i) {
      y[i] = 8.0 + dist(rng);
      v[i] = dist(rng);
    }
    p.rhs(y, f);
    const Vec fd = fd_jvp(p, y, f, v, w);
    Vec exact(40);
    p.exact_jvp(y, v, exact);
    CHECK((fd - exact).lpNorm<Eigen::Infinity>() <= 1e-6);
  }
}

TEST_CASE("shifted operator applies v - h*gamma*J*v and degenerates at h = 0") {
  Mat A(2, 2);
  A << 1.0, 2.0, 3.0, 4.0;
  const LinearOperator dense = make_dense_operator(A);
  const LinearOperator shifted = make_shifted_operator(dense, 0.1, 0.5);
  Vec v(2);
  v << 1.0, -1.0;
  const Vec want = v - 0.05 * (A * v);
  CHECK((shifted(v) - want).norm() <= 1e-15);
  const LinearOperator ident = make_shifted_operator(dense, 0.0, 0.5);
  CHECK((ident(v) - v).norm() == 0.0);
}

TEST_CASE("arnoldi on the identity breaks down after one vector") {
  const LinearOperator op = make_dense_operator(Mat::Identity(5, 5));
  Vec r0(5);
  r0 << 1.0, 2.0, 0.0, -1.0, 0.5;
  const KrylovBasis kb = build_arnoldi(op, r0, 4);
  CHECK(kb.breakdown);
  CHECK(kb.m_eff == 1);
  CHECK(kb.H(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(kb.V.col(0).norm() - 1.0) <= 1e-14);
}

TEST_CASE("arnoldi spans the full space of a diagonal operator") {
  Mat A = Vec::LinSpaced(3, 1.0, 3.0).asDiagonal();
  const LinearOperator op = make_dense_operator(A);
  const KrylovBasis kb = build_arnoldi(op, Vec::Ones(3), 3);
  CHECK(kb.m_eff == 3);
  CHECK((kb.V.transpose() * kb.V - Mat::Identity(3, 3)).lpNorm<Eigen::Infinity>() <= 1e-13);
  // Full dimension reached: A V = V H exactly (invariant subspace).
  CHECK((A * kb.V - kb.V * kb.H).lpNorm<Eigen::Infinity>() <= 1e-12);
  // Ritz values of the full-space basis are the eigenvalues.
  const Eigen::VectorXcd eig = Eigen::EigenSolver<Mat>(kb.H).eigenvalues();
  Vec re = eig.real();
  std::sort(re.data(), re.data() + re.size());
  for (int i = 0; i < 3; ++i) CHECK(re[i] == doctest::Approx(i + 1.0).epsilon(1e-12));
}

TEST_CASE("arnoldi recovers well-separated eigenvalues") {
  Vec d(3);
  d << -1.0, -10.0, -100.0;
  const LinearOperator op = make_dense_operator(Mat(d.asDiagonal()));
  const KrylovBasis kb = build_arnoldi(op, Vec::Ones(3), 3);
  REQUIRE(kb.m_eff == 3);
  Vec re = Eigen::EigenSolver<Mat>(kb.H).eigenvalues().real();
  std::sort(re.data(), re.data() + re.size());
  CHECK(re[0] == doctest::Approx(-100.0).epsilon(1e-8));
  CHECK(re[1] == doctest::Approx(-10.0).epsilon(1e-8));
  CHECK(re[2] == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("arnoldi invariants hold over random Lorenz-96 seeds") {
  OdeProblem p = make_lorenz96(40, 8.0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> dist(0.0, 1.0);
  WorkCounters w;
  for (int trial = 0; trial < 25; ++trial) {
    Vec y(40), r0(40);
    for (int i = 0; i < 40; ++i) {
      y[i] = 8.0 + dist(rng);
      r0[i] = dist(rng);
    }
    const LinearOperator op = make_exact_jvp_operator(p, y, w);
    const KrylovBasis kb = build_arnoldi(op, r0, 12);
    REQUIRE(kb.m_eff == 12);
    const Mat gram = kb.V.transpose() * kb.V;
    CHECK((gram - Mat::Identity(12, 12)).lpNorm<Eigen::Infinity>() <= 1e-10);
    // Projection identity H = V^T A V.
    Mat AV(40, 12);
    for (int j = 0; j < 12; ++j) AV.col(j) = op(kb.V.col(j));
    CHECK((kb.V.transpose() * AV - kb.H).lpNorm<Eigen::Infinity>() <= 1e-8);
    // Hessenberg shape.
    for (int i = 2; i < 12; ++i)
      for (int j = 0; j + 1 < i; ++j) CHECK(kb.H(i, j) == 0.0);
  }
}

TEST_CASE("arnoldi rejects bad inputs") {
  const LinearOperator op = make_dense_operator(Mat::Identity(3, 3));
  CHECK_THROWS_AS(build_arnoldi(op, Vec::Zero(3), 2), std::invalid_argument);
  CHECK_THROWS_AS(build_arnoldi(op, Vec::Ones(3), 4), std::invalid_argument);
}

TEST_CASE("gmres solves the identity immediately") {
  const LinearOperator op = make_dense_operator(Mat::Identity(4, 4));
  Vec b(4);
  b << 1.0, -2.0, 3.0, 4.0;
  const GmresResult r = gmres_solve(op, b, Vec::Zero(4), 1e-12);
  CHECK(r.converged);
  CHECK((r.x - b).norm() <= 1e-12);
  CHECK(r.iterations <= 2);
}

TEST_CASE("gmres returns x0 for b = 0") {
  const LinearOperator op = make_dense_operator(2.0 * Mat::Identity(3, 3));
  Vec x0(3);
  x0 << 5.0, 6.0, 7.0;
  const GmresResult r = gmres_solve(op, Vec::Zero(3), x0, 1e-12);
  CHECK(r.converged);
  CHECK((r.x - x0).norm() == 0.0);
  CHECK(r.iterations == 0);
}

TEST_CASE("gmres matches a dense LU solve on shifted Lorenz-96 systems") {
  OdeProblem p = make_lorenz96(40, 8.0);
  std::mt19937_64 rng(23);
  std::normal_distribution<double> dist(0.0, 1.0);
  WorkCounters w;
  for (double h : {1e-2, 1e-1}) {
    Vec y(40), b(40);
    for (int i = 0; i < 40; ++i) {
      y[i] = 8.0 + dist(rng);
      b[i] = dist(rng);
    }
    const double gamma = 0.25;
    const LinearOperator jvp = make_exact_jvp_operator(p, y, w);
    const LinearOperator op = make_shifted_operator(jvp, h, gamma);
    const GmresResult r = gmres_solve(op, b, Vec::Zero(40), 1e-12, 400, 40, &w);
    REQUIRE(r.converged);
    const Mat dense = Mat::Identity(40, 40) - h * gamma * lorenz96_jacobian(y);
    const Vec x_lu = dense.partialPivLu().solve(b);
    CHECK((r.x - x_lu).norm() <= 1e-8 * x_lu.norm());
  }
  CHECK(w.linear_iters > 0);
}

TEST_CASE("gmres reports an honest non-converged result at the iteration cap") {
  OdeProblem p = make_lorenz96(40, 8.0);
  WorkCounters w;
  Vec y = Vec::Constant(40, 8.0);
  y[0] = 9.5;
  const LinearOperator op =
      make_shifted_operator(make_exact_jvp_operator(p, y, w), 1.0, 1.0);
  const GmresResult r = gmres_solve(op, Vec::Ones(40), Vec::Zero(40), 1e-14, 3, 3);
  CHECK(!r.converged);
  CHECK(r.rel_residual > 0.0);
  CHECK(!r.message.empty());
  // The best iterate is still returned.
  CHECK(r.x.size() == 40);
}

TEST_CASE("newton stage solve matches the scalar closed form") {
  // k = lambda (xi + h gamma k)  =>  k = lambda xi / (1 - h gamma lambda).
  const double lambda = -3.0;
  Mat A(1, 1);
  A << lambda;
  OdeProblem p = linear_problem(A);
  Vec xi(1);
  xi << 2.0;
  const double h = 0.1, gamma = 0.25;
  WorkCounters w;
  const NewtonResult r = newton_solve_stage(p, xi, h, gamma, JvpMode::Exact,
                                            1e-14, 20, 1e-12, w);
  REQUIRE(r.converged);
  const double expect = lambda * xi[0] / (1.0 - h * gamma * lambda);
  CHECK(r.k[0] == doctest::Approx(expect).epsilon(1e-12));
  CHECK(w.newton_iters == static_cast<std::uint64_t>(r.iterations));
}

TEST_CASE("newton stage solve at h = 0 is a single evaluation") {
  OdeProblem p = quadratic_problem(3);
  Vec xi(3);
  xi << 1.0, 2.0, 0.5;
  WorkCounters w;
  const NewtonResult r =
      newton_solve_stage(p, xi, 0.0, 0.3, JvpMode::FD, 1e-12, 10, 1e-10, w);
  REQUIRE(r.converged);
  CHECK((r.k - xi.array().square().matrix()).norm() <= 1e-14);
  CHECK(r.iterations == 0);  // initial guess k0 = f(xi) is already exact
}

TEST_CASE("newton stage solve converges in one correction on linear systems") {
  Mat A(4, 4);
  A << -2.0, 1.0, 0.0, 0.0, 1.0, -2.0, 1.0, 0.0, 0.0, 1.0, -2.0, 1.0, 0.0, 0.0,
      1.0, -2.0;
  OdeProblem p = linear_problem(A);
  Vec xi(4);
  xi << 1.0, -1.0, 2.0, 0.5;
  const double h = 0.2, gamma = 0.5;
  WorkCounters w;
  const NewtonResult r = newton_solve_stage(p, xi, h, gamma, JvpMode::Exact,
                                            1e-13, 10, 1e-13, w);
  REQUIRE(r.converged);
  const Mat lhs = Mat::Identity(4, 4) - h * gamma * A;
  const Vec expect = lhs.partialPivLu().solve((A * xi).eval());
  CHECK((r.k - expect).norm() <= 1e-10 * expect.norm());
  CHECK(r.iterations <= 2);
}
