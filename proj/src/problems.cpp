#include <cmath>

#include "rkbench/problems.hpp"

namespace rkbench {

void lorenz96_rhs(const Vec& u, double F, Vec& out) {
  const int n = static_cast<int>(u.size());
  if (n < 4) throw std::invalid_argument("lorenz96_rhs: need N >= 4 (stencil undefined)");
  out.resize(n);
  for (int i = 0; i < n; ++i) {
    const int ip1 = (i + 1) % n;
    const int im1 = (i - 1 + n) % n;
    const int im2 = (i - 2 + n) % n;
    out[i] = (u[ip1] - u[im2]) * u[im1] - u[i] + F;
  }
}

Mat lorenz96_jacobian(const Vec& u) {
  const int n = static_cast<int>(u.size());
  if (n < 4) throw std::invalid_argument("lorenz96_jacobian: need N >= 4");
  Mat J = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int ip1 = (i + 1) % n;
    const int im1 = (i - 1 + n) % n;
    const int im2 = (i - 2 + n) % n;
    J(i, im2) += -u[im1];
    J(i, im1) += u[ip1] - u[im2];
    J(i, i) += -1.0;
    J(i, ip1) += u[im1];
  }
  return J;
}

void lorenz96_jvp(const Vec& u, const Vec& v, Vec& out) {
  const int n = static_cast<int>(u.size());
  if (n < 4) throw std::invalid_argument("lorenz96_jvp: need N >= 4");
  out.resize(n);
  for (int i = 0; i < n; ++i) {
    const int ip1 = (i + 1) % n;
    const int im1 = (i - 1 + n) % n;
    const int im2 = (i - 2 + n) % n;
    out[i] = -u[im1] * v[im2] + (u[ip1] - u[im2]) * v[im1] - v[i] + u[im1] * v[ip1];
  }
}

OdeProblem make_lorenz96(int N, double F) {
  if (N < 4) throw std::invalid_argument("make_lorenz96: need N >= 4");
  OdeProblem p;
  p.dimension = N;
  p.name = "lorenz96";
  p.t0 = 0.0;
  p.tF = 0.5;
  p.y0 = Vec::Constant(N, F);
  p.y0[20 % N] = F + 0.01;
  p.rhs = [F](const Vec& y, Vec& f) { lorenz96_rhs(y, F, f); };
  p.exact_jvp = [](const Vec& y, const Vec& v, Vec& out) { lorenz96_jvp(y, v, out); };
  p.dense_jacobian = [](const Vec& y) { return lorenz96_jacobian(y); };
  return p;
}

void burgers_rhs(const Vec& u, double nu, Vec& out) {
  const int n = static_cast<int>(u.size());
  if (n < 8) throw std::invalid_argument("burgers_rhs: need n >= 8");
  out.resize(n);
  const double dx = 1.0 / n;
  const double idx = 1.0 / dx;
  const double idx2 = nu / (dx * dx);
  for (int i = 0; i < n; ++i) {
    const int ip1 = (i + 1) % n;
    const int im1 = (i - 1 + n) % n;
    const double conv = u[i] > 0.0 ? u[i] * (u[i] - u[im1]) * idx
                                   : u[i] * (u[ip1] - u[i]) * idx;
    out[i] = -conv + idx2 * (u[ip1] - 2.0 * u[i] + u[im1]);
  }
}

Mat burgers_jacobian(const Vec& u, double nu) {
  const int n = static_cast<int>(u.size());
  if (n < 8) throw std::invalid_argument("burgers_jacobian: need n >= 8");
  Mat J = Mat::Zero(n, n);
  const double idx = static_cast<double>(n);
  const double idx2 = nu * static_cast<double>(n) * static_cast<double>(n);
  for (int i = 0; i < n; ++i) {
    const int ip1 = (i + 1) % n;
    const int im1 = (i - 1 + n) % n;
    if (u[i] > 0.0) {
      J(i, i) += -(2.0 * u[i] - u[im1]) * idx;
      J(i, im1) += u[i] * idx;
    } else {
      J(i, i) += -(u[ip1] - 2.0 * u[i]) * idx;
      J(i, ip1) += -u[i] * idx;
    }
    J(i, ip1) += idx2;
    J(i, i) += -2.0 * idx2;
    J(i, im1) += idx2;
  }
  return J;
}

void burgers_jvp(const Vec& u, double nu, const Vec& v, Vec& out) {
  const int n = static_cast<int>(u.size());
  if (n < 8) throw std::invalid_argument("burgers_jvp: need n >= 8");
  out.resize(n);
  const double idx = static_cast<double>(n);
  const double idx2 = nu * static_cast<double>(n) * static_cast<double>(n);
  for (int i = 0; i < n; ++i) {
    const int ip1 = (i + 1) % n;
    const int im1 = (i - 1 + n) % n;
    double conv;
    if (u[i] > 0.0) {
      conv = (2.0 * u[i] - u[im1]) * idx * v[i] - u[i] * idx * v[im1];
    } else {
      conv = (u[ip1] - 2.0 * u[i]) * idx * v[i] + u[i] * idx * v[ip1];
    }
    out[i] = -conv + idx2 * (v[ip1] - 2.0 * v[i] + v[im1]);
  }
}

OdeProblem make_burgers(int n, double nu) {
  if (n < 8) throw std::invalid_argument("make_burgers: need n >= 8");
  OdeProblem p;
  p.dimension = n;
  p.name = "burgers";
  p.t0 = 0.0;
  p.tF = 0.2;
  p.y0.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / n;
    p.y0[i] = std::sin(2.0 * M_PI * x) + 0.5;
  }
  p.rhs = [nu](const Vec& y, Vec& f) { burgers_rhs(y, nu, f); };
  p.exact_jvp = [nu](const Vec& y, const Vec& v, Vec& out) {
    burgers_jvp(y, nu, v, out);
  };
  p.dense_jacobian = [nu](const Vec& y) { return burgers_jacobian(y, nu); };
  return p;
}

OdeProblem make_problem(const std::string& name, const std::string& preset) {
  if (name == "lorenz96") {
    if (preset != "default")
      throw std::invalid_argument("lorenz96 has only the 'default' preset");
    return make_lorenz96();
  }
  if (name == "burgers") {
    if (preset == "default") return make_burgers(256, kBurgersDefaultNu);
    if (preset == "stiff") return make_burgers(256, kBurgersStiffNu);
    throw std::invalid_argument("burgers presets: default, stiff");
  }
  throw std::invalid_argument("unknown problem '" + name +
                              "'; available: lorenz96, burgers");
}

}  // namespace rkbench
