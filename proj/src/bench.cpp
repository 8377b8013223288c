#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rkbench/bench.hpp"
#include "rkbench/matfree.hpp"
#include "rkbench/norms.hpp"
#include "rkbench/problems.hpp"

namespace rkbench {

namespace {

constexpr const char* kReferenceMethod = "DOPRI853";
constexpr const char* kReferenceFormat = "rkbench-reference-v1";

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_strictly_decreasing(const std::vector<double>& xs,
                                 const std::string& what) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    require(xs[i + 1] < xs[i], what + " list must be strictly decreasing");
  for (double x : xs) require(x > 0.0, what + " values must be positive");
}

double wall_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

JvpMode parse_jvp_mode(const std::string& s) {
  if (s == "fd") return JvpMode::FD;
  if (s == "exact") return JvpMode::Exact;
  throw std::invalid_argument("jvp_mode must be 'fd' or 'exact', got '" + s +
                              "'");
}

// The explicit schemes never touch the Jacobian, so their rows leave the
// jvp_mode column empty.
std::string jvp_mode_column(const MethodTableau& t,
                            const ExperimentSpec& spec) {
  return t.family == Family::ERK ? std::string{} : spec.jvp_mode;
}

SolverOptions solver_options(const ExperimentSpec& spec,
                             const OdeProblem& p, int krylov_dim) {
  SolverOptions opt;
  opt.jvp_mode = parse_jvp_mode(spec.jvp_mode);
  if (opt.jvp_mode == JvpMode::Exact && !p.has_exact_jvp())
    throw std::invalid_argument("jvp_mode 'exact' requested but problem '" +
                                p.name + "' provides no analytic JVP");
  opt.krylov_dim = krylov_dim;
  return opt;
}

ExperimentRecord make_record(const ExperimentSpec& spec,
                             const MethodTableau& t, const OdeProblem& p,
                             const IntegrationResult& res, double wall,
                             std::string mode, double h, double tol, int M) {
  ExperimentRecord r;
  r.method = t.name;
  r.problem = p.name;
  r.mode = std::move(mode);
  r.h = h;
  r.tol = tol;
  r.M = M;
  r.jvp_mode = jvp_mode_column(t, spec);
  r.error_l2 = std::nan("");
  r.steps_accepted = res.accepted_steps;
  r.steps_rejected = res.rejected_steps;
  r.work = res.work;
  r.wall_seconds = wall;
  r.status = to_string(res.status);
  return r;
}

}  // namespace

void ExperimentSpec::validate() const {
  static const std::vector<std::string> kinds = {
      "convergence", "work-precision", "eigs", "integrate", "step-trace"};
  require(std::find(kinds.begin(), kinds.end(), kind) != kinds.end(),
          "unknown experiment kind '" + kind + "'");
  require_strictly_decreasing(steps, "step");
  require_strictly_decreasing(tols, "tolerance");
  for (int m : m_list) require(m >= 0, "ROK basis sizes must be >= 0");
  require(!m_list.empty(), "ROK basis-size list must not be empty");
  parse_jvp_mode(jvp_mode);
  require(reference_tol > 0.0, "reference tolerance must be positive");
  if (kind == "convergence") {
    require(!methods.empty(), "convergence study needs at least one method");
    require(steps.size() >= 4,
            "convergence study needs at least 4 step sizes to fit a slope");
  } else if (kind == "work-precision") {
    require(!methods.empty(), "work-precision study needs methods");
    require(!tols.empty(), "work-precision study needs a tolerance list");
  } else if (kind == "step-trace") {
    require(methods.size() == 1, "step-trace runs exactly one method");
  } else if (kind == "eigs") {
    require(eigs_m >= 1, "eigs needs m >= 1");
  } else if (kind == "integrate") {
    require(methods.size() == 1, "integrate runs exactly one method");
    require(mode == "fixed" || mode == "adaptive",
            "integrate mode must be 'fixed' or 'adaptive'");
    if (mode == "fixed") require(integrate_h > 0.0, "fixed mode needs h > 0");
    if (mode == "adaptive")
      require(integrate_tol > 0.0, "adaptive mode needs tol > 0");
  }
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
  ExperimentSpec s;
  require(j.is_object(), "config must be a JSON object");
  static const std::vector<std::string> known = {
      "kind",       "problem",  "preset",        "overrides",
      "methods",    "steps",    "tols",          "m_list",
      "jvp_mode",   "out_path", "json_out_path", "seed",
      "reference_tol", "eigs_m", "mode",         "integrate_h",
      "integrate_tol", "with_reference"};
  for (const auto& [key, _] : j.items())
    require(std::find(known.begin(), known.end(), key) != known.end(),
            "unknown config key '" + key + "'");
  s.kind = j.value("kind", s.kind);
  s.problem = j.value("problem", s.problem);
  s.preset = j.value("preset", s.preset);
  if (j.contains("overrides")) s.overrides = j.at("overrides");
  if (j.contains("methods"))
    s.methods = j.at("methods").get<std::vector<std::string>>();
  if (j.contains("steps")) s.steps = j.at("steps").get<std::vector<double>>();
  if (j.contains("tols")) s.tols = j.at("tols").get<std::vector<double>>();
  if (j.contains("m_list")) s.m_list = j.at("m_list").get<std::vector<int>>();
  s.jvp_mode = j.value("jvp_mode", s.jvp_mode);
  s.out_path = j.value("out_path", s.out_path);
  s.json_out_path = j.value("json_out_path", s.json_out_path);
  s.seed = j.value("seed", s.seed);
  s.reference_tol = j.value("reference_tol", s.reference_tol);
  s.eigs_m = j.value("eigs_m", s.eigs_m);
  s.mode = j.value("mode", s.mode);
  s.integrate_h = j.value("integrate_h", s.integrate_h);
  s.integrate_tol = j.value("integrate_tol", s.integrate_tol);
  s.with_reference = j.value("with_reference", s.with_reference);
  return s;
}

OdeProblem problem_from_spec(const ExperimentSpec& spec) {
  const nlohmann::json& ov = spec.overrides;
  require(ov.is_object(), "overrides must be a JSON object");
  OdeProblem p;
  if (spec.problem == "lorenz96") {
    require(spec.preset == "default", "lorenz96 has only the 'default' preset");
    const int N = ov.value("N", 40);
    const double F = ov.value("F", 8.0);
    p = make_lorenz96(N, F);
  } else if (spec.problem == "burgers") {
    double nu;
    if (spec.preset == "default")
      nu = kBurgersDefaultNu;
    else if (spec.preset == "stiff")
      nu = kBurgersStiffNu;
    else
      throw std::invalid_argument("burgers presets: default, stiff");
    nu = ov.value("nu", nu);
    const int n = ov.value("n", 256);
    p = make_burgers(n, nu);
  } else {
    throw std::invalid_argument("unknown problem '" + spec.problem +
                                "'; available: lorenz96, burgers");
  }
  p.t0 = ov.value("t0", p.t0);
  p.tF = ov.value("tF", p.tF);
  require(p.t0 < p.tF, "overrides must keep t0 < tF");
  return p;
}

nlohmann::json problem_descriptor(const ExperimentSpec& spec) {
  // Resolve every parameter a cached reference depends on; building the
  // problem applies preset + overrides and validates them.
  OdeProblem p = problem_from_spec(spec);
  nlohmann::json params;
  const nlohmann::json& ov = spec.overrides;
  if (spec.problem == "lorenz96") {
    params["N"] = p.dimension;
    params["F"] = ov.value("F", 8.0);
  } else {
    params["n"] = p.dimension;
    double nu = spec.preset == "stiff" ? kBurgersStiffNu : kBurgersDefaultNu;
    params["nu"] = ov.value("nu", nu);
  }
  nlohmann::json d;
  d["problem"] = spec.problem;
  d["params"] = params;
  d["t0"] = p.t0;
  d["tF"] = p.tF;
  d["reference"] = {{"method", kReferenceMethod}, {"tol", spec.reference_tol}};
  return d;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_header() {
  return "method,problem,mode,h,tol,M,jvp_mode,error_l2,steps_accepted,"
         "steps_rejected,rhs_evals,jvp_evals,linear_iters,newton_iters,"
         "wall_seconds,status";
}

std::string to_csv_row(const ExperimentRecord& r) {
  std::ostringstream os;
  os << r.method << ',' << r.problem << ',' << r.mode << ','
     << format_double(r.h) << ',' << format_double(r.tol) << ','
     << (r.M < 0 ? std::string{} : std::to_string(r.M)) << ',' << r.jvp_mode
     << ',' << format_double(r.error_l2) << ',' << r.steps_accepted << ','
     << r.steps_rejected << ',' << r.work.rhs_evals << ',' << r.work.jvp_evals
     << ',' << r.work.linear_iters << ',' << r.work.newton_iters << ','
     << format_double(r.wall_seconds) << ',' << r.status;
  return os.str();
}

std::string records_to_csv(const std::vector<ExperimentRecord>& rs) {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const auto& r : rs) os << to_csv_row(r) << '\n';
  return os.str();
}

nlohmann::json records_to_json(const std::vector<ExperimentRecord>& rs) {
  auto num_or_null = [](double v) {
    return std::isnan(v) ? nlohmann::json{} : nlohmann::json(v);
  };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rs) {
    nlohmann::json o;
    o["method"] = r.method;
    o["problem"] = r.problem;
    o["mode"] = r.mode;
    o["h"] = num_or_null(r.h);
    o["tol"] = num_or_null(r.tol);
    o["M"] = r.M < 0 ? nlohmann::json{} : nlohmann::json(r.M);
    o["jvp_mode"] = r.jvp_mode;
    o["error_l2"] = num_or_null(r.error_l2);
    o["steps_accepted"] = r.steps_accepted;
    o["steps_rejected"] = r.steps_rejected;
    o["rhs_evals"] = r.work.rhs_evals;
    o["jvp_evals"] = r.work.jvp_evals;
    o["linear_iters"] = r.work.linear_iters;
    o["newton_iters"] = r.work.newton_iters;
    o["wall_seconds"] = r.wall_seconds;
    o["status"] = r.status;
    arr.push_back(std::move(o));
  }
  return arr;
}

// --- references ---

std::string reference_dir() {
  const char* env = std::getenv("RKBENCH_REFERENCE_DIR");
  if (env != nullptr && env[0] != '\0') return env;
  return "./references";
}

std::string reference_key(const nlohmann::json& descriptor) {
  // FNV-1a 64-bit over the canonical (sorted-key) serialization.
  const std::string s = descriptor.dump();
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : s) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::string reference_path(const nlohmann::json& descriptor) {
  const std::string problem = descriptor.at("problem").get<std::string>();
  return reference_dir() + "/" + problem + "-" + reference_key(descriptor) +
         ".json";
}

Reference make_reference(const ExperimentSpec& spec) {
  require(spec.reference_tol <= 1e-10,
          "reference tolerance must be <= 1e-10 to serve as ground truth");
  OdeProblem p = problem_from_spec(spec);
  IntegrationConfig cfg;
  cfg.mode = IntegrationConfig::Mode::Adaptive;
  cfg.abs_tol = spec.reference_tol;
  cfg.rel_tol = spec.reference_tol;
  cfg.record_trace = false;
  IntegrationResult res = adaptive_drive(p, registry_get(kReferenceMethod), cfg);
  if (!res.ok())
    throw std::runtime_error("reference solve failed: " + res.message);

  Reference ref;
  ref.y = res.y;
  ref.n_accepted = res.accepted_steps;
  // Roundoff accumulated by the reference itself: one epsilon-sized relative
  // wobble per step, growing like a random walk.
  ref.floor = std::sqrt(static_cast<double>(res.accepted_steps)) *
              std::numeric_limits<double>::epsilon() * ref.y.norm();
  ref.meta = problem_descriptor(spec);
  ref.path = reference_path(ref.meta);

  nlohmann::json file;
  file["format"] = kReferenceFormat;
  file["descriptor"] = ref.meta;
  file["n_accepted"] = ref.n_accepted;
  file["floor"] = ref.floor;
  file["y"] = std::vector<double>(ref.y.data(), ref.y.data() + ref.y.size());
  std::filesystem::create_directories(reference_dir());
  std::ofstream out(ref.path);
  if (!out) throw std::runtime_error("cannot write reference " + ref.path);
  out << file.dump(2) << '\n';
  return ref;
}

Reference load_or_make_reference(const ExperimentSpec& spec) {
  const nlohmann::json descriptor = problem_descriptor(spec);
  const std::string path = reference_path(descriptor);
  if (!std::filesystem::exists(path)) return make_reference(spec);

  std::ifstream in(path);
  nlohmann::json file;
  in >> file;
  if (file.value("format", "") != kReferenceFormat ||
      file.at("descriptor") != descriptor)
    throw std::runtime_error(
        "reference file " + path +
        " was built for different parameters; delete it or change "
        "RKBENCH_REFERENCE_DIR");
  Reference ref;
  const auto y = file.at("y").get<std::vector<double>>();
  ref.y = Eigen::Map<const Vec>(y.data(), static_cast<Eigen::Index>(y.size()));
  ref.floor = file.at("floor").get<double>();
  ref.n_accepted = file.at("n_accepted").get<std::uint64_t>();
  ref.meta = descriptor;
  ref.path = path;
  return ref;
}

// --- slope fitting ---

SlopeFit fit_convergence_slope(
    const std::vector<std::pair<double, double>>& h_and_error,
    double reference_floor) {
  const double lo = 100.0 * reference_floor;
  const double hi = 0.1;
  std::vector<std::pair<double, double>> pts;
  for (const auto& [h, err] : h_and_error) {
    if (!(h > 0.0) || !std::isfinite(err)) continue;
    if (err < lo || err > hi) continue;
    pts.emplace_back(std::log2(h), std::log2(err));
  }
  SlopeFit fit;
  fit.points_used = static_cast<int>(pts.size());
  if (pts.size() < 3) return fit;
  double xm = 0.0, ym = 0.0;
  for (const auto& [x, y] : pts) {
    xm += x;
    ym += y;
  }
  xm /= static_cast<double>(pts.size());
  ym /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - xm) * (y - ym);
    sxx += (x - xm) * (x - xm);
  }
  fit.slope = sxy / sxx;
  fit.indeterminate = false;
  return fit;
}

// --- runners ---

ConvergenceResult run_convergence(const ExperimentSpec& spec) {
  spec.validate();
  require(spec.kind == "convergence", "spec kind must be 'convergence'");
  const Reference ref = load_or_make_reference(spec);
  const OdeProblem p = problem_from_spec(spec);

  ConvergenceResult out;
  out.reference_floor = ref.floor;
  for (const auto& name : spec.methods) {
    const MethodTableau& t = registry_get(name);
    const int M = t.family == Family::ROK ? spec.m_list.front() : -1;
    std::vector<std::pair<double, double>> h_err;
    for (double h : spec.steps) {
      SolverOptions opt = solver_options(spec, p, std::max(M, 0));
      const auto t0 = std::chrono::steady_clock::now();
      IntegrationResult res = fixed_drive(p, t, h, opt, /*record_trace=*/false);
      const double wall = wall_since(t0);
      ExperimentRecord rec =
          make_record(spec, t, p, res, wall, "fixed", h, std::nan(""), M);
      if (res.ok()) {
        rec.error_l2 = l2_error(res.y, ref.y);
        h_err.emplace_back(h, rec.error_l2);
      }
      out.records.push_back(std::move(rec));
    }
    out.slopes[t.name] = fit_convergence_slope(h_err, ref.floor);
  }
  return out;
}

std::vector<ExperimentRecord> run_work_precision(const ExperimentSpec& spec) {
  spec.validate();
  require(spec.kind == "work-precision", "spec kind must be 'work-precision'");
  require(spec.reference_tol <= 0.01 * spec.tols.back(),
          "reference tolerance must be at least 100x tighter than the "
          "tightest experiment tolerance");
  const Reference ref = load_or_make_reference(spec);
  const OdeProblem p = problem_from_spec(spec);

  std::vector<ExperimentRecord> records;
  for (const auto& name : spec.methods) {
    const MethodTableau& t = registry_get(name);
    const std::vector<int> ms =
        t.family == Family::ROK ? spec.m_list : std::vector<int>{-1};
    for (int M : ms) {
      for (double tol : spec.tols) {
        IntegrationConfig cfg;
        cfg.mode = IntegrationConfig::Mode::Adaptive;
        cfg.abs_tol = tol;
        cfg.rel_tol = tol;
        cfg.solver = solver_options(spec, p, std::max(M, 0));
        cfg.record_trace = false;
        const auto t0 = std::chrono::steady_clock::now();
        IntegrationResult res = adaptive_drive(p, t, cfg);
        const double wall = wall_since(t0);
        ExperimentRecord rec =
            make_record(spec, t, p, res, wall, "adaptive", std::nan(""), tol, M);
        if (res.ok()) rec.error_l2 = l2_error(res.y, ref.y);
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

EigsResult run_eigs(const ExperimentSpec& spec) {
  spec.validate();
  require(spec.kind == "eigs", "spec kind must be 'eigs'");
  const OdeProblem p = problem_from_spec(spec);
  const int n = static_cast<int>(p.dimension);
  require(spec.eigs_m <= n, "eigs m must not exceed the problem dimension");

  WorkCounters work;
  Vec seed(n);
  eval_rhs(p, p.y0, seed, work);
  Vec f0 = seed;  // f(y0), the FD base payload; unused by the exact path
  if (seed.norm() == 0.0)
    seed = Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  LinearOperator op =
      parse_jvp_mode(spec.jvp_mode) == JvpMode::Exact && p.has_exact_jvp()
          ? make_exact_jvp_operator(p, p.y0, work)
          : make_fd_jvp_operator(p, p.y0, f0, work);

  KrylovBasis basis = build_arnoldi(op, seed, spec.eigs_m);
  EigsResult out;
  out.m_eff = basis.m_eff;
  out.breakdown = basis.breakdown;

  Eigen::EigenSolver<Mat> es(basis.H);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolve on the Hessenberg matrix failed");

  for (int i = 0; i < basis.m_eff; ++i) {
    const std::complex<double> theta = es.eigenvalues()[i];
    const Eigen::VectorXcd z = es.eigenvectors().col(i);
    Vec xr = basis.V * z.real();
    Vec xi = basis.V * z.imag();
    const double nrm = std::sqrt(xr.squaredNorm() + xi.squaredNorm());
    xr /= nrm;
    xi /= nrm;
    Vec Axr = op(xr);
    Vec Axi = xi.isZero(0.0) ? Vec(Vec::Zero(n)) : op(xi);
    // A x - theta x for x = xr + i*xi, split into real and imaginary parts.
    const Vec rr = Axr - theta.real() * xr + theta.imag() * xi;
    const Vec ri = Axi - theta.real() * xi - theta.imag() * xr;
    out.ritz.push_back(
        {theta, std::sqrt(rr.squaredNorm() + ri.squaredNorm())});
  }
  std::sort(out.ritz.begin(), out.ritz.end(),
            [](const RitzPair& a, const RitzPair& b) {
              if (a.theta.real() != b.theta.real())
                return a.theta.real() < b.theta.real();
              return a.theta.imag() < b.theta.imag();
            });
  return out;
}

std::string eigs_to_csv(const EigsResult& r) {
  std::ostringstream os;
  os << "re,im,residual\n";
  for (const auto& pair : r.ritz)
    os << format_double(pair.theta.real()) << ','
       << format_double(pair.theta.imag()) << ','
       << format_double(pair.residual) << '\n';
  return os.str();
}

StepTraceResult run_step_trace(const ExperimentSpec& spec) {
  spec.validate();
  require(spec.kind == "step-trace", "spec kind must be 'step-trace'");
  const OdeProblem p = problem_from_spec(spec);
  const MethodTableau& t = registry_get(spec.methods.front());
  const double tol = spec.tols.empty() ? spec.integrate_tol : spec.tols.front();
  require(tol > 0.0, "step-trace needs a positive tolerance");
  const int M = t.family == Family::ROK ? spec.m_list.front() : -1;

  IntegrationConfig cfg;
  cfg.mode = IntegrationConfig::Mode::Adaptive;
  cfg.abs_tol = tol;
  cfg.rel_tol = tol;
  cfg.solver = solver_options(spec, p, std::max(M, 0));
  cfg.record_trace = true;
  const auto t0 = std::chrono::steady_clock::now();
  StepTraceResult out;
  out.result = adaptive_drive(p, t, cfg);
  const double wall = wall_since(t0);
  out.record = make_record(spec, t, p, out.result, wall, "adaptive",
                           std::nan(""), tol, M);
  return out;
}

std::string trace_to_csv(const IntegrationResult& r) {
  std::ostringstream os;
  os << "t,h,accepted\n";
  for (const auto& e : r.step_trace)
    os << format_double(e.t) << ',' << format_double(e.h) << ','
       << (e.accepted ? 1 : 0) << '\n';
  return os.str();
}

IntegrateResult run_integrate(const ExperimentSpec& spec) {
  spec.validate();
  require(spec.kind == "integrate", "spec kind must be 'integrate'");
  const OdeProblem p = problem_from_spec(spec);
  const MethodTableau& t = registry_get(spec.methods.front());
  const int M = t.family == Family::ROK ? spec.m_list.front() : -1;

  IntegrateResult out;
  const auto t0 = std::chrono::steady_clock::now();
  if (spec.mode == "fixed") {
    SolverOptions opt = solver_options(spec, p, std::max(M, 0));
    out.result = fixed_drive(p, t, spec.integrate_h, opt);
  } else {
    IntegrationConfig cfg;
    cfg.mode = IntegrationConfig::Mode::Adaptive;
    cfg.abs_tol = spec.integrate_tol;
    cfg.rel_tol = spec.integrate_tol;
    cfg.solver = solver_options(spec, p, std::max(M, 0));
    out.result = adaptive_drive(p, t, cfg);
  }
  const double wall = wall_since(t0);
  out.record = make_record(
      spec, t, p, out.result, wall, spec.mode,
      spec.mode == "fixed" ? spec.integrate_h : std::nan(""),
      spec.mode == "fixed" ? std::nan("") : spec.integrate_tol, M);
  if (spec.with_reference && out.result.ok()) {
    const Reference ref = load_or_make_reference(spec);
    out.record.error_l2 = l2_error(out.result.y, ref.y);
  }
  return out;
}

nlohmann::json tableau_to_json(const MethodTableau& t) {
  auto mat_to_json = [](const Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  auto vec_to_json = [](const Vec& v) {
    return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
  };
  nlohmann::json o;
  o["name"] = t.name;
  o["family"] = to_string(t.family);
  o["stages"] = t.s;
  o["order"] = t.p;
  o["embedded_order"] = t.p_hat;
  o["a"] = mat_to_json(t.a);
  o["b"] = vec_to_json(t.b);
  if (t.has_b_hat()) o["b_hat"] = vec_to_json(t.b_hat);
  o["c"] = vec_to_json(t.c);
  if (t.is_ros_type()) {
    o["gamma"] = t.gamma;
    o["Gamma"] = mat_to_json(t.Gamma);
  }
  if (t.family == Family::ROK) o["min_basis"] = t.min_basis;
  o["max_order_residual"] = verify_order_conditions(t).max_abs_residual;
  return o;
}

}  // namespace rkbench
