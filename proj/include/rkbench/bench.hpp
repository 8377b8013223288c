#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "rkbench/integrators.hpp"
#include "rkbench/problem.hpp"
#include "rkbench/tableaus.hpp"
#include "rkbench/types.hpp"

namespace rkbench {

struct ExperimentSpec {
  std::string kind;  // convergence | work-precision | eigs | integrate | step-trace
  std::string problem = "lorenz96";
  std::string preset = "default";
  // Problem parameters: N, F, n, nu, t0, tF.
  nlohmann::json overrides = nlohmann::json::object();
  std::vector<std::string> methods;
  std::vector<double> steps;  // fixed-step list, strictly decreasing
  std::vector<double> tols;   // tolerance list, strictly decreasing
  std::vector<int> m_list = {4};  // ROK Krylov dimensions
  std::string jvp_mode = "fd";
  std::string out_path;
  std::string json_out_path;
  std::uint64_t seed = 0;
  double reference_tol = 1e-12;
  int eigs_m = 30;
  std::string mode = "adaptive";  // integrate: adaptive | fixed
  double integrate_h = 0.0;       // integrate fixed mode
  double integrate_tol = 1e-6;    // integrate adaptive mode
  bool with_reference = false;    // integrate: also report error vs reference

  void validate() const;  // throws std::invalid_argument on bad grids
};

ExperimentSpec spec_from_json(const nlohmann::json& j);

// Builds the problem named by the spec with preset + overrides applied.
OdeProblem problem_from_spec(const ExperimentSpec& spec);
// Canonical descriptor of everything a stored reference must match.
nlohmann::json problem_descriptor(const ExperimentSpec& spec);

struct ExperimentRecord {
  std::string method;
  std::string problem;
  std::string mode;      // fixed | adaptive
  double h = 0.0;        // NaN when not applicable
  double tol = 0.0;      // NaN when not applicable
  int M = -1;            // ROK basis size; -1 when not applicable
  std::string jvp_mode;  // fd | exact | empty when not applicable
  double error_l2 = 0.0;  // NaN when no reference comparison was made
  std::uint64_t steps_accepted = 0;
  std::uint64_t steps_rejected = 0;
  WorkCounters work;
  double wall_seconds = 0.0;
  std::string status;
};

// Fixed 16-column schema; floats printed with %.17g (NaN prints as an empty
// cell). Byte-stable given identical inputs; wall_seconds is the only column
// exempt from the determinism contract.
std::string csv_header();
std::string to_csv_row(const ExperimentRecord& r);
std::string records_to_csv(const std::vector<ExperimentRecord>& rs);
nlohmann::json records_to_json(const std::vector<ExperimentRecord>& rs);
std::string format_double(double v);

// --- reference solutions (content-addressed cache) ---

struct Reference {
  Vec y;                 // state at tF
  double floor = 0.0;    // accumulated-roundoff scale of the reference itself
  std::uint64_t n_accepted = 0;
  nlohmann::json meta;
  std::string path;
};

// RKBENCH_REFERENCE_DIR, or ./references when unset.
std::string reference_dir();
std::string reference_key(const nlohmann::json& descriptor);
std::string reference_path(const nlohmann::json& descriptor);

// Integrates with DOPRI853 at abs_tol = rel_tol = spec.reference_tol and
// stores the result. load_or_make returns the cached file when present,
// asserting its descriptor matches exactly.
Reference make_reference(const ExperimentSpec& spec);
Reference load_or_make_reference(const ExperimentSpec& spec);

// --- experiment runners ---

struct SlopeFit {
  double slope = 0.0;
  int points_used = 0;
  bool indeterminate = true;
};

// Least-squares slope of log2(error) vs log2(h) over points with
// error in [100 * reference_floor, 0.1]. Fewer than 3 usable points leaves
// the fit indeterminate.
SlopeFit fit_convergence_slope(const std::vector<std::pair<double, double>>& h_and_error,
                               double reference_floor);

struct ConvergenceResult {
  std::vector<ExperimentRecord> records;
  std::map<std::string, SlopeFit> slopes;  // keyed by method name
  double reference_floor = 0.0;
};

ConvergenceResult run_convergence(const ExperimentSpec& spec);
std::vector<ExperimentRecord> run_work_precision(const ExperimentSpec& spec);

struct RitzPair {
  std::complex<double> theta;
  double residual;  // ||A x - theta x||_2 with unit Ritz vector x
};

struct EigsResult {
  std::vector<RitzPair> ritz;  // sorted by (Re, Im) ascending
  int m_eff = 0;
  bool breakdown = false;
};

// Arnoldi at the problem's initial state, seeded with f(y0) (or 1/sqrt(N)
// when f(y0) = 0 exactly); jvp_mode "exact" requires the problem to provide
// an analytic JVP. The eigs CLI defaults to exact when available.
EigsResult run_eigs(const ExperimentSpec& spec);
std::string eigs_to_csv(const EigsResult& r);

struct StepTraceResult {
  IntegrationResult result;
  ExperimentRecord record;
};

StepTraceResult run_step_trace(const ExperimentSpec& spec);
std::string trace_to_csv(const IntegrationResult& r);

struct IntegrateResult {
  IntegrationResult result;
  ExperimentRecord record;
};

IntegrateResult run_integrate(const ExperimentSpec& spec);

// Full coefficient dump plus the order-condition residual at the claimed
// order, for external schema checks.
nlohmann::json tableau_to_json(const MethodTableau& t);

}  // namespace rkbench
