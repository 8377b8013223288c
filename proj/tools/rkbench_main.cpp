#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rkbench/bench.hpp"

namespace {

using rkbench::ExperimentRecord;
using rkbench::ExperimentSpec;

ExperimentSpec spec_from_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  nlohmann::json j;
  in >> j;
  return rkbench::spec_from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// CSV lands in --out when given, otherwise on stdout (summaries then move to
// stderr so piped output stays machine-readable).
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
}

std::FILE* summary_stream(const ExperimentSpec& spec) {
  return spec.out_path.empty() ? stderr : stdout;
}

void maybe_write_json(const ExperimentSpec& spec,
                      const std::vector<ExperimentRecord>& records) {
  if (spec.json_out_path.empty()) return;
  write_text(spec.json_out_path,
             rkbench::records_to_json(records).dump(2) + "\n");
}

bool any_failed(const std::vector<ExperimentRecord>& records) {
  for (const auto& r : records)
    if (r.status != "success") return true;
  return false;
}

struct CommonFlags {
  std::string config;
  std::string problem;
  std::string preset;
  std::string jvp;
  std::string out;
  std::string json_out;
  double ref_tol = 1e-12;
};

void add_common(CLI::App* sub, CommonFlags& c, bool with_ref_tol = true) {
  sub->add_option("--config", c.config,
                  "JSON config mirroring the experiment spec; flags override "
                  "config values");
  sub->add_option("--problem", c.problem, "problem name: lorenz96 | burgers");
  sub->add_option("--preset", c.preset, "problem preset (burgers: stiff)");
  sub->add_option("--jvp", c.jvp, "Jacobian-vector products: fd | exact");
  sub->add_option("--out", c.out, "CSV output path (default: stdout)");
  sub->add_option("--json-out", c.json_out, "JSON records output path");
  if (with_ref_tol)
    sub->add_option("--ref-tol", c.ref_tol, "reference solution tolerance");
}

ExperimentSpec base_spec(CLI::App* sub, const CommonFlags& c,
                         const char* kind) {
  ExperimentSpec spec;
  if (sub->count("--config") > 0) spec = spec_from_config(c.config);
  spec.kind = kind;
  if (sub->count("--problem") > 0) spec.problem = c.problem;
  if (sub->count("--preset") > 0) spec.preset = c.preset;
  if (sub->count("--jvp") > 0) spec.jvp_mode = c.jvp;
  if (sub->count("--out") > 0) spec.out_path = c.out;
  if (sub->count("--json-out") > 0) spec.json_out_path = c.json_out;
  if (sub->get_option_no_throw("--ref-tol") != nullptr &&
      sub->count("--ref-tol") > 0)
    spec.reference_tol = c.ref_tol;
  return spec;
}

int cmd_convergence(CLI::App* sub, const CommonFlags& c,
                    const std::vector<std::string>& methods, double h_base,
                    int halvings, const std::vector<double>& steps, int m) {
  ExperimentSpec spec = base_spec(sub, c, "convergence");
  if (sub->count("--methods") > 0) spec.methods = methods;
  if (sub->count("--m") > 0) spec.m_list = {m};
  if (sub->count("--steps") > 0) {
    spec.steps = steps;
  } else if (sub->count("--h") > 0 || sub->count("--halvings") > 0 ||
             spec.steps.empty()) {
    if (halvings < 3)
      throw std::invalid_argument("need at least 3 halvings (4 step sizes)");
    spec.steps.clear();
    for (int k = 0; k <= halvings; ++k)
      spec.steps.push_back(h_base * std::pow(2.0, -k));
  }

  rkbench::ConvergenceResult res = rkbench::run_convergence(spec);
  emit(spec.out_path, rkbench::records_to_csv(res.records));
  maybe_write_json(spec, res.records);

  std::FILE* s = summary_stream(spec);
  std::fprintf(s, "reference floor %.3e\n", res.reference_floor);
  for (const auto& name : spec.methods) {
    const auto& t = rkbench::registry_get(name);
    const auto& fit = res.slopes.at(t.name);
    if (fit.indeterminate)
      std::fprintf(s, "%s: slope indeterminate (%d usable points)\n",
                   t.name.c_str(), fit.points_used);
    else
      std::fprintf(s, "%s: slope %.3f (%d points)\n", t.name.c_str(),
                   fit.slope, fit.points_used);
  }
  return any_failed(res.records) ? 1 : 0;
}

int cmd_work_precision(CLI::App* sub, const CommonFlags& c,
                       const std::vector<std::string>& methods,
                       const std::vector<double>& tols,
                       const std::vector<int>& m_list) {
  ExperimentSpec spec = base_spec(sub, c, "work-precision");
  if (sub->count("--methods") > 0) spec.methods = methods;
  if (sub->count("--tols") > 0) spec.tols = tols;
  if (sub->count("--m-list") > 0) spec.m_list = m_list;

  std::vector<ExperimentRecord> records = rkbench::run_work_precision(spec);
  emit(spec.out_path, rkbench::records_to_csv(records));
  maybe_write_json(spec, records);

  std::FILE* s = summary_stream(spec);
  for (const auto& name : spec.methods) {
    const auto& t = rkbench::registry_get(name);
    int runs = 0, failed = 0;
    for (const auto& r : records)
      if (r.method == t.name) {
        ++runs;
        if (r.status != "success") ++failed;
      }
    std::fprintf(s, "%s: %d runs, %d failed\n", t.name.c_str(), runs, failed);
  }
  return any_failed(records) ? 1 : 0;
}

int cmd_eigs(CLI::App* sub, const CommonFlags& c, int m) {
  ExperimentSpec spec = base_spec(sub, c, "eigs");
  if (sub->count("--m") > 0) spec.eigs_m = m;
  // Ritz accuracy is the point here; prefer the analytic JVP unless the user
  // explicitly asked for fd (run_eigs falls back to fd when unavailable).
  if (sub->count("--jvp") == 0 && sub->count("--config") == 0)
    spec.jvp_mode = "exact";

  rkbench::EigsResult res = rkbench::run_eigs(spec);
  emit(spec.out_path, rkbench::eigs_to_csv(res));

  double re_min = 0.0, re_max = 0.0, worst_res = 0.0;
  if (!res.ritz.empty()) {
    re_min = res.ritz.front().theta.real();
    re_max = res.ritz.back().theta.real();
    for (const auto& pair : res.ritz)
      worst_res = std::max(worst_res, pair.residual);
  }
  std::fprintf(summary_stream(spec),
               "m_eff %d%s, Re range [%.6g, %.6g], max residual %.3e\n",
               res.m_eff, res.breakdown ? " (breakdown)" : "", re_min, re_max,
               worst_res);
  return 0;
}

int cmd_integrate(CLI::App* sub, const CommonFlags& c,
                  const std::string& method, const std::string& mode, double h,
                  double tol, int m, bool with_reference) {
  ExperimentSpec spec = base_spec(sub, c, "integrate");
  if (sub->count("--method") > 0) spec.methods = {method};
  if (sub->count("--mode") > 0) spec.mode = mode;
  if (sub->count("--h") > 0) {
    spec.integrate_h = h;
    if (sub->count("--mode") == 0) spec.mode = "fixed";
  }
  if (sub->count("--tol") > 0) spec.integrate_tol = tol;
  if (sub->count("--m") > 0) spec.m_list = {m};
  if (with_reference) spec.with_reference = true;

  rkbench::IntegrateResult res = rkbench::run_integrate(spec);
  std::vector<ExperimentRecord> records = {res.record};
  if (!spec.out_path.empty())
    write_text(spec.out_path, rkbench::records_to_csv(records));
  maybe_write_json(spec, records);

  std::printf("%s %s %s: status %s, accepted %llu, rejected %llu",
              res.record.method.c_str(), res.record.problem.c_str(),
              res.record.mode.c_str(), res.record.status.c_str(),
              static_cast<unsigned long long>(res.record.steps_accepted),
              static_cast<unsigned long long>(res.record.steps_rejected));
  if (!std::isnan(res.record.error_l2))
    std::printf(", error_l2 %.3e", res.record.error_l2);
  std::printf("\n");
  if (!res.result.ok()) std::printf("failure: %s\n", res.result.message.c_str());
  return res.result.ok() ? 0 : 1;
}

int cmd_step_trace(CLI::App* sub, const CommonFlags& c,
                   const std::string& method, double tol, int m) {
  ExperimentSpec spec = base_spec(sub, c, "step-trace");
  if (sub->count("--method") > 0) spec.methods = {method};
  if (sub->count("--tol") > 0) spec.integrate_tol = tol;
  if (sub->count("--m") > 0) spec.m_list = {m};

  rkbench::StepTraceResult res = rkbench::run_step_trace(spec);
  emit(spec.out_path, rkbench::trace_to_csv(res.result));

  double h_sum = 0.0;
  std::uint64_t n_acc = 0;
  for (const auto& e : res.result.step_trace)
    if (e.accepted) {
      h_sum += e.h;
      ++n_acc;
    }
  std::fprintf(summary_stream(spec),
               "%s: status %s, accepted %llu, rejected %llu, mean accepted h "
               "%.6e\n",
               res.record.method.c_str(), res.record.status.c_str(),
               static_cast<unsigned long long>(res.record.steps_accepted),
               static_cast<unsigned long long>(res.record.steps_rejected),
               n_acc > 0 ? h_sum / static_cast<double>(n_acc) : 0.0);
  return res.result.ok() ? 0 : 1;
}

int cmd_dump_tableaus(const std::string& out_path) {
  nlohmann::json o;
  for (const auto& name : rkbench::registry_names())
    o[name] = rkbench::tableau_to_json(rkbench::registry_get(name));
  emit(out_path, o.dump(2) + "\n");
  return 0;
}

int cmd_make_reference(CLI::App* sub, const CommonFlags& c) {
  ExperimentSpec spec = base_spec(sub, c, "integrate");
  rkbench::Reference ref = rkbench::make_reference(spec);
  std::printf("wrote %s (accepted steps %llu, floor %.3e)\n", ref.path.c_str(),
              static_cast<unsigned long long>(ref.n_accepted), ref.floor);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rkbench: matrix-free Runge-Kutta integration benchmarks"};
  app.require_subcommand(1);
  // Long-only help on subcommands: the default -h short flag would collide
  // with the --h step-size option.
  auto add_sub = [&app](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print this help message and exit");
    return sub;
  };

  // convergence
  auto* conv = add_sub(
      "convergence", "fixed-step order study against a reference solution");
  CommonFlags conv_c;
  add_common(conv, conv_c);
  std::vector<std::string> conv_methods;
  std::vector<double> conv_steps;
  double conv_h = 1e-2;
  int conv_halvings = 5, conv_m = 4;
  conv->add_option("--methods", conv_methods, "comma-separated method names")
      ->delimiter(',');
  conv->add_option("--h", conv_h, "coarsest step size");
  conv->add_option("--halvings", conv_halvings,
                   "number of halvings below --h (>= 3)");
  auto* steps_opt =
      conv->add_option("--steps", conv_steps, "explicit step-size list")
          ->delimiter(',');
  steps_opt->excludes("--h");
  steps_opt->excludes("--halvings");
  conv->add_option("--m", conv_m, "ROK Krylov basis size");

  // work-precision
  auto* wp = add_sub("work-precision",
                                "adaptive tolerance sweep with work counters");
  CommonFlags wp_c;
  add_common(wp, wp_c);
  std::vector<std::string> wp_methods;
  std::vector<double> wp_tols;
  std::vector<int> wp_m_list;
  wp->add_option("--methods", wp_methods, "comma-separated method names")
      ->delimiter(',');
  wp->add_option("--tols", wp_tols, "comma-separated tolerance list")
      ->delimiter(',');
  wp->add_option("--m-list", wp_m_list, "comma-separated ROK basis sizes")
      ->delimiter(',');

  // eigs
  auto* eigs = add_sub(
      "eigs", "Arnoldi Ritz values of the Jacobian at the initial state");
  CommonFlags eigs_c;
  add_common(eigs, eigs_c, /*with_ref_tol=*/false);
  int eigs_m = 30;
  eigs->add_option("--m", eigs_m, "Krylov basis size");

  // integrate
  auto* integ = add_sub("integrate", "single integration run");
  CommonFlags integ_c;
  add_common(integ, integ_c);
  std::string integ_method, integ_mode;
  double integ_h = 0.0, integ_tol = 1e-6;
  int integ_m = 4;
  bool integ_with_ref = false;
  integ->add_option("--method", integ_method, "method name");
  integ->add_option("--mode", integ_mode, "fixed | adaptive");
  integ->add_option("--h", integ_h, "step size (fixed mode)");
  integ->add_option("--tol", integ_tol, "abs = rel tolerance (adaptive mode)");
  integ->add_option("--m", integ_m, "ROK Krylov basis size");
  integ->add_flag("--with-reference", integ_with_ref,
                  "also report l2 error against the cached reference");

  // step-trace
  auto* trace = add_sub(
      "step-trace", "per-step (t, h, accepted) series of one adaptive run");
  CommonFlags trace_c;
  add_common(trace, trace_c, /*with_ref_tol=*/false);
  std::string trace_method;
  double trace_tol = 1e-6;
  int trace_m = 4;
  trace->add_option("--method", trace_method, "method name");
  trace->add_option("--tol", trace_tol, "abs = rel tolerance");
  trace->add_option("--m", trace_m, "ROK Krylov basis size");

  // dump-tableaus
  auto* dump = add_sub("dump-tableaus",
                                  "registered method coefficients as JSON");
  std::string dump_out;
  dump->add_option("--out", dump_out, "output path (default: stdout)");

  // make-reference
  auto* mkref = add_sub(
      "make-reference", "build and cache a reference solution");
  CommonFlags mkref_c;
  add_common(mkref, mkref_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (conv->parsed())
      return cmd_convergence(conv, conv_c, conv_methods, conv_h, conv_halvings,
                             conv_steps, conv_m);
    if (wp->parsed())
      return cmd_work_precision(wp, wp_c, wp_methods, wp_tols, wp_m_list);
    if (eigs->parsed()) return cmd_eigs(eigs, eigs_c, eigs_m);
    if (integ->parsed())
      return cmd_integrate(integ, integ_c, integ_method, integ_mode, integ_h,
                           integ_tol, integ_m, integ_with_ref);
    if (trace->parsed())
      return cmd_step_trace(trace, trace_c, trace_method, trace_tol, trace_m);
    if (dump->parsed()) return cmd_dump_tableaus(dump_out);
    if (mkref->parsed()) return cmd_make_reference(mkref, mkref_c);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
