#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rkbench {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Thrown when a state, RHS output, or derived quantity contains NaN/Inf.
// Drivers catch it at step granularity and convert it into a rejection.
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

struct WorkCounters {
  std::uint64_t rhs_evals = 0;
  std::uint64_t jvp_evals = 0;
  std::uint64_t linear_iters = 0;
  std::uint64_t newton_iters = 0;

  WorkCounters& operator+=(const WorkCounters& o) {
    rhs_evals += o.rhs_evals;
    jvp_evals += o.jvp_evals;
    linear_iters += o.linear_iters;
    newton_iters += o.newton_iters;
    return *this;
  }
};

enum class RunStatus {
  Success,
  RejectionLimit,  // 20 consecutive rejections
  MaxSteps,
  StepFailure,  // unrecoverable stage failure in fixed-step mode
};

std::string to_string(RunStatus s);

struct StepTraceEntry {
  double t;
  double h;
  bool accepted;
};

struct IntegrationResult {
  Vec y;
  double t = 0.0;
  std::uint64_t accepted_steps = 0;
  std::uint64_t rejected_steps = 0;
  WorkCounters work;
  std::vector<StepTraceEntry> step_trace;
  RunStatus status = RunStatus::Success;
  std::string message;

  bool ok() const { return status == RunStatus::Success; }
};

}  // namespace rkbench
