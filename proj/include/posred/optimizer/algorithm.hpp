#pragma once

#include <string>
#include <vector>

#include "posred/feasible/box.hpp"
#include "posred/feasible/pattern.hpp"
#include "posred/feasible/projection.hpp"
#include "posred/optimizer/bundle.hpp"
#include "posred/optimizer/trace.hpp"

namespace posred::optimizer {

struct AlgoConfig {
  double c = 1.1;
  double c1 = 1.0;
  double c2 = 1.0;
  double epsilon = feasible::kDefaultEpsilon;
  double gamma = feasible::kDefaultGamma;
  Index max_iters = 100;
  double stat_tol = 1e-8;
  bool trace = true;
  /// Double c1 and c2 and retry once when a cycle increases f.
  bool adaptive = false;

  /// Throws PreconditionError when a field is out of range.
  void validate() const;
};

double lipschitz_a(const ReducedTriple& red, const AlgoConfig& cfg);

enum class RunStatus { kConverged, kMaxIterations, kSolverFailure, kDegenerate };

std::string to_string(RunStatus status);

struct RunResult {
  ReducedTriple reduced;
  IterateTrace trace;
  RunStatus status = RunStatus::kMaxIterations;
  std::string message;
  Index iterations = 0;
  double initial_f = 0.0;
  double final_f = 0.0;
  double initial_residual = 0.0;
  double final_residual = 0.0;
  double c1 = 1.0;
  double c2 = 1.0;
  Index descent_violations = 0;
  std::vector<std::string> warnings;
  feasible::FeasibilityCertificate certificate;

  bool ok() const { return status == RunStatus::kConverged || status == RunStatus::kMaxIterations; }
};

/// Cyclic block projected gradient method over A_r, B_r, C_r in that order,
/// each block stepping by its gradient over c times its Lipschitz constant
/// and projecting back. Stops when stationarity_residual <= stat_tol or
/// after max_iters cycles. Solver failures, including one on the starting
/// triple, end the run with the iterate and trace reached so far;
/// precondition violations on entry throw.
RunResult run_algorithm1(const StateSpaceModel& full, const StateSpaceModel& red0,
                         const feasible::StabilityBox& box,
                         const feasible::SparsityPattern& pattern, const AlgoConfig& cfg = {});

}  // namespace posred::optimizer
