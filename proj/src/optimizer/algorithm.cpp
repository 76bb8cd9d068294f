#include "posred/optimizer/algorithm.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "posred/error.hpp"
#include "posred/numkit/spectral.hpp"

namespace posred::optimizer {

void AlgoConfig::validate() const {
  if (!(c > 1.0)) throw PreconditionError("step factor c must exceed 1");
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw PreconditionError("c1 and c2 must be positive");
  if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
  if (!(gamma > 0.0)) throw PreconditionError("gamma must be positive");
  if (max_iters < 0) throw PreconditionError("max_iters must be nonnegative");
  if (!(stat_tol > 0.0)) throw PreconditionError("stat_tol must be positive");
}

double lipschitz_a(const ReducedTriple& red, const AlgoConfig& cfg) {
  return lipschitz_a(red.b, red.c, cfg.c1, cfg.c2);
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kMaxIterations: return "max_iterations";
    case RunStatus::kSolverFailure: return "solver_failure";
    case RunStatus::kDegenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

struct CycleOutcome {
  ReducedTriple red;
  GradientBundle bundle;
  double c_a = 0.0;
  double c_b = 0.0;
  double c_c = 0.0;
};

class Loop {
 public:
  Loop(const StateSpaceModel& full, const feasible::StabilityBox& box,
       const feasible::SparsityPattern& pattern, const AlgoConfig& cfg, RunResult& result)
      : full_(full), box_(box), pattern_(pattern), cfg_(cfg), result_(result),
        solver_(full, known_stable_options()) {}

  GradientBundle assemble(const ReducedTriple& red) {
    GradientBundle bundle = solver_.assemble(red);
    monitor(red, bundle);
    return bundle;
  }

  // One A -> B -> C sweep from (red, bundle), where bundle is fresh for red.
  CycleOutcome cycle(const ReducedTriple& red, const GradientBundle& bundle, double c1,
                     double c2) {
    CycleOutcome out{red, bundle, 0.0, 0.0, 0.0};

    out.c_a = cfg_.c * lipschitz_a(red.b, red.c, c1, c2);
    if (step(out.red.a, grad_a(bundle), out.c_a, "A")) {
      out.red.a = feasible::project_a(out.red.a, box_, pattern_);
      check_feasible(out.red, "A");
      out.bundle = assemble(out.red);
    }

    out.c_b = cfg_.c * lipschitz_b(out.bundle);
    if (step(out.red.b, grad_b(out.bundle, full_, out.red.b), out.c_b, "B")) {
      out.red.b = feasible::project_b(out.red.b, pattern_);
      check_feasible(out.red, "B");
      out.bundle.x = solver_.solve_x(out.red.a, out.red.b);
      out.bundle.p = solver_.solve_p(out.red.a, out.red.b);
      monitor(out.red, out.bundle);
    }

    out.c_c = cfg_.c * lipschitz_c(out.bundle);
    if (step(out.red.c, grad_c(out.bundle, full_, out.red.c), out.c_c, "C")) {
      out.red.c = feasible::project_c(out.red.c, pattern_);
      check_feasible(out.red, "C");
      out.bundle.y = solver_.solve_y(out.red.a, out.red.c);
      out.bundle.q = solver_.solve_q(out.red.a, out.red.c);
      monitor(out.red, out.bundle);
    }
    return out;
  }

  double residual(const ReducedTriple& red, const GradientBundle& bundle) const {
    return stationarity_residual(red, bundle, full_, box_, pattern_);
  }

 private:
  numkit::SylvesterOptions known_stable_options() const {
    numkit::SylvesterOptions options;
    options.left_known_stable = true;
    return options;
  }

  // Applies block -= gradient / constant. Returns false when the block is
  // left untouched because its gradient vanishes.
  bool step(DenseMatrix& block, const DenseMatrix& gradient, double constant, const char* name) {
    if (gradient.isZero(0.0)) return false;
    if (!(constant > 0.0) || !std::isfinite(constant)) {
      throw DegenerateStep(std::string("Lipschitz constant of the ") + name +
                           "_r block is zero while its gradient is not");
    }
    block -= gradient / constant;
    return true;
  }

  void check_feasible(const ReducedTriple& red, const char* block) {
    const auto cert = feasible::certify(red.a, red.b, red.c, box_, pattern_);
    if (!cert.passes) {
      warn_once(std::string("iterate failed the feasibility certificate after the ") + block +
                "_r update");
    }
  }

  void monitor(const ReducedTriple& red, const GradientBundle& bundle) {
    if (red.b.norm() < 1e-12) warn_once("||B_r||_F fell below 1e-12");
    if (red.c.norm() < 1e-12) warn_once("||C_r||_F fell below 1e-12");
    if (bundle.p.rows() > 0) {
      Eigen::SelfAdjointEigenSolver<DenseMatrix> ep(bundle.p, Eigen::EigenvaluesOnly);
      if (ep.eigenvalues().minCoeff() < 1e-14) {
        warn_once("controllability Gramian P has minimum eigenvalue below 1e-14");
      }
      Eigen::SelfAdjointEigenSolver<DenseMatrix> eq(bundle.q, Eigen::EigenvaluesOnly);
      if (eq.eigenvalues().minCoeff() < 1e-14) {
        warn_once("observability Gramian Q has minimum eigenvalue below 1e-14");
      }
    }
  }

  void warn_once(const std::string& message) {
    for (const auto& w : result_.warnings) {
      if (w == message) return;
    }
    result_.warnings.push_back(message);
  }

 public:
  struct DegenerateStep : Error {
    using Error::Error;
  };

 private:
  const StateSpaceModel& full_;
  const feasible::StabilityBox& box_;
  const feasible::SparsityPattern& pattern_;
  const AlgoConfig& cfg_;
  RunResult& result_;
  BundleSolver solver_;
};

void check_inputs(const StateSpaceModel& full, const StateSpaceModel& red0,
                  const feasible::StabilityBox& box, const feasible::SparsityPattern& pattern) {
  const Index r = red0.order();
  if (red0.inputs() != full.inputs() || red0.outputs() != full.outputs()) {
    throw PreconditionError("reduced model input/output counts differ from the full model");
  }
  if (box.states() != r || pattern.states() != r || pattern.inputs() != red0.inputs() ||
      pattern.outputs() != red0.outputs()) {
    throw PreconditionError("box or pattern dimensions do not match the reduced model");
  }
  const double abscissa = full.is_sparse() ? numkit::spectral_abscissa(full.sparse_a())
                                           : numkit::spectral_abscissa(full.dense_a());
  if (!(abscissa < 0.0)) {
    throw PreconditionError("full model is not stable (spectral abscissa " +
                            std::to_string(abscissa) + ")");
  }
}

}  // namespace

RunResult run_algorithm1(const StateSpaceModel& full, const StateSpaceModel& red0,
                         const feasible::StabilityBox& box,
                         const feasible::SparsityPattern& pattern, const AlgoConfig& cfg) {
  cfg.validate();
  check_inputs(full, red0, box, pattern);

  const auto start = Clock::now();
  RunResult result;
  result.c1 = cfg.c1;
  result.c2 = cfg.c2;

  ReducedTriple red = ReducedTriple::from_model(red0);
  red.a = feasible::project_a(red.a, box, pattern);
  red.b = feasible::project_b(red.b, pattern);
  red.c = feasible::project_c(red.c, pattern);
  result.reduced = red;

  Loop loop(full, box, pattern, cfg, result);
  GradientBundle bundle;
  double f = std::numeric_limits<double>::quiet_NaN();
  double res = f;
  result.initial_f = result.final_f = f;
  result.initial_residual = result.final_residual = res;
  bool retried_once = false;
  try {
    bundle = loop.assemble(red);
    f = objective_f(bundle, full, red);
    res = loop.residual(red, bundle);
    result.initial_f = result.final_f = f;
    result.initial_residual = result.final_residual = res;
    while (res > cfg.stat_tol && result.iterations < cfg.max_iters) {
      CycleOutcome next = loop.cycle(red, bundle, result.c1, result.c2);
      double f_next = objective_f(next.bundle, full, next.red);
      const double slack = 1e-10 * (1.0 + std::abs(f));
      if (f_next > f + slack && cfg.adaptive && !retried_once) {
        retried_once = true;
        result.c1 *= 2.0;
        result.c2 *= 2.0;
        result.warnings.push_back("cycle " + std::to_string(result.iterations + 1) +
                                  " increased f; retrying with doubled c1, c2");
        next = loop.cycle(red, bundle, result.c1, result.c2);
        f_next = objective_f(next.bundle, full, next.red);
      }
      if (f_next > f + slack) {
        ++result.descent_violations;
        result.warnings.push_back("cycle " + std::to_string(result.iterations + 1) +
                                  " increased f from " + std::to_string(f) + " to " +
                                  std::to_string(f_next));
      }

      red = std::move(next.red);
      bundle = std::move(next.bundle);
      f = f_next;
      res = loop.residual(red, bundle);
      ++result.iterations;
      result.reduced = red;
      result.final_f = f;
      result.final_residual = res;
      if (cfg.trace) {
        const double ms =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        result.trace.append({result.iterations, f, res, next.c_a, next.c_b, next.c_c, ms});
      }
    }
    result.status = res <= cfg.stat_tol ? RunStatus::kConverged : RunStatus::kMaxIterations;
  } catch (const Loop::DegenerateStep& e) {
    result.status = RunStatus::kDegenerate;
    result.message = e.what();
  } catch (const SolverError& e) {
    result.status = RunStatus::kSolverFailure;
    result.message = e.what();
  } catch (const PreconditionError& e) {
    // An iterate that leaves the stable set surfaces as a solver precondition.
    result.status = RunStatus::kSolverFailure;
    result.message = e.what();
  }

  result.certificate = feasible::certify(result.reduced.a, result.reduced.b, result.reduced.c,
                                         box, pattern);
  return result;
}

}  // namespace posred::optimizer
