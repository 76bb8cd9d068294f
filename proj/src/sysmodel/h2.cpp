#include "posred/sysmodel/h2.hpp"

#include <algorithm>
#include <string>

#include "posred/error.hpp"
#include "posred/numkit/sylvester.hpp"

namespace posred::sysmodel {

double h2_norm_squared(const StateSpaceModel& model, const H2Options& options) {
  if (model.order() > options.gramian_size_cap) {
    throw SizeCapError("full-order Gramian of order " + std::to_string(model.order()) +
                       " exceeds the cap of " + std::to_string(options.gramian_size_cap));
  }
  const DenseMatrix bbt = model.b() * model.b().transpose();
  const DenseMatrix gramian = numkit::solve_lyapunov(model.a_dense(), bbt);
  const double value = (model.c() * gramian * model.c().transpose()).trace();
  return std::max(value, 0.0);
}

double h2_cross_objective(const StateSpaceModel& full, const StateSpaceModel& reduced) {
  if (full.inputs() != reduced.inputs() || full.outputs() != reduced.outputs()) {
    throw PreconditionError("full and reduced models differ in input/output counts");
  }
  const DenseMatrix ar = reduced.a_dense();
  const DenseMatrix& br = reduced.b();
  const DenseMatrix& cr = reduced.c();
  const DenseMatrix x = std::visit(
      [&](const auto& a) {
        return numkit::solve_sylvester(a, ar, full.b() * br.transpose());
      },
      full.a());
  const DenseMatrix p = numkit::solve_lyapunov(ar, br * br.transpose());
  return 0.5 * ((cr * p * cr.transpose()).trace() -
                2.0 * (cr * x.transpose() * full.c().transpose()).trace());
}

double h2_error_squared(const StateSpaceModel& full, const StateSpaceModel& reduced,
                        double full_norm_squared) {
  const double value = 2.0 * h2_cross_objective(full, reduced) + full_norm_squared;
  if (value >= 0.0) return value;
  if (value >= -1e-8 * full_norm_squared) return 0.0;
  throw SolverError("squared H2 error evaluated to " + std::to_string(value) +
                    ", below round-off level");
}

double h2_error_squared(const StateSpaceModel& full, const StateSpaceModel& reduced,
                        const H2Options& options) {
  if (full.inputs() != reduced.inputs() || full.outputs() != reduced.outputs()) {
    throw PreconditionError("full and reduced models differ in input/output counts");
  }
  return h2_error_squared(full, reduced, h2_norm_squared(full, options));
}

}  // namespace posred::sysmodel
