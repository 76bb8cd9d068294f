#include "posred/optimizer/bundle.hpp"

#include <cmath>
#include <string>

#include "posred/error.hpp"
#include "posred/feasible/projection.hpp"

namespace posred::optimizer {

namespace {

const DenseMatrix& finite_constant(const DenseMatrix& constant, const char* which) {
  if (!constant.allFinite()) {
    throw SolverError(std::string("overflow forming the constant of the ") + which + " equation");
  }
  return constant;
}

}  // namespace

ReducedTriple ReducedTriple::from_model(const StateSpaceModel& model) {
  return {model.a_dense(), model.b(), model.c()};
}

StateSpaceModel ReducedTriple::to_model() const { return {a, b, c}; }

BundleSolver::BundleSolver(const StateSpaceModel& full, numkit::SylvesterOptions options)
    : full_(full), options_(options) {
  if (full.is_sparse()) {
    sparse_at_ = SparseMatrix(full.sparse_a().transpose());
    sparse_at_->makeCompressed();
  }
}

DenseMatrix BundleSolver::solve_x(const DenseMatrix& ar, const DenseMatrix& br) const {
  const DenseMatrix constant = finite_constant(full_.b() * br.transpose(), "X");
  if (full_.is_sparse()) return numkit::solve_sylvester(full_.sparse_a(), ar, constant, options_);
  return numkit::solve_sylvester(full_.dense_a(), ar, constant, options_);
}

DenseMatrix BundleSolver::solve_y(const DenseMatrix& ar, const DenseMatrix& cr) const {
  const DenseMatrix constant = finite_constant(-(full_.c().transpose() * cr), "Y");
  const DenseMatrix art = ar.transpose();
  if (sparse_at_) return numkit::solve_sylvester(*sparse_at_, art, constant, options_);
  const DenseMatrix at = full_.dense_a().transpose();
  return numkit::solve_sylvester(at, art, constant, options_);
}

DenseMatrix BundleSolver::solve_p(const DenseMatrix& ar, const DenseMatrix& br) const {
  numkit::SylvesterOptions small = options_;
  small.left_known_stable = false;
  return numkit::solve_lyapunov(ar, finite_constant(br * br.transpose(), "P"), small);
}

DenseMatrix BundleSolver::solve_q(const DenseMatrix& ar, const DenseMatrix& cr) const {
  numkit::SylvesterOptions small = options_;
  small.left_known_stable = false;
  return numkit::solve_lyapunov(ar.transpose(), finite_constant(cr.transpose() * cr, "Q"), small);
}

GradientBundle BundleSolver::assemble(const ReducedTriple& red) const {
  if (red.b.cols() != full_.inputs() || red.c.rows() != full_.outputs()) {
    throw PreconditionError("reduced model input/output counts differ from the full model");
  }
  return {solve_x(red.a, red.b), solve_y(red.a, red.c), solve_p(red.a, red.b),
          solve_q(red.a, red.c)};
}

GradientBundle assemble_bundle(const StateSpaceModel& full, const StateSpaceModel& red,
                               const numkit::SylvesterOptions& options) {
  return BundleSolver(full, options).assemble(ReducedTriple::from_model(red));
}

double objective_f(const GradientBundle& bundle, const StateSpaceModel& full,
                   const ReducedTriple& red) {
  const DenseMatrix cx = full.c() * bundle.x;
  return 0.5 * ((red.c * bundle.p * red.c.transpose()).trace() -
                2.0 * red.c.cwiseProduct(cx).sum());
}

double objective_f(const GradientBundle& bundle, const StateSpaceModel& full,
                   const StateSpaceModel& red) {
  return objective_f(bundle, full, ReducedTriple::from_model(red));
}

double objective_f_dual(const GradientBundle& bundle, const StateSpaceModel& full,
                        const ReducedTriple& red) {
  const DenseMatrix bty = full.b().transpose() * bundle.y;
  return 0.5 * ((red.b.transpose() * bundle.q * red.b).trace() +
                2.0 * (bty * red.b).trace());
}

double objective_f_dual(const GradientBundle& bundle, const StateSpaceModel& full,
                        const StateSpaceModel& red) {
  return objective_f_dual(bundle, full, ReducedTriple::from_model(red));
}

DenseMatrix grad_a(const GradientBundle& bundle) {
  return bundle.q * bundle.p + bundle.y.transpose() * bundle.x;
}

DenseMatrix grad_b(const GradientBundle& bundle, const StateSpaceModel& full,
                   const DenseMatrix& br) {
  return bundle.q * br + bundle.y.transpose() * full.b();
}

DenseMatrix grad_c(const GradientBundle& bundle, const StateSpaceModel& full,
                   const DenseMatrix& cr) {
  return cr * bundle.p - full.c() * bundle.x;
}

double lipschitz_b(const GradientBundle& bundle) { return bundle.q.norm(); }

double lipschitz_c(const GradientBundle& bundle) { return bundle.p.norm(); }

double lipschitz_a(const DenseMatrix& br, const DenseMatrix& cr, double c1, double c2) {
  const double bc = br.norm() * cr.norm();
  return (c1 + c2 * bc) * bc;
}

double stationarity_residual(const ReducedTriple& red, const GradientBundle& bundle,
                             const StateSpaceModel& full, const feasible::StabilityBox& box,
                             const feasible::SparsityPattern& pattern) {
  const DenseMatrix da = red.a - feasible::project_a(red.a - grad_a(bundle), box, pattern);
  const DenseMatrix db = red.b - feasible::project_b(red.b - grad_b(bundle, full, red.b), pattern);
  const DenseMatrix dc = red.c - feasible::project_c(red.c - grad_c(bundle, full, red.c), pattern);
  return std::sqrt(da.squaredNorm() + db.squaredNorm() + dc.squaredNorm());
}

}  // namespace posred::optimizer
