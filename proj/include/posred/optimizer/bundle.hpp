#pragma once

#include <optional>

#include "posred/feasible/box.hpp"
#include "posred/feasible/pattern.hpp"
#include "posred/numkit/sylvester.hpp"
#include "posred/sysmodel/state_space.hpp"

namespace posred::optimizer {

using numkit::DenseMatrix;
using numkit::Index;
using numkit::SparseMatrix;
using sysmodel::StateSpaceModel;

/// Solutions of
///   A X + X A_r^T + B B_r^T = 0        A^T Y + Y A_r - C^T C_r = 0
///   A_r P + P A_r^T + B_r B_r^T = 0    A_r^T Q + Q A_r + C_r^T C_r = 0
/// for one reduced triple. P and Q are the reduced Gramians.
struct GradientBundle {
  DenseMatrix x;
  DenseMatrix y;
  DenseMatrix p;
  DenseMatrix q;
};

/// The dense reduced triple the optimizer works on.
struct ReducedTriple {
  DenseMatrix a;
  DenseMatrix b;
  DenseMatrix c;

  static ReducedTriple from_model(const StateSpaceModel& model);
  StateSpaceModel to_model() const;
};

/// Solves the bundle equations for a fixed full model, keeping A^T around
/// so repeated solves do not re-transpose a large sparse matrix.
class BundleSolver {
 public:
  explicit BundleSolver(const StateSpaceModel& full, numkit::SylvesterOptions options = {});

  const StateSpaceModel& full() const { return full_; }

  DenseMatrix solve_x(const DenseMatrix& ar, const DenseMatrix& br) const;
  DenseMatrix solve_y(const DenseMatrix& ar, const DenseMatrix& cr) const;
  DenseMatrix solve_p(const DenseMatrix& ar, const DenseMatrix& br) const;
  DenseMatrix solve_q(const DenseMatrix& ar, const DenseMatrix& cr) const;
  GradientBundle assemble(const ReducedTriple& red) const;

 private:
  const StateSpaceModel& full_;
  std::optional<SparseMatrix> sparse_at_;
  numkit::SylvesterOptions options_;
};

GradientBundle assemble_bundle(const StateSpaceModel& full, const StateSpaceModel& red,
                               const numkit::SylvesterOptions& options = {});

/// f = 1/2 tr(C_r P C_r^T - 2 C_r X^T C^T).
double objective_f(const GradientBundle& bundle, const StateSpaceModel& full,
                   const ReducedTriple& red);
double objective_f(const GradientBundle& bundle, const StateSpaceModel& full,
                   const StateSpaceModel& red);
/// The equivalent observability form 1/2 tr(B_r^T Q B_r + 2 B^T Y B_r).
double objective_f_dual(const GradientBundle& bundle, const StateSpaceModel& full,
                        const ReducedTriple& red);
double objective_f_dual(const GradientBundle& bundle, const StateSpaceModel& full,
                        const StateSpaceModel& red);

/// Q P + Y^T X
DenseMatrix grad_a(const GradientBundle& bundle);
/// Q B_r + Y^T B
DenseMatrix grad_b(const GradientBundle& bundle, const StateSpaceModel& full,
                   const DenseMatrix& br);
/// C_r P - C X
DenseMatrix grad_c(const GradientBundle& bundle, const StateSpaceModel& full,
                   const DenseMatrix& cr);

/// ||Q||_F, exact Lipschitz constant of grad_b in B_r.
double lipschitz_b(const GradientBundle& bundle);
/// ||P||_F, exact Lipschitz constant of grad_c in C_r.
double lipschitz_c(const GradientBundle& bundle);
/// (c1 + c2 ||B_r|| ||C_r||) ||B_r|| ||C_r||, Frobenius norms.
double lipschitz_a(const DenseMatrix& br, const DenseMatrix& cr, double c1, double c2);

/// Projected-gradient residual with unit step:
///   sqrt(sum over blocks of ||X - proj(X - grad_X f)||_F^2).
double stationarity_residual(const ReducedTriple& red, const GradientBundle& bundle,
                             const StateSpaceModel& full, const feasible::StabilityBox& box,
                             const feasible::SparsityPattern& pattern);

}  // namespace posred::optimizer
