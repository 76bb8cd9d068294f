#include "posred/feasible/perron.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "posred/error.hpp"
#include "posred/feasible/graph.hpp"

namespace posred::feasible {
namespace {

// Dominant eigenvector of the nonnegative primitive matrix n. Iterates
// x <- n x / |n x| until the Rayleigh quotient settles; if half the budget
// passes without convergence, switches to the averaged map (n + nu I) / 2,
// which damps the oscillation caused by periodic graphs.
Vector dominant_vector(const DenseMatrix& n, const PerronOptions& options) {
  const Index size = n.rows();
  Vector x = Vector::Constant(size, 1.0 / std::sqrt(static_cast<double>(size)));
  Vector y(size);
  double previous = 0.0;
  bool averaged = false;
  for (Index it = 0; it < options.max_iterations; ++it) {
    y.noalias() = n * x;
    const double nu = x.dot(y);
    if (averaged) y = 0.5 * (y + nu * x);
    const double norm = y.norm();
    if (!(norm > 0.0)) throw SolverError("Perron power iteration collapsed to zero");
    const bool settled =
        it > 0 && std::abs(nu - previous) <= options.tolerance * std::max(1.0, std::abs(nu));
    x = y / norm;
    if (settled) return x;
    previous = nu;
    if (!averaged && it == options.max_iterations / 2) averaged = true;
  }
  throw SolverError("Perron power iteration did not converge in " +
                    std::to_string(options.max_iterations) + " iterations");
}

// Power iteration stops on the Rayleigh quotient; a slowly mixing matrix can
// leave the vector short of the residual target. A few inverse-iteration
// steps at the converged eigenvalue finish the job.
void polish(const DenseMatrix& a, double& mu, Vector& x, double target) {
  for (int step = 0; step < 4; ++step) {
    mu = x.dot(a * x) / x.squaredNorm();
    if ((a * x - mu * x).norm() <= target) return;
    DenseMatrix shifted = a;
    shifted.diagonal().array() -= mu;
    Vector next = shifted.partialPivLu().solve(x);
    if (!next.allFinite() || next.norm() == 0.0) return;
    if (next.sum() < 0.0) next = -next;
    x = next / next.norm();
  }
  mu = x.dot(a * x) / x.squaredNorm();
}

}  // namespace

PerronData perron(const DenseMatrix& a0, const PerronOptions& options) {
  if (a0.rows() != a0.cols() || a0.rows() == 0) {
    throw PreconditionError("Perron analysis needs a nonempty square matrix");
  }
  if (!a0.allFinite()) throw PreconditionError("Perron analysis of a non-finite matrix");
  if (numkit::min_off_diagonal(a0) < 0.0) {
    throw PreconditionError("Perron analysis needs a Metzler matrix");
  }
  if (a0.rows() > 1 && !check_irreducible(a0)) {
    throw PreconditionError("reduced state matrix is reducible; strongly connected components: " +
                            format_components(strongly_connected_components(a0)));
  }

  const double shift = 1.0 + a0.diagonal().cwiseAbs().maxCoeff();
  DenseMatrix n = a0;
  n.diagonal().array() += shift;

  Vector v = dominant_vector(n, options);
  Vector w = dominant_vector(n.transpose(), options);
  const double target = 1e-12 * a0.norm();
  double mu_right = 0.0;
  double mu_left = 0.0;
  polish(a0, mu_right, v, target);
  const DenseMatrix a0t = a0.transpose();
  polish(a0t, mu_left, w, target);

  if (v.sum() < 0.0) v = -v;
  if (w.sum() < 0.0) w = -w;
  if (!(v.minCoeff() > 0.0) || !(w.minCoeff() > 0.0)) {
    throw SolverError("Perron eigenvectors are not strictly positive");
  }
  const double mu1 = mu_right;
  if (!(mu1 < 0.0)) {
    throw PreconditionError("reduced state matrix is not stable: Perron eigenvalue " +
                            std::to_string(mu1));
  }
  v /= v.norm();
  w /= w.dot(v);
  return {mu1, std::move(v), std::move(w)};
}

}  // namespace posred::feasible
