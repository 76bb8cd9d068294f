#include "posred/numkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "posred/error.hpp"

namespace posred::numkit {
namespace {

void require_square(Index rows, Index cols) {
  if (rows != cols) {
    throw PreconditionError("spectral abscissa needs a square matrix, got " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (rows == 0) throw PreconditionError("spectral abscissa of an empty matrix");
}

double dense_abscissa(const DenseMatrix& m) {
  if (asymmetry(m) == 0.0) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError("symmetric eigensolver did not converge");
    return es.eigenvalues().maxCoeff();
  }
  Eigen::EigenSolver<DenseMatrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw SolverError("eigensolver did not converge");
  return es.eigenvalues().real().maxCoeff();
}

// rho(M + sI) - s for Metzler M. `apply` computes y = M x.
template <class Apply>
double shifted_power_abscissa(Index n, double shift, Apply apply,
                              const AbscissaOptions& options) {
  const Index cap = options.max_iterations > 0 ? options.max_iterations : 10 * n;
  Vector x = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Vector y(n);
  double previous = 0.0;
  for (Index it = 0; it < cap; ++it) {
    apply(x, y);
    y += shift * x;
    const double rayleigh = x.dot(y);
    const double norm = y.norm();
    if (norm == 0.0) return -shift;  // nilpotent shifted operator: rho = 0
    x = y / norm;
    if (it > 0 &&
        std::abs(rayleigh - previous) <= options.tolerance * std::max(1.0, std::abs(rayleigh))) {
      return rayleigh - shift;
    }
    previous = rayleigh;
  }
  throw SolverError("shifted power iteration did not converge in " + std::to_string(cap) +
                    " iterations");
}

}  // namespace

double spectral_abscissa(const DenseMatrix& m, const AbscissaOptions& options) {
  require_square(m.rows(), m.cols());
  if (!m.allFinite()) throw PreconditionError("spectral abscissa of a non-finite matrix");
  if (m.rows() <= options.dense_threshold) return dense_abscissa(m);

  if (min_off_diagonal(m) < 0.0) {
    throw PreconditionError("large non-Metzler matrix: power-iteration abscissa needs Metzler input");
  }
  const double shift = m.diagonal().cwiseAbs().maxCoeff();
  return shifted_power_abscissa(
      m.rows(), shift, [&](const Vector& x, Vector& y) { y.noalias() = m * x; }, options);
}

double spectral_abscissa(const SparseMatrix& m, const AbscissaOptions& options) {
  require_square(m.rows(), m.cols());
  if (!all_finite(m)) throw PreconditionError("spectral abscissa of a non-finite matrix");
  if (m.rows() <= options.dense_threshold) return dense_abscissa(DenseMatrix(m));

  double shift = 0.0;
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.row() == it.col()) {
        shift = std::max(shift, std::abs(it.value()));
      } else if (it.value() < 0.0) {
        throw PreconditionError(
            "large non-Metzler matrix: power-iteration abscissa needs Metzler input");
      }
    }
  }
  return shifted_power_abscissa(
      m.rows(), shift, [&](const Vector& x, Vector& y) { y.noalias() = m * x; }, options);
}

}  // namespace posred::numkit
