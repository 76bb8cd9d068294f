#pragma once

#include "posred/numkit/matrix.hpp"

namespace posred::numkit {

struct AbscissaOptions {
  /// Matrices up to this order are handled by a full eigendecomposition.
  Index dense_threshold = 2000;
  /// Relative change of the Rayleigh quotient that ends power iteration.
  double tolerance = 1e-12;
  /// Power iteration cap; zero selects 10 * order.
  Index max_iterations = 0;
};

/// Maximum real part over the eigenvalues of a square matrix.
///
/// Small matrices use a dense eigensolver (symmetric inputs take the
/// self-adjoint solver). Larger ones must be Metzler: the abscissa is then
/// rho(M + sI) - s, with s making M + sI nonnegative, found by power
/// iteration.
double spectral_abscissa(const DenseMatrix& m, const AbscissaOptions& options = {});
double spectral_abscissa(const SparseMatrix& m, const AbscissaOptions& options = {});

}  // namespace posred::numkit
