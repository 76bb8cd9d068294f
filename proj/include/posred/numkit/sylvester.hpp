#pragma once

#include <variant>

#include "posred/numkit/matrix.hpp"

namespace posred::numkit {

// Every Sylvester and Lyapunov equation in the library is brought into the
// normal form
//
//     left * Z + Z * right^T + constant = 0
//
// with left n x n (dense or sparse) and right r x r dense.

struct SylvesterOptions {
  double rtol = 1e-10;
  /// Eigenvector condition number above which the sparse path switches from
  /// diagonalising `right` to a Schur back-substitution.
  double max_eigenvector_condition = 1e8;
  /// The caller has already certified that `left` is stable. Avoids a
  /// repeated eigen-analysis of a large fixed matrix in iterative loops.
  bool left_known_stable = false;
};

struct SylvesterProblem {
  std::variant<SparseMatrix, DenseMatrix> left;
  DenseMatrix right;
  DenseMatrix constant;
};

/// Bartels-Stewart on the complex Schur forms of both factors. O(n^3).
DenseMatrix solve_sylvester(const DenseMatrix& left, const DenseMatrix& right,
                            const DenseMatrix& constant,
                            const SylvesterOptions& options = {});

/// Large sparse `left`, small `right`: decouples the columns through the
/// eigendecomposition (or complex Schur form) of `right` and performs one
/// sparse LU per distinct shift.
DenseMatrix solve_sylvester(const SparseMatrix& left, const DenseMatrix& right,
                            const DenseMatrix& constant,
                            const SylvesterOptions& options = {});

DenseMatrix solve_sylvester(const SylvesterProblem& problem,
                            const SylvesterOptions& options = {});

/// M Z + Z M^T + S = 0 for symmetric S; the result is symmetrised.
DenseMatrix solve_lyapunov(const DenseMatrix& m, const DenseMatrix& s,
                           const SylvesterOptions& options = {});

/// ||left Z + Z right^T + constant||_F
double sylvester_residual(const DenseMatrix& left, const DenseMatrix& right,
                          const DenseMatrix& constant, const DenseMatrix& z);
double sylvester_residual(const SparseMatrix& left, const DenseMatrix& right,
                          const DenseMatrix& constant, const DenseMatrix& z);

/// rtol-free part of the acceptance bound:
/// ||left||_F ||Z||_F + ||Z||_F ||right||_F + ||constant||_F.
double sylvester_residual_scale(double left_norm, const DenseMatrix& right,
                                const DenseMatrix& constant, const DenseMatrix& z);

}  // namespace posred::numkit
