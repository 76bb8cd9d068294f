#include "posred/numkit/sylvester.hpp"

#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include "posred/error.hpp"
#include "posred/numkit/spectral.hpp"

namespace posred::numkit {
namespace {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CSparse = Eigen::SparseMatrix<Complex>;

void check_shapes(Index left_rows, Index left_cols, const DenseMatrix& right,
                  const DenseMatrix& constant) {
  if (left_rows != left_cols) throw PreconditionError("Sylvester: left factor is not square");
  if (right.rows() != right.cols()) throw PreconditionError("Sylvester: right factor is not square");
  if (constant.rows() != left_rows || constant.cols() != right.rows()) {
    throw PreconditionError("Sylvester: constant is " + std::to_string(constant.rows()) + "x" +
                            std::to_string(constant.cols()) + ", expected " +
                            std::to_string(left_rows) + "x" + std::to_string(right.rows()));
  }
  if (!right.allFinite() || !constant.allFinite()) {
    throw PreconditionError("Sylvester: non-finite data");
  }
}

void require_stable(double abscissa, const char* which) {
  if (!(abscissa < 0.0)) {
    throw PreconditionError(std::string("Sylvester: ") + which +
                            " factor is not stable (spectral abscissa " +
                            std::to_string(abscissa) + ")");
  }
}

void check_residual(double residual, double scale, double rtol) {
  if (!(residual <= rtol * scale)) {
    throw SolverError("Sylvester residual " + std::to_string(residual) + " exceeds " +
                      std::to_string(rtol) + " x " + std::to_string(scale));
  }
}

// Factorisations of (left + shift I), one per distinct shift. Shifts with
// negative imaginary part reuse the factorisation of their conjugate, which
// is valid because `left` is real.
class ShiftedSolver {
 public:
  explicit ShiftedSolver(const SparseMatrix& left) : left_(left) {
    identity_.resize(left.rows(), left.cols());
    identity_.setIdentity();
  }

  CVector solve(Complex shift, const CVector& rhs) {
    if (shift.imag() < 0.0) {
      return solve(std::conj(shift), rhs.conjugate()).conjugate();
    }
    CVector out(rhs.size());
    if (shift.imag() == 0.0) {
      auto& lu = real_factor(shift.real());
      DenseMatrix parts(rhs.size(), 2);
      parts.col(0) = rhs.real();
      parts.col(1) = rhs.imag();
      DenseMatrix sol = lu.solve(parts);
      out.real() = sol.col(0);
      out.imag() = sol.col(1);
    } else {
      auto& lu = complex_factor(shift);
      out = lu.solve(rhs);
    }
    if (!out.allFinite()) throw SolverError("shifted sparse solve produced non-finite values");
    return out;
  }

 private:
  using RealLU = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;
  using ComplexLU = Eigen::SparseLU<CSparse, Eigen::COLAMDOrdering<int>>;

  RealLU& real_factor(double shift) {
    auto it = real_.find(shift);
    if (it != real_.end()) return *it->second;
    auto lu = std::make_unique<RealLU>();
    SparseMatrix shifted = left_ + shift * identity_;
    lu->compute(shifted);
    if (lu->info() != Eigen::Success) {
      throw SolverError("shifted system singular to working precision (shift " +
                        std::to_string(shift) + ")");
    }
    return *real_.emplace(shift, std::move(lu)).first->second;
  }

  ComplexLU& complex_factor(Complex shift) {
    auto key = std::make_pair(shift.real(), shift.imag());
    auto it = complex_.find(key);
    if (it != complex_.end()) return *it->second;
    auto lu = std::make_unique<ComplexLU>();
    CSparse shifted = left_.cast<Complex>() + shift * identity_.cast<Complex>();
    lu->compute(shifted);
    if (lu->info() != Eigen::Success) {
      throw SolverError("shifted complex system singular to working precision");
    }
    return *complex_.emplace(key, std::move(lu)).first->second;
  }

  const SparseMatrix& left_;
  SparseMatrix identity_;
  std::map<double, std::unique_ptr<RealLU>> real_;
  std::map<std::pair<double, double>, std::unique_ptr<ComplexLU>> complex_;
};

// right = V diag(lambda) V^{-1}; with Z = W V^T the columns decouple into
// (left + lambda_j I) w_j = -(constant V^{-T})_j.
DenseMatrix sparse_by_eigenvectors(ShiftedSolver& solver, const CMatrix& vectors,
                                   const CVector& values, const DenseMatrix& constant) {
  const CMatrix inv_t = vectors.transpose().partialPivLu().inverse();
  const CMatrix transformed = constant.cast<Complex>() * inv_t;
  CMatrix w(constant.rows(), constant.cols());
  for (Index j = 0; j < w.cols(); ++j) {
    w.col(j) = solver.solve(values(j), -transformed.col(j));
  }
  return (w * vectors.transpose()).real();
}

// right^T = U T U^H with T upper triangular; with Z = W U^H, column j solves
// (left + T_jj I) w_j = -(constant U)_j - sum_{i<j} T_ij w_i.
DenseMatrix sparse_by_schur(ShiftedSolver& solver, const DenseMatrix& right,
                            const DenseMatrix& constant) {
  Eigen::ComplexSchur<DenseMatrix> schur(right.transpose());
  if (schur.info() != Eigen::Success) throw SolverError("complex Schur form did not converge");
  const CMatrix& t = schur.matrixT();
  const CMatrix& u = schur.matrixU();
  const CMatrix transformed = constant.cast<Complex>() * u;
  CMatrix w(constant.rows(), constant.cols());
  for (Index j = 0; j < w.cols(); ++j) {
    CVector rhs = -transformed.col(j);
    if (j > 0) rhs.noalias() -= w.leftCols(j) * t.col(j).head(j);
    w.col(j) = solver.solve(t(j, j), rhs);
  }
  return (w * u.adjoint()).real();
}

// m = V diag(lambda) V^T; in that basis the solution is
// -(V^T s V)_ij / (lambda_i + lambda_j).
DenseMatrix lyapunov_symmetric(const DenseMatrix& m, const DenseMatrix& s) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(m);
  if (eig.info() != Eigen::Success) throw SolverError("symmetric eigensolver did not converge");
  const Vector& lambda = eig.eigenvalues();
  require_stable(lambda.maxCoeff(), "left");
  const DenseMatrix& v = eig.eigenvectors();
  DenseMatrix w = v.transpose() * s * v;
  for (Index j = 0; j < w.cols(); ++j) {
    for (Index i = 0; i < w.rows(); ++i) w(i, j) = -w(i, j) / (lambda(i) + lambda(j));
  }
  return v * w * v.transpose();
}

// m = U T U^H and m^T = U T^H U^H, so with Z = U W U^H the columns of W
// solve (T + conj(T_jj) I) w_j = -(U^H s U)_j - sum_{k>j} conj(T_jk) w_k.
DenseMatrix lyapunov_schur(const DenseMatrix& m, const DenseMatrix& s) {
  Eigen::ComplexSchur<DenseMatrix> schur(m);
  if (schur.info() != Eigen::Success) throw SolverError("complex Schur form did not converge");
  const CMatrix& t = schur.matrixT();
  const CMatrix& u = schur.matrixU();
  require_stable(t.diagonal().real().maxCoeff(), "left");
  const CMatrix transformed = u.adjoint() * s.cast<Complex>() * u;
  const Index n = m.rows();
  CMatrix w(n, n);
  CMatrix shifted = t;
  for (Index j = n - 1; j >= 0; --j) {
    CVector rhs = -transformed.col(j);
    const Index tail = n - 1 - j;
    if (tail > 0) rhs.noalias() -= w.rightCols(tail) * t.row(j).tail(tail).adjoint();
    shifted.diagonal() = t.diagonal().array() + std::conj(t(j, j));
    if (shifted.diagonal().cwiseAbs().minCoeff() == 0.0) {
      throw SolverError("Lyapunov: singular shifted triangular system");
    }
    w.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return (u * w * u.adjoint()).real();
}

}  // namespace

double sylvester_residual_scale(double left_norm, const DenseMatrix& right,
                                const DenseMatrix& constant, const DenseMatrix& z) {
  const double zn = z.norm();
  return left_norm * zn + zn * right.norm() + constant.norm();
}

double sylvester_residual(const DenseMatrix& left, const DenseMatrix& right,
                          const DenseMatrix& constant, const DenseMatrix& z) {
  DenseMatrix r = left * z;
  r.noalias() += z * right.transpose();
  r += constant;
  return r.norm();
}

double sylvester_residual(const SparseMatrix& left, const DenseMatrix& right,
                          const DenseMatrix& constant, const DenseMatrix& z) {
  DenseMatrix r = left * z;
  r.noalias() += z * right.transpose();
  r += constant;
  return r.norm();
}

DenseMatrix solve_sylvester(const DenseMatrix& left, const DenseMatrix& right,
                            const DenseMatrix& constant, const SylvesterOptions& options) {
  check_shapes(left.rows(), left.cols(), right, constant);
  if (!left.allFinite()) throw PreconditionError("Sylvester: non-finite data");
  if (constant.size() == 0) return DenseMatrix::Zero(constant.rows(), constant.cols());

  Eigen::ComplexSchur<DenseMatrix> left_schur(left);
  Eigen::ComplexSchur<DenseMatrix> right_schur(right.transpose());
  if (left_schur.info() != Eigen::Success || right_schur.info() != Eigen::Success) {
    throw SolverError("complex Schur form did not converge");
  }
  const CMatrix& t1 = left_schur.matrixT();
  const CMatrix& u1 = left_schur.matrixU();
  const CMatrix& t2 = right_schur.matrixT();
  const CMatrix& u2 = right_schur.matrixU();
  if (!options.left_known_stable) require_stable(t1.diagonal().real().maxCoeff(), "left");
  require_stable(t2.diagonal().real().maxCoeff(), "right");

  const CMatrix transformed = u1.adjoint() * constant.cast<Complex>() * u2;
  CMatrix w(constant.rows(), constant.cols());
  CMatrix shifted = t1;
  for (Index j = 0; j < w.cols(); ++j) {
    CVector rhs = -transformed.col(j);
    if (j > 0) rhs.noalias() -= w.leftCols(j) * t2.col(j).head(j);
    shifted.diagonal() = t1.diagonal().array() + t2(j, j);
    if (shifted.diagonal().cwiseAbs().minCoeff() == 0.0) {
      throw SolverError("Sylvester: left and -right share an eigenvalue");
    }
    w.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  DenseMatrix z = (u1 * w * u2.adjoint()).real();
  if (!z.allFinite()) throw SolverError("Sylvester: non-finite solution");
  check_residual(sylvester_residual(left, right, constant, z),
                 sylvester_residual_scale(left.norm(), right, constant, z), options.rtol);
  return z;
}

DenseMatrix solve_sylvester(const SparseMatrix& left, const DenseMatrix& right,
                            const DenseMatrix& constant, const SylvesterOptions& options) {
  check_shapes(left.rows(), left.cols(), right, constant);
  if (!all_finite(left)) throw PreconditionError("Sylvester: non-finite data");
  if (constant.size() == 0) return DenseMatrix::Zero(constant.rows(), constant.cols());
  if (!options.left_known_stable) require_stable(spectral_abscissa(left), "left");

  Eigen::EigenSolver<DenseMatrix> eig(right);
  if (eig.info() != Eigen::Success) throw SolverError("eigensolver did not converge");
  require_stable(eig.eigenvalues().real().maxCoeff(), "right");

  ShiftedSolver solver(left);
  const double scale_left = left.norm();
  auto accept = [&](const DenseMatrix& z) {
    return z.allFinite() &&
           sylvester_residual(left, right, constant, z) <=
               options.rtol * sylvester_residual_scale(scale_left, right, constant, z);
  };

  const CMatrix vectors = eig.eigenvectors();
  Eigen::JacobiSVD<CMatrix> svd(vectors);
  const auto& sv = svd.singularValues();
  const double condition = sv(sv.size() - 1) > 0.0
                               ? sv(0) / sv(sv.size() - 1)
                               : std::numeric_limits<double>::infinity();
  if (condition <= options.max_eigenvector_condition) {
    DenseMatrix z = sparse_by_eigenvectors(solver, vectors, eig.eigenvalues(), constant);
    if (accept(z)) return z;
  }
  DenseMatrix z = sparse_by_schur(solver, right, constant);
  if (!z.allFinite()) throw SolverError("Sylvester: non-finite solution");
  check_residual(sylvester_residual(left, right, constant, z),
                 sylvester_residual_scale(scale_left, right, constant, z), options.rtol);
  return z;
}

DenseMatrix solve_sylvester(const SylvesterProblem& problem, const SylvesterOptions& options) {
  return std::visit(
      [&](const auto& left) {
        return solve_sylvester(left, problem.right, problem.constant, options);
      },
      problem.left);
}

DenseMatrix solve_lyapunov(const DenseMatrix& m, const DenseMatrix& s,
                           const SylvesterOptions& options) {
  if (m.rows() != m.cols() || s.rows() != m.rows() || s.cols() != m.cols()) {
    throw PreconditionError("Lyapunov: dimension mismatch");
  }
  if ((s - s.transpose()).norm() > 1e-12 * s.norm()) {
    throw PreconditionError("Lyapunov: constant term is not symmetric");
  }
  if (s.size() == 0) return DenseMatrix::Zero(m.rows(), m.cols());
  if (!m.allFinite() || !s.allFinite()) throw PreconditionError("Lyapunov: non-finite data");
  DenseMatrix z = m == m.transpose() ? lyapunov_symmetric(m, s) : lyapunov_schur(m, s);
  if (!z.allFinite()) throw SolverError("Lyapunov: non-finite solution");
  z = 0.5 * (z + z.transpose()).eval();
  check_residual(sylvester_residual(m, m, s, z),
                 sylvester_residual_scale(m.norm(), m, s, z), options.rtol);
  return z;
}

}  // namespace posred::numkit
