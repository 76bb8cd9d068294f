#pragma once

#include <span>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace posred::numkit {

using Index = Eigen::Index;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

/// Builds a sparse matrix from coordinate entries. Unlike
/// Eigen::SparseMatrix::setFromTriplets, duplicates are rejected rather than
/// summed, and indices and values are validated.
SparseMatrix make_sparse(Index rows, Index cols, std::span<const Triplet> entries);

bool all_finite(const DenseMatrix& m);
bool all_finite(const SparseMatrix& m);

/// Largest |m_ij - m_ji|, zero for an exactly symmetric matrix.
double asymmetry(const DenseMatrix& m);
bool is_symmetric(const SparseMatrix& m);

/// Smallest off-diagonal entry, +inf for 1x1 input.
double min_off_diagonal(const DenseMatrix& m);

}  // namespace posred::numkit
