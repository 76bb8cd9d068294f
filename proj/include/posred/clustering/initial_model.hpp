#pragma once

#include <optional>

#include "posred/clustering/partition.hpp"
#include "posred/feasible/pattern.hpp"
#include "posred/sysmodel/state_space.hpp"

namespace posred::clustering {

using numkit::DenseMatrix;
using numkit::SparseMatrix;

/// Binary n x r matrix Pi with Pi_ij = 1 iff node i belongs to cluster j.
class CharacteristicMatrix {
 public:
  explicit CharacteristicMatrix(const ClusterPartition& partition);

  const ClusterPartition& partition() const { return partition_; }
  Index nodes() const { return partition_.nodes(); }
  Index clusters() const { return partition_.clusters(); }
  /// Pi as a sparse matrix, exactly one 1 per row.
  const SparseMatrix& matrix() const { return pi_; }
  /// Diagonal of Pi^T Pi: the cluster sizes.
  const numkit::Vector& sizes() const { return sizes_; }

  /// (Pi^T Pi)^{-1} Pi^T M: cluster averages of the rows of M.
  DenseMatrix average_rows(const DenseMatrix& m) const;
  /// M Pi: cluster sums of the columns of M.
  DenseMatrix sum_columns(const DenseMatrix& m) const;
  /// (Pi^T Pi)^{-1} Pi^T A Pi.
  DenseMatrix project(const sysmodel::StateSpaceModel& model) const;

 private:
  ClusterPartition partition_;
  SparseMatrix pi_;
  numkit::Vector sizes_;
};

CharacteristicMatrix build_characteristic_matrix(const ClusterPartition& partition);

struct InitialReduction {
  sysmodel::StateSpaceModel model;
  double alpha = 0.0;
  /// Spectral abscissa of the unshifted projected state matrix.
  double projected_abscissa = 0.0;
};

/// Cluster aggregation of (A, B, C) shifted by -alpha I. With no alpha
/// (automatic), alpha = max(0, sigma + max(0.01 |sigma|, 1e-8)) where sigma
/// is the abscissa of the projected matrix, which always yields a stable
/// result. An explicit alpha leaving the model unstable is reported as a
/// PreconditionError.
InitialReduction initial_reduced_model(const sysmodel::StateSpaceModel& full,
                                       const CharacteristicMatrix& pi,
                                       std::optional<double> alpha);

/// Zero sets of the initial reduced triple: off-diagonal entries of A0 and
/// entries of B0, C0 with |value| <= ztol. Diagonals are never pinned.
feasible::SparsityPattern reduced_graph_pattern(const DenseMatrix& a0, const DenseMatrix& b0,
                                                const DenseMatrix& c0, double ztol = 0.0);
feasible::SparsityPattern reduced_graph_pattern(const sysmodel::StateSpaceModel& reduced,
                                                double ztol = 0.0);

}  // namespace posred::clustering
