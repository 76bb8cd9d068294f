#include "posred/clustering/initial_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "posred/error.hpp"
#include "posred/numkit/spectral.hpp"

namespace posred::clustering {

CharacteristicMatrix::CharacteristicMatrix(const ClusterPartition& partition)
    : partition_(partition) {
  const auto& assignment = partition.assignment();
  std::vector<numkit::Triplet> entries;
  entries.reserve(assignment.size());
  sizes_ = numkit::Vector::Zero(partition.clusters());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    entries.emplace_back(static_cast<Index>(i), assignment[i], 1.0);
    sizes_(assignment[i]) += 1.0;
  }
  pi_ = numkit::make_sparse(partition.nodes(), partition.clusters(), entries);
}

CharacteristicMatrix build_characteristic_matrix(const ClusterPartition& partition) {
  return CharacteristicMatrix(partition);
}

DenseMatrix CharacteristicMatrix::average_rows(const DenseMatrix& m) const {
  if (m.rows() != nodes()) throw PreconditionError("row count does not match the partition");
  DenseMatrix out = DenseMatrix::Zero(clusters(), m.cols());
  const auto& assignment = partition_.assignment();
  for (Index i = 0; i < m.rows(); ++i) out.row(assignment[static_cast<std::size_t>(i)]) += m.row(i);
  return sizes_.cwiseInverse().asDiagonal() * out;
}

DenseMatrix CharacteristicMatrix::sum_columns(const DenseMatrix& m) const {
  if (m.cols() != nodes()) throw PreconditionError("column count does not match the partition");
  DenseMatrix out = DenseMatrix::Zero(m.rows(), clusters());
  const auto& assignment = partition_.assignment();
  for (Index j = 0; j < m.cols(); ++j) out.col(assignment[static_cast<std::size_t>(j)]) += m.col(j);
  return out;
}

DenseMatrix CharacteristicMatrix::project(const sysmodel::StateSpaceModel& model) const {
  if (model.order() != nodes()) throw PreconditionError("model order does not match the partition");
  const auto& assignment = partition_.assignment();
  DenseMatrix sum = DenseMatrix::Zero(clusters(), clusters());
  if (model.is_sparse()) {
    const auto& a = model.sparse_a();
    for (Index k = 0; k < a.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
        sum(assignment[static_cast<std::size_t>(it.row())],
            assignment[static_cast<std::size_t>(it.col())]) += it.value();
      }
    }
  } else {
    const auto& a = model.dense_a();
    for (Index j = 0; j < a.cols(); ++j) {
      for (Index i = 0; i < a.rows(); ++i) {
        sum(assignment[static_cast<std::size_t>(i)], assignment[static_cast<std::size_t>(j)]) +=
            a(i, j);
      }
    }
  }
  return sizes_.cwiseInverse().asDiagonal() * sum;
}

InitialReduction initial_reduced_model(const sysmodel::StateSpaceModel& full,
                                       const CharacteristicMatrix& pi,
                                       std::optional<double> alpha) {
  if (alpha && !(*alpha >= 0.0)) throw PreconditionError("alpha must be nonnegative");
  DenseMatrix ar = pi.project(full);
  const double sigma = numkit::spectral_abscissa(ar);
  const double used =
      alpha ? *alpha : std::max(0.0, sigma + std::max(0.01 * std::abs(sigma), 1e-8));
  ar.diagonal().array() -= used;

  const double shifted = numkit::spectral_abscissa(ar);
  if (!(shifted < 0.0)) {
    throw PreconditionError("initial reduced model is unstable with alpha = " +
                            std::to_string(used) + " (spectral abscissa " +
                            std::to_string(shifted) + ")");
  }
  DenseMatrix br = pi.average_rows(full.b());
  DenseMatrix cr = pi.sum_columns(full.c());
  return {sysmodel::StateSpaceModel(std::move(ar), std::move(br), std::move(cr)), used, sigma};
}

feasible::SparsityPattern reduced_graph_pattern(const DenseMatrix& a0, const DenseMatrix& b0,
                                                const DenseMatrix& c0, double ztol) {
  if (a0.rows() != a0.cols()) throw PreconditionError("reduced state matrix is not square");
  using Mask = feasible::SparsityPattern::Mask;
  Mask zero_a = a0.array().abs() <= ztol;
  for (Index i = 0; i < zero_a.rows(); ++i) zero_a(i, i) = false;
  Mask zero_b = b0.array().abs() <= ztol;
  Mask zero_c = c0.array().abs() <= ztol;
  return {std::move(zero_a), std::move(zero_b), std::move(zero_c)};
}

feasible::SparsityPattern reduced_graph_pattern(const sysmodel::StateSpaceModel& reduced,
                                                double ztol) {
  return reduced_graph_pattern(reduced.a_dense(), reduced.b(), reduced.c(), ztol);
}

}  // namespace posred::clustering
