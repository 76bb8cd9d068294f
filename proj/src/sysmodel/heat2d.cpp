#include "posred/sysmodel/heat2d.hpp"

#include <string>
#include <vector>

#include "posred/error.hpp"

namespace posred::sysmodel {

Heat2d heat2d(Index k) {
  if (k < 2) throw PreconditionError("heat2d needs K >= 2, got " + std::to_string(k));
  const Index n = k * k;
  const double h = kHeatDomainSize / static_cast<double>(k + 1);
  const double beta = kHeatConductivity / (h * h);

  auto node = [k](Index row, Index col) { return row * k + col; };
  std::vector<numkit::Triplet> entries;
  entries.reserve(static_cast<std::size_t>(5 * n));
  for (Index row = 0; row < k; ++row) {
    for (Index col = 0; col < k; ++col) {
      const Index i = node(row, col);
      entries.emplace_back(i, i, -4.0 * beta);
      if (col > 0) entries.emplace_back(i, node(row, col - 1), beta);
      if (col + 1 < k) entries.emplace_back(i, node(row, col + 1), beta);
      if (row > 0) entries.emplace_back(i, node(row - 1, col), beta);
      if (row + 1 < k) entries.emplace_back(i, node(row + 1, col), beta);
    }
  }
  SparseMatrix a = numkit::make_sparse(n, n, entries);

  DenseMatrix b = DenseMatrix::Zero(n, 2);
  b(0, 0) = beta;
  b(n - 1, 1) = beta;
  DenseMatrix c = DenseMatrix::Zero(2, n);
  c(0, 0) = 1.0;
  c(1, n - 1) = 1.0;

  Heat2d out{StateSpaceModel(std::move(a), std::move(b), std::move(c)), beta, std::nullopt};
  if (k % 4 == 0) {
    const Index side = k / 4;
    std::vector<Index> assignment(static_cast<std::size_t>(n));
    for (Index row = 0; row < k; ++row) {
      for (Index col = 0; col < k; ++col) {
        assignment[static_cast<std::size_t>(node(row, col))] = (row / side) * 4 + col / side;
      }
    }
    out.partition_hint = clustering::ClusterPartition::from_assignment(std::move(assignment));
  }
  return out;
}

}  // namespace posred::sysmodel
