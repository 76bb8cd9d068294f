#include "posred/numkit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "posred/error.hpp"

namespace posred::numkit {

SparseMatrix make_sparse(Index rows, Index cols, std::span<const Triplet> entries) {
  if (rows < 0 || cols < 0) {
    throw PreconditionError("sparse matrix dimensions must be nonnegative");
  }
  std::vector<Triplet> sorted(entries.begin(), entries.end());
  for (const auto& t : sorted) {
    if (t.row() < 0 || t.row() >= rows || t.col() < 0 || t.col() >= cols) {
      throw PreconditionError("sparse entry (" + std::to_string(t.row()) + ", " +
                              std::to_string(t.col()) + ") out of range");
    }
    if (!std::isfinite(t.value())) {
      throw PreconditionError("sparse entry (" + std::to_string(t.row()) + ", " +
                              std::to_string(t.col()) + ") is not finite");
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.col() != b.col() ? a.col() < b.col() : a.row() < b.row();
  });
  auto dup = std::adjacent_find(sorted.begin(), sorted.end(),
                                [](const Triplet& a, const Triplet& b) {
                                  return a.row() == b.row() && a.col() == b.col();
                                });
  if (dup != sorted.end()) {
    throw PreconditionError("duplicate sparse entry (" + std::to_string(dup->row()) +
                            ", " + std::to_string(dup->col()) + ")");
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(sorted.begin(), sorted.end());
  m.makeCompressed();
  return m;
}

bool all_finite(const DenseMatrix& m) { return m.allFinite(); }

bool all_finite(const SparseMatrix& m) {
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (!std::isfinite(it.value())) return false;
    }
  }
  return true;
}

double asymmetry(const DenseMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

bool is_symmetric(const SparseMatrix& m) {
  if (m.rows() != m.cols()) return false;
  SparseMatrix t = m.transpose();
  return (m - t).norm() == 0.0;
}

double min_off_diagonal(const DenseMatrix& m) {
  double lo = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (i != j) lo = std::min(lo, m(i, j));
    }
  }
  return lo;
}

}  // namespace posred::numkit
