#pragma once

#include <optional>
#include <string>
#include <variant>

#include "posred/numkit/matrix.hpp"

namespace posred::sysmodel {

using numkit::DenseMatrix;
using numkit::Index;
using numkit::SparseMatrix;

enum class Storage { kDense, kSparse };

std::string to_string(Storage s);
Storage storage_from_string(const std::string& s);

/// dx/dt = A x + B u, y = C x.
///
/// A is kept sparse or dense; B (n x m) and C (p x n) are always dense since
/// the input and output counts are small.
class StateSpaceModel {
 public:
  StateSpaceModel(SparseMatrix a, DenseMatrix b, DenseMatrix c);
  StateSpaceModel(DenseMatrix a, DenseMatrix b, DenseMatrix c);

  Index order() const { return b_.rows(); }
  Index inputs() const { return b_.cols(); }
  Index outputs() const { return c_.rows(); }
  Storage storage() const;

  bool is_sparse() const { return storage() == Storage::kSparse; }
  const SparseMatrix& sparse_a() const;
  const DenseMatrix& dense_a() const;
  /// A as a dense matrix, copying if it is stored sparse.
  DenseMatrix a_dense() const;
  const std::variant<SparseMatrix, DenseMatrix>& a() const { return a_; }

  const DenseMatrix& b() const { return b_; }
  const DenseMatrix& c() const { return c_; }

 private:
  void validate() const;

  std::variant<SparseMatrix, DenseMatrix> a_;
  DenseMatrix b_;
  DenseMatrix c_;
};

enum class MatrixId { kA, kB, kC };

struct EntryLocation {
  MatrixId matrix = MatrixId::kA;
  Index row = 0;  // 0-based
  Index col = 0;
};

/// Sign structure of (A, B, C). worst_violation is the most negative
/// offending entry (off-diagonal of A, any of B or C), or 0 when every flag
/// holds.
struct PositivityReport {
  bool is_metzler = true;
  bool is_nonneg_b = true;
  bool is_nonneg_c = true;
  double worst_violation = 0.0;
  std::optional<EntryLocation> location;

  bool ok() const { return is_metzler && is_nonneg_b && is_nonneg_c; }
};

struct AspnReport {
  PositivityReport positivity;
  double abscissa = 0.0;
  bool stable = false;

  bool ok() const { return positivity.ok() && stable; }
  /// One-line human readable summary, 1-based locations.
  std::string describe() const;
};

/// Checks the asymptotically-stable-positive-network assumptions. Entries
/// down to -tol count as nonnegative.
AspnReport validate_aspn(const StateSpaceModel& model, double tol = 0.0);

/// A - alpha I with B, C unchanged. alpha must be positive.
StateSpaceModel semistable_shift(const StateSpaceModel& model, double alpha);

}  // namespace posred::sysmodel
