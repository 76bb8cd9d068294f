#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "posred/numkit/matrix.hpp"

namespace posred::feasible {

using numkit::DenseMatrix;
using numkit::Index;

/// Entries of (A_r, B_r, C_r) pinned to zero. Diagonal entries of A_r are
/// never pinned.
class SparsityPattern {
 public:
  using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

  SparsityPattern(Mask zero_a, Mask zero_b, Mask zero_c);
  static SparsityPattern unconstrained(Index r, Index m, Index p);

  const Mask& zero_a() const { return zero_a_; }
  const Mask& zero_b() const { return zero_b_; }
  const Mask& zero_c() const { return zero_c_; }

  Index states() const { return zero_a_.rows(); }
  Index inputs() const { return zero_b_.cols(); }
  Index outputs() const { return zero_c_.rows(); }

  /// The pinned index pairs, column-major order, 0-based.
  static std::vector<std::pair<Index, Index>> pairs(const Mask& mask);

  /// FNV-1a digest of the three masks, stable across runs and platforms.
  std::uint64_t checksum() const;

  bool respected_by(const DenseMatrix& ar, const DenseMatrix& br, const DenseMatrix& cr) const;

  bool operator==(const SparsityPattern& other) const;

 private:
  Mask zero_a_;
  Mask zero_b_;
  Mask zero_c_;
};

}  // namespace posred::feasible
