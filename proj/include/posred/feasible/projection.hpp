#pragma once

#include <cstdint>

#include "posred/feasible/box.hpp"
#include "posred/feasible/pattern.hpp"

namespace posred::feasible {

/// Euclidean projection onto st(A0) intersected with the stability box:
/// pattern zeros are set to 0, other off-diagonals clamped to [0, Abar_ij],
/// diagonals clamped to [-gamma, Abar_ii].
DenseMatrix project_a(const DenseMatrix& ar, const StabilityBox& box, const SparsityPattern& pattern);

/// Projection onto nonnegative matrices with the pattern zeros of B_r.
DenseMatrix project_b(const DenseMatrix& br, const SparsityPattern& pattern);
/// Projection onto nonnegative matrices with the pattern zeros of C_r.
DenseMatrix project_c(const DenseMatrix& cr, const SparsityPattern& pattern);

struct FeasibilityCertificate {
  double abscissa = 0.0;
  double min_off_diagonal = 0.0;  // +inf for a 1x1 A_r
  double min_b = 0.0;
  double min_c = 0.0;
  bool pattern_respected = false;
  bool within_box = false;
  std::uint64_t pattern_checksum = 0;
  bool passes = false;
};

/// Independent re-check of every feasibility property of a reduced triple:
/// Metzler, abscissa <= -eps + 1e-8, inside the box, exact pattern zeros,
/// nonnegative B_r and C_r.
FeasibilityCertificate certify(const DenseMatrix& ar, const DenseMatrix& br, const DenseMatrix& cr,
                               const StabilityBox& box, const SparsityPattern& pattern);

}  // namespace posred::feasible
