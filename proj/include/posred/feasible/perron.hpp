#pragma once

#include "posred/numkit/matrix.hpp"

namespace posred::feasible {

using numkit::DenseMatrix;
using numkit::Index;
using numkit::Vector;

/// Dominant (real) eigenvalue of an irreducible stable Metzler matrix with
/// its positive right and left eigenvectors; |v1|_2 = 1 and w1^T v1 = 1.
struct PerronData {
  double mu1 = 0.0;
  Vector v1;
  Vector w1;
};

struct PerronOptions {
  double tolerance = 1e-12;
  Index max_iterations = 100000;
};

/// Power iteration on A0 + sI, s = 1 + max |diag|, and on its transpose.
PerronData perron(const DenseMatrix& a0, const PerronOptions& options = {});

}  // namespace posred::feasible
