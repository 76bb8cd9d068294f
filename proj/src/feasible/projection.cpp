#include "posred/feasible/projection.hpp"

#include <algorithm>
#include <limits>

#include "posred/error.hpp"
#include "posred/numkit/spectral.hpp"

namespace posred::feasible {

DenseMatrix project_a(const DenseMatrix& ar, const StabilityBox& box,
                      const SparsityPattern& pattern) {
  if (ar.rows() != box.states() || ar.cols() != box.states() ||
      pattern.states() != box.states()) {
    throw PreconditionError("project_a: dimension mismatch");
  }
  DenseMatrix out(ar.rows(), ar.cols());
  const auto& zero = pattern.zero_a();
  for (Index j = 0; j < ar.cols(); ++j) {
    for (Index i = 0; i < ar.rows(); ++i) {
      if (i == j) {
        out(i, i) = std::clamp(ar(i, i), -box.gamma, box.abar(i, i));
      } else if (zero(i, j)) {
        out(i, j) = 0.0;
      } else {
        out(i, j) = std::clamp(ar(i, j), 0.0, box.abar(i, j));
      }
    }
  }
  return out;
}

namespace {

DenseMatrix project_nonneg(const DenseMatrix& m, const SparsityPattern::Mask& zero) {
  if (m.rows() != zero.rows() || m.cols() != zero.cols()) {
    throw PreconditionError("projection: dimension mismatch with the pattern");
  }
  DenseMatrix out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      out(i, j) = (zero(i, j) || m(i, j) < 0.0) ? 0.0 : m(i, j);
    }
  }
  return out;
}

}  // namespace

DenseMatrix project_b(const DenseMatrix& br, const SparsityPattern& pattern) {
  return project_nonneg(br, pattern.zero_b());
}

DenseMatrix project_c(const DenseMatrix& cr, const SparsityPattern& pattern) {
  return project_nonneg(cr, pattern.zero_c());
}

FeasibilityCertificate certify(const DenseMatrix& ar, const DenseMatrix& br, const DenseMatrix& cr,
                               const StabilityBox& box, const SparsityPattern& pattern) {
  FeasibilityCertificate cert;
  cert.abscissa = numkit::spectral_abscissa(ar);
  cert.min_off_diagonal = numkit::min_off_diagonal(ar);
  cert.min_b = br.size() ? br.minCoeff() : 0.0;
  cert.min_c = cr.size() ? cr.minCoeff() : 0.0;
  cert.pattern_respected = pattern.respected_by(ar, br, cr);
  cert.within_box = box.contains(ar);
  cert.pattern_checksum = pattern.checksum();
  cert.passes = cert.min_off_diagonal >= 0.0 && cert.abscissa <= -box.epsilon + 1e-8 &&
                cert.min_b >= 0.0 && cert.min_c >= 0.0 && cert.pattern_respected &&
                cert.within_box;
  return cert;
}

}  // namespace posred::feasible
