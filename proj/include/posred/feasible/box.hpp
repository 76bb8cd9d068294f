#pragma once

#include <string>

#include "posred/feasible/pattern.hpp"
#include "posred/feasible/perron.hpp"

namespace posred::feasible {

inline constexpr double kDefaultEpsilon = 1e-6;
inline constexpr double kDefaultGamma = 1e7;

/// The set {A : -gamma I <= A <= Abar} with Abar = A0 - (mu1 + eps) v1 w1^T.
/// Every member is Metzler with spectral abscissa <= -eps.
struct StabilityBox {
  DenseMatrix abar;
  double gamma = kDefaultGamma;
  double epsilon = kDefaultEpsilon;
  PerronData perron;

  Index states() const { return abar.rows(); }
  /// Elementwise lower bound: -gamma on the diagonal, 0 elsewhere.
  DenseMatrix lower() const;
  bool contains(const DenseMatrix& a) const;
};

/// Requires 0 < eps <= -mu1 and gamma > 0 with -gamma <= min_i (A0)_ii.
StabilityBox build_box(const DenseMatrix& a0, double epsilon, double gamma,
                       const PerronOptions& options = {});
StabilityBox build_box(const DenseMatrix& a0, const PerronData& perron, double epsilon,
                       double gamma);

/// {"mu1", "epsilon", "gamma", "v1", "w1", "abar"} with abar row-major.
std::string box_to_json(const StabilityBox& box);

}  // namespace posred::feasible
