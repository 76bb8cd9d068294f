#include "posred/feasible/box.hpp"

#include <cmath>
#include <string>

#include <json.hpp>

#include "posred/error.hpp"
#include "posred/numkit/spectral.hpp"

namespace posred::feasible {

DenseMatrix StabilityBox::lower() const {
  DenseMatrix lo = DenseMatrix::Zero(abar.rows(), abar.cols());
  lo.diagonal().setConstant(-gamma);
  return lo;
}

bool StabilityBox::contains(const DenseMatrix& a) const {
  if (a.rows() != abar.rows() || a.cols() != abar.cols()) return false;
  return (a.array() >= lower().array()).all() && (a.array() <= abar.array()).all();
}

StabilityBox build_box(const DenseMatrix& a0, const PerronData& perron, double epsilon,
                       double gamma) {
  if (!(epsilon > 0.0) || !(perron.mu1 + epsilon <= 0.0)) {
    throw PreconditionError("epsilon must satisfy 0 < epsilon <= -mu1 = " +
                            std::to_string(-perron.mu1) + ", got " + std::to_string(epsilon));
  }
  if (!(gamma > 0.0) || !(-gamma <= a0.diagonal().minCoeff())) {
    throw PreconditionError("gamma must be positive with -gamma <= min diag(A0) = " +
                            std::to_string(a0.diagonal().minCoeff()) + ", got " +
                            std::to_string(gamma));
  }
  StabilityBox box;
  box.abar = a0 - (perron.mu1 + epsilon) * perron.v1 * perron.w1.transpose();
  box.gamma = gamma;
  box.epsilon = epsilon;
  box.perron = perron;

  const double abscissa = numkit::spectral_abscissa(box.abar);
  if (std::abs(abscissa + epsilon) > 1e-8) {
    throw SolverError("box upper bound has spectral abscissa " + std::to_string(abscissa) +
                      ", expected " + std::to_string(-epsilon));
  }
  return box;
}

StabilityBox build_box(const DenseMatrix& a0, double epsilon, double gamma,
                       const PerronOptions& options) {
  return build_box(a0, perron(a0, options), epsilon, gamma);
}

std::string box_to_json(const StabilityBox& box) {
  auto vec = [](const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  nlohmann::json abar = nlohmann::json::array();
  for (Index i = 0; i < box.abar.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < box.abar.cols(); ++j) row.push_back(box.abar(i, j));
    abar.push_back(std::move(row));
  }
  nlohmann::json doc = {{"mu1", box.perron.mu1},   {"epsilon", box.epsilon},
                        {"gamma", box.gamma},      {"v1", vec(box.perron.v1)},
                        {"w1", vec(box.perron.w1)}, {"abar", std::move(abar)}};
  return doc.dump(2);
}

}  // namespace posred::feasible
