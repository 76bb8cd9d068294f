#pragma once

#include <optional>

#include "posred/clustering/partition.hpp"
#include "posred/sysmodel/state_space.hpp"

namespace posred::sysmodel {

inline constexpr double kHeatDomainSize = 10.0;
inline constexpr double kHeatConductivity = 0.0241;

struct Heat2d {
  StateSpaceModel model;
  double beta = 0.0;
  /// 4x4 array of square clusters; present when K is divisible by 4.
  std::optional<clustering::ClusterPartition> partition_hint;
};

/// Five-point finite-difference discretisation of the heat equation on
/// [0, 10]^2 with K x K interior nodes, ordered row-major. Two inputs act on
/// the first and last node, two outputs read them.
Heat2d heat2d(Index k);

}  // namespace posred::sysmodel
