#pragma once

#include <string>
#include <vector>

#include "posred/numkit/matrix.hpp"

namespace posred::feasible {

using numkit::DenseMatrix;
using numkit::Index;

/// True iff the directed graph with an edge i -> j for every nonzero
/// off-diagonal entry (i, j) is strongly connected.
bool check_irreducible(const DenseMatrix& a0);

/// Strongly connected components, each sorted, ordered by smallest member.
std::vector<std::vector<Index>> strongly_connected_components(const DenseMatrix& a0);

/// "{1,2} {3}" style listing with 1-based node ids.
std::string format_components(const std::vector<std::vector<Index>>& components);

}  // namespace posred::feasible
