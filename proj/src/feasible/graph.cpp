#include "posred/feasible/graph.hpp"

#include <algorithm>
#include <sstream>

#include "posred/error.hpp"

namespace posred::feasible {
namespace {

using Adjacency = std::vector<std::vector<Index>>;

void build(const DenseMatrix& a0, Adjacency& forward, Adjacency& backward) {
  if (a0.rows() != a0.cols()) throw PreconditionError("graph of a non-square matrix");
  const auto n = static_cast<std::size_t>(a0.rows());
  forward.assign(n, {});
  backward.assign(n, {});
  for (Index i = 0; i < a0.rows(); ++i) {
    for (Index j = 0; j < a0.cols(); ++j) {
      if (i != j && a0(i, j) != 0.0) {
        forward[static_cast<std::size_t>(i)].push_back(j);
        backward[static_cast<std::size_t>(j)].push_back(i);
      }
    }
  }
}

std::vector<bool> reach(const Adjacency& adj, Index start) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<Index> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (Index v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

bool check_irreducible(const DenseMatrix& a0) {
  Adjacency forward, backward;
  build(a0, forward, backward);
  if (forward.empty()) return false;
  auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  return all(reach(forward, 0)) && all(reach(backward, 0));
}

// Kosaraju: finishing order on the forward graph, then sweeps of the
// reversed graph in reverse finishing order.
std::vector<std::vector<Index>> strongly_connected_components(const DenseMatrix& a0) {
  Adjacency forward, backward;
  build(a0, forward, backward);
  const std::size_t n = forward.size();

  std::vector<Index> order;
  std::vector<bool> seen(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<Index, std::size_t>> stack{{static_cast<Index>(root), 0}};
    seen[root] = true;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      const auto& out = forward[static_cast<std::size_t>(u)];
      if (next < out.size()) {
        const Index v = out[next++];
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          stack.emplace_back(v, 0);
        }
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }

  std::vector<std::vector<Index>> components;
  std::vector<bool> assigned(n, false);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (assigned[static_cast<std::size_t>(*it)]) continue;
    std::vector<Index> component;
    std::vector<Index> stack{*it};
    assigned[static_cast<std::size_t>(*it)] = true;
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (Index v : backward[static_cast<std::size_t>(u)]) {
        if (!assigned[static_cast<std::size_t>(v)]) {
          assigned[static_cast<std::size_t>(v)] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  std::sort(components.begin(), components.end());
  return components;
}

std::string format_components(const std::vector<std::vector<Index>>& components) {
  std::ostringstream out;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (c) out << ' ';
    out << '{';
    for (std::size_t k = 0; k < components[c].size(); ++k) {
      if (k) out << ',';
      out << components[c][k] + 1;
    }
    out << '}';
  }
  return out.str();
}

}  // namespace posred::feasible
