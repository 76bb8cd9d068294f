#pragma once

#include <string>
#include <vector>

#include "posred/numkit/matrix.hpp"

namespace posred::clustering {

using numkit::Index;

/// Disjoint, nonempty clusters covering the nodes {0, ..., n-1}.
/// Indices are 0-based in memory; the JSON form is 1-based.
class ClusterPartition {
 public:
  /// clusters[j] lists the nodes of cluster j.
  static ClusterPartition from_clusters(Index nodes, const std::vector<std::vector<Index>>& clusters);
  /// assignment[i] is the cluster of node i; cluster count is inferred.
  static ClusterPartition from_assignment(std::vector<Index> assignment);
  static ClusterPartition singletons(Index nodes);

  Index nodes() const { return static_cast<Index>(assignment_.size()); }
  Index clusters() const { return clusters_; }
  const std::vector<Index>& assignment() const { return assignment_; }
  std::vector<Index> cluster_sizes() const;
  std::vector<std::vector<Index>> members() const;

  bool operator==(const ClusterPartition&) const = default;

 private:
  ClusterPartition(std::vector<Index> assignment, Index clusters);

  std::vector<Index> assignment_;
  Index clusters_ = 0;
};

/// {"n": ..., "clusters": [[1-based node ids], ...]}
ClusterPartition load_partition(const std::string& path);
void save_partition(const std::string& path, const ClusterPartition& partition);
std::string partition_to_json(const ClusterPartition& partition);
ClusterPartition partition_from_json(const std::string& text);

}  // namespace posred::clustering
