#include "posred/clustering/partition.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "posred/error.hpp"

namespace posred::clustering {

ClusterPartition::ClusterPartition(std::vector<Index> assignment, Index clusters)
    : assignment_(std::move(assignment)), clusters_(clusters) {}

ClusterPartition ClusterPartition::from_clusters(Index nodes,
                                                 const std::vector<std::vector<Index>>& clusters) {
  if (nodes <= 0) throw PreconditionError("partition needs at least one node");
  std::vector<Index> assignment(static_cast<std::size_t>(nodes), -1);
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    if (clusters[j].empty()) {
      throw PreconditionError("cluster " + std::to_string(j + 1) + " is empty");
    }
    for (Index node : clusters[j]) {
      if (node < 0 || node >= nodes) {
        throw PreconditionError("node " + std::to_string(node + 1) + " out of range 1.." +
                                std::to_string(nodes));
      }
      auto& slot = assignment[static_cast<std::size_t>(node)];
      if (slot != -1) {
        throw PreconditionError("node " + std::to_string(node + 1) +
                                " appears in more than one cluster");
      }
      slot = static_cast<Index>(j);
    }
  }
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == -1) {
      throw PreconditionError("node " + std::to_string(i + 1) + " belongs to no cluster");
    }
  }
  return {std::move(assignment), static_cast<Index>(clusters.size())};
}

ClusterPartition ClusterPartition::from_assignment(std::vector<Index> assignment) {
  if (assignment.empty()) throw PreconditionError("partition needs at least one node");
  Index r = 0;
  for (Index c : assignment) {
    if (c < 0) throw PreconditionError("negative cluster index in assignment");
    r = std::max(r, c + 1);
  }
  std::vector<bool> used(static_cast<std::size_t>(r), false);
  for (Index c : assignment) used[static_cast<std::size_t>(c)] = true;
  for (std::size_t j = 0; j < used.size(); ++j) {
    if (!used[j]) throw PreconditionError("cluster " + std::to_string(j + 1) + " is empty");
  }
  return {std::move(assignment), r};
}

ClusterPartition ClusterPartition::singletons(Index nodes) {
  std::vector<Index> assignment(static_cast<std::size_t>(nodes));
  for (Index i = 0; i < nodes; ++i) assignment[static_cast<std::size_t>(i)] = i;
  return from_assignment(std::move(assignment));
}

std::vector<Index> ClusterPartition::cluster_sizes() const {
  std::vector<Index> sizes(static_cast<std::size_t>(clusters_), 0);
  for (Index c : assignment_) ++sizes[static_cast<std::size_t>(c)];
  return sizes;
}

std::vector<std::vector<Index>> ClusterPartition::members() const {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(clusters_));
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    out[static_cast<std::size_t>(assignment_[i])].push_back(static_cast<Index>(i));
  }
  return out;
}

std::string partition_to_json(const ClusterPartition& partition) {
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& members : partition.members()) {
    nlohmann::json ids = nlohmann::json::array();
    for (Index node : members) ids.push_back(node + 1);
    clusters.push_back(std::move(ids));
  }
  nlohmann::json doc = {{"n", partition.nodes()}, {"clusters", std::move(clusters)}};
  return doc.dump();
}

ClusterPartition partition_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    const Index n = doc.at("n").get<Index>();
    std::vector<std::vector<Index>> clusters;
    for (const auto& ids : doc.at("clusters")) {
      std::vector<Index> members;
      for (const auto& id : ids) members.push_back(id.get<Index>() - 1);
      clusters.push_back(std::move(members));
    }
    return ClusterPartition::from_clusters(n, clusters);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("malformed partition JSON: " + std::string(e.what()));
  }
}

ClusterPartition load_partition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return partition_from_json(buffer.str());
}

void save_partition(const std::string& path, const ClusterPartition& partition) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << partition_to_json(partition) << '\n';
}

}  // namespace posred::clustering
