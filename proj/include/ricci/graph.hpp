#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ricci {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Undirected edge in canonical orientation (u < v).
struct EdgeKey {
  NodeId u = 0;
  NodeId v = 0;

  static EdgeKey canonical(NodeId a, NodeId b) noexcept {
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
  }
  auto operator<=>(const EdgeKey&) const = default;
};

/// Counts reported when raw pairs are collapsed into a simple graph.
struct BuildReport {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
};

/// Immutable simple undirected graph in CSR form.
///
/// Neighbor lists are sorted ascending. Each adjacency slot also records the
/// id of the incident edge, where edge ids index `edges()` (sorted
/// lexicographically by canonical key).
class Graph {
 public:
  Graph() = default;

  /// Builds a simple graph from raw pairs. Self-loops are dropped, repeated
  /// and reversed pairs collapse. Every id must be < num_nodes.
  static Graph from_pairs(std::size_t num_nodes,
                          std::span<const std::pair<NodeId, NodeId>> pairs,
                          BuildReport* report = nullptr);
  static Graph from_edges(std::size_t num_nodes, std::span<const EdgeKey> edges);

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {adjacency_.data() + offsets_[v], degree(v)};
  }
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(NodeId v) const noexcept {
    return {adjacency_edge_.data() + offsets_[v], degree(v)};
  }

  bool has_edge(NodeId a, NodeId b) const noexcept;
  std::optional<EdgeId> edge_id(EdgeKey e) const noexcept;
  /// Throws InputError when `e` is not an edge.
  EdgeId require_edge(EdgeKey e) const;

  const std::vector<EdgeKey>& edges() const noexcept { return edges_; }

  /// Optional |V| x m input features (zero columns when absent).
  const Eigen::MatrixXd& node_features() const noexcept { return features_; }
  void set_node_features(Eigen::MatrixXd features);

  /// Source-file id of each dense node id, used when emitting outputs.
  const std::vector<std::int64_t>& source_ids() const noexcept { return source_ids_; }
  void set_source_ids(std::vector<std::int64_t> ids);

  /// Number of connected components (isolated nodes count as components).
  std::size_t connected_components(std::vector<std::uint32_t>* labels = nullptr) const;

  bool operator==(const Graph& other) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<EdgeId> adjacency_edge_;
  std::vector<EdgeKey> edges_;
  Eigen::MatrixXd features_;
  std::vector<std::int64_t> source_ids_;
};

/// Graph-level dataset: ordered graphs with optional class labels.
struct GraphCollection {
  std::string name;
  std::vector<Graph> graphs;
  std::vector<int> labels;  // empty, or one per graph
};

}  // namespace ricci
