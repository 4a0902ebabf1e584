#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "ricci/graph.hpp"

namespace ricci {

struct EdgeMotifCounts {
  std::size_t triangles = 0;
  std::size_t quadrangles = 0;
  bool operator==(const EdgeMotifCounts&) const = default;
};

/// Triangles are common neighbors of u and v. Quadrangles count 4-cycles
/// u-p-q-v with p in N(u)\N[v], q in N(v)\N[u] and (p,q) an edge, so a
/// 4-cycle with a diagonal through u or v is not counted.
EdgeMotifCounts edge_motif_counts(const Graph& g, EdgeKey e);

std::size_t common_neighbor_count(const Graph& g, NodeId a, NodeId b);

/// BFS hop distances from each source, truncated at `radius`.
class DistanceTable {
 public:
  static constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

  DistanceTable(std::vector<NodeId> sources, std::uint32_t radius,
                std::vector<std::vector<std::pair<NodeId, std::uint32_t>>> reached)
      : sources_(std::move(sources)), radius_(radius), reached_(std::move(reached)) {}

  std::uint32_t radius() const noexcept { return radius_; }
  const std::vector<NodeId>& sources() const noexcept { return sources_; }

  /// Distance from sources()[source_index] to `node`, or kUnreachable when
  /// the node lies beyond the radius.
  std::uint32_t distance(std::size_t source_index, NodeId node) const;

 private:
  std::vector<NodeId> sources_;
  std::uint32_t radius_;
  // Per source: (node, distance) sorted by node.
  std::vector<std::vector<std::pair<NodeId, std::uint32_t>>> reached_;
};

/// Throws InputError for radius 0 or an out-of-range source.
DistanceTable local_distances(const Graph& g, std::span<const NodeId> sources, std::uint32_t radius);

}  // namespace ricci
