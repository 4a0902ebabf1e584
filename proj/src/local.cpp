#include "ricci/local.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "ricci/error.hpp"

namespace ricci {

std::size_t common_neighbor_count(const Graph& g, NodeId a, NodeId b) {
  auto na = g.neighbors(a);
  auto nb = g.neighbors(b);
  std::size_t count = 0;
  auto i = na.begin();
  auto j = nb.begin();
  while (i != na.end() && j != nb.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

EdgeMotifCounts edge_motif_counts(const Graph& g, EdgeKey e) {
  g.require_edge(e);
  const NodeId u = std::min(e.u, e.v);
  const NodeId v = std::max(e.u, e.v);
  EdgeMotifCounts out;
  out.triangles = common_neighbor_count(g, u, v);

  std::vector<NodeId> left;
  for (NodeId p : g.neighbors(u))
    if (p != v && !g.has_edge(p, v)) left.push_back(p);
  std::vector<NodeId> right;
  for (NodeId q : g.neighbors(v))
    if (q != u && !g.has_edge(q, u)) right.push_back(q);
  for (NodeId p : left)
    for (NodeId q : right)
      if (g.has_edge(p, q)) ++out.quadrangles;
  return out;
}

std::uint32_t DistanceTable::distance(std::size_t source_index, NodeId node) const {
  const auto& row = reached_.at(source_index);
  auto it = std::lower_bound(row.begin(), row.end(), node,
                             [](const auto& entry, NodeId x) { return entry.first < x; });
  if (it == row.end() || it->first != node) return kUnreachable;
  return it->second;
}

DistanceTable local_distances(const Graph& g, std::span<const NodeId> sources, std::uint32_t radius) {
  if (radius == 0) throw InputError("BFS radius must be at least 1");
  std::vector<std::vector<std::pair<NodeId, std::uint32_t>>> reached;
  reached.reserve(sources.size());
  std::vector<NodeId> frontier;
  std::vector<NodeId> next;
  std::vector<std::pair<NodeId, std::uint32_t>> seen;
  std::unordered_set<NodeId> visited;
  for (NodeId s : sources) {
    if (s >= g.num_nodes()) throw InputError("source " + std::to_string(s) + " out of range");
    seen.clear();
    visited.clear();
    seen.emplace_back(s, 0);
    visited.insert(s);
    frontier.assign(1, s);
    for (std::uint32_t d = 1; d <= radius && !frontier.empty(); ++d) {
      next.clear();
      for (NodeId x : frontier) {
        for (NodeId y : g.neighbors(x)) {
          if (visited.insert(y).second) {
            seen.emplace_back(y, d);
            next.push_back(y);
          }
        }
      }
      frontier.swap(next);
    }
    std::sort(seen.begin(), seen.end());
    reached.push_back(seen);
  }
  return DistanceTable({sources.begin(), sources.end()}, radius, std::move(reached));
}

}  // namespace ricci
