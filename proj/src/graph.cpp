#include "ricci/graph.hpp"

#include <algorithm>
#include <numeric>

#include "ricci/error.hpp"

namespace ricci {

Graph Graph::from_pairs(std::size_t num_nodes,
                        std::span<const std::pair<NodeId, NodeId>> pairs,
                        BuildReport* report) {
  std::vector<EdgeKey> keys;
  keys.reserve(pairs.size());
  BuildReport local;
  for (auto [a, b] : pairs) {
    if (a >= num_nodes || b >= num_nodes) {
      throw InputError("node id " + std::to_string(std::max(a, b)) + " out of range for " +
                       std::to_string(num_nodes) + " nodes");
    }
    if (a == b) {
      ++local.self_loops_dropped;
      continue;
    }
    keys.push_back(EdgeKey::canonical(a, b));
  }
  std::sort(keys.begin(), keys.end());
  auto last = std::unique(keys.begin(), keys.end());
  local.duplicates_collapsed = static_cast<std::size_t>(keys.end() - last);
  keys.erase(last, keys.end());
  if (report) *report = local;
  return from_edges(num_nodes, keys);
}

Graph Graph::from_edges(std::size_t num_nodes, std::span<const EdgeKey> edges) {
  Graph g;
  g.edges_.assign(edges.begin(), edges.end());
  std::sort(g.edges_.begin(), g.edges_.end());
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const auto& e = g.edges_[i];
    if (e.u >= e.v) throw InputError("edge list contains a self-loop or non-canonical key");
    if (e.v >= num_nodes) throw InputError("edge endpoint out of range");
    if (i > 0 && g.edges_[i - 1] == e) throw InputError("duplicate edge");
  }

  g.offsets_.assign(num_nodes + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

  g.adjacency_.resize(2 * g.edges_.size());
  g.adjacency_edge_.resize(2 * g.edges_.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so pushing v into u's list and u into v's list
  // in edge order yields ascending neighbor lists.
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const auto& e = g.edges_[id];
    g.adjacency_[cursor[e.v]] = e.u;
    g.adjacency_edge_[cursor[e.v]++] = id;
  }
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const auto& e = g.edges_[id];
    g.adjacency_[cursor[e.u]] = e.v;
    g.adjacency_edge_[cursor[e.u]++] = id;
  }
  // Lower-id neighbors of v were written first (all of them have u < v),
  // then higher-id neighbors, each group ascending.

  g.features_.resize(static_cast<Eigen::Index>(num_nodes), 0);
  g.source_ids_.resize(num_nodes);
  std::iota(g.source_ids_.begin(), g.source_ids_.end(), std::int64_t{0});
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_nodes(); ++v) best = std::max(best, degree(static_cast<NodeId>(v)));
  return best;
}

bool Graph::has_edge(NodeId a, NodeId b) const noexcept {
  if (a >= num_nodes() || b >= num_nodes() || a == b) return false;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::optional<EdgeId> Graph::edge_id(EdgeKey e) const noexcept {
  if (e.u >= num_nodes() || e.v >= num_nodes()) return std::nullopt;
  auto nb = neighbors(e.u);
  auto it = std::lower_bound(nb.begin(), nb.end(), e.v);
  if (it == nb.end() || *it != e.v) return std::nullopt;
  return incident_edges(e.u)[static_cast<std::size_t>(it - nb.begin())];
}

EdgeId Graph::require_edge(EdgeKey e) const {
  auto id = edge_id(EdgeKey::canonical(e.u, e.v));
  if (!id) {
    throw InputError("(" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not an edge");
  }
  return *id;
}

void Graph::set_node_features(Eigen::MatrixXd features) {
  if (static_cast<std::size_t>(features.rows()) != num_nodes()) {
    throw InputError("node feature rows do not match node count");
  }
  features_ = std::move(features);
}

void Graph::set_source_ids(std::vector<std::int64_t> ids) {
  if (ids.size() != num_nodes()) throw InputError("source id table size mismatch");
  source_ids_ = std::move(ids);
}

std::size_t Graph::connected_components(std::vector<std::uint32_t>* labels) const {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> comp(num_nodes(), kUnset);
  std::vector<NodeId> stack;
  std::uint32_t count = 0;
  for (NodeId s = 0; s < num_nodes(); ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y : neighbors(x)) {
        if (comp[y] == kUnset) {
          comp[y] = count;
          stack.push_back(y);
        }
      }
    }
    ++count;
  }
  if (labels) *labels = std::move(comp);
  return count;
}

bool Graph::operator==(const Graph& other) const {
  return offsets_ == other.offsets_ && edges_ == other.edges_;
}

}  // namespace ricci
