#include "ricci/rewiring.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "ricci/error.hpp"

namespace ricci {
namespace {

using AdjacencySets = std::vector<std::set<NodeId>>;

AdjacencySets to_sets(const Graph& g) {
  AdjacencySets adj(g.num_nodes());
  for (const auto& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  return adj;
}

Graph from_sets(const Graph& original, const AdjacencySets& adj) {
  std::vector<EdgeKey> edges;
  for (NodeId a = 0; a < adj.size(); ++a)
    for (NodeId b : adj[a])
      if (a < b) edges.push_back({a, b});
  Graph out = Graph::from_edges(adj.size(), edges);
  out.set_node_features(original.node_features());
  out.set_source_ids(original.source_ids());
  return out;
}

// True when u and v stay connected without the edge (u,v).
bool has_detour(const AdjacencySets& adj, NodeId u, NodeId v) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<NodeId> stack{u};
  seen[u] = 1;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (NodeId y : adj[x]) {
      if (x == u && y == v) continue;
      if (y == v) return true;
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return false;
}

}  // namespace

std::size_t RewiringPlan::num_additions() const {
  return static_cast<std::size_t>(std::count_if(actions.begin(), actions.end(),
                                                [](const auto& a) { return a.op == RewiringAction::Op::Add; }));
}

std::size_t RewiringPlan::num_removals() const { return actions.size() - num_additions(); }

RewiringResult curvature_rewire(const Graph& g, const RewiringParams& params) {
  if (params.iterations > 0 && params.k_add > 0 && params.h_per_edge == 0) {
    throw InputError("h_per_edge must be positive when adding edges");
  }
  if (params.iterations > 0 && params.k_remove > 0 && params.k_remove >= g.num_edges()) {
    throw InputError("k_remove would empty the edge set");
  }

  RewiringResult result{g, {}};
  result.plan.params = params;
  for (std::size_t iter = 0; iter < params.iterations; ++iter) {
    const Graph& current = result.graph;
    if (current.num_edges() == 0) break;
    auto curvs = orc_all(current, params.measure, OrcSolver::exact(), params.threads);

    std::vector<EdgeId> order(current.num_edges());
    for (EdgeId i = 0; i < order.size(); ++i) order[i] = i;
    // Edge ids are already in key order, so a stable sort breaks ties lexicographically.
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return curvs[a] < curvs[b]; });

    AdjacencySets work = to_sets(current);
    std::set<EdgeKey> added;

    const std::size_t add_count = std::min(params.k_add, order.size());
    for (std::size_t r = 0; r < add_count; ++r) {
      const EdgeKey trigger = current.edges()[order[r]];
      auto problem = build_transport_problem(current, trigger, params.measure);
      auto plan = solve_transport_exact(problem);
      struct Candidate {
        double mass;
        EdgeKey key;
      };
      std::vector<Candidate> candidates;
      for (std::size_t i = 0; i < problem.source_support.size(); ++i) {
        const NodeId p = problem.source_support[i];
        if (p == trigger.u) continue;
        for (std::size_t j = 0; j < problem.target_support.size(); ++j) {
          const NodeId q = problem.target_support[j];
          if (q == trigger.v || p == q || current.has_edge(p, q)) continue;
          auto key = EdgeKey::canonical(p, q);
          if (added.contains(key)) continue;
          candidates.push_back({plan.flow(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), key});
        }
      }
      std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.mass != b.mass) return a.mass > b.mass;
        return a.key < b.key;
      });
      // A pair can appear twice when p and q are both common neighbors of the trigger.
      std::size_t taken = 0;
      for (const auto& c : candidates) {
        if (taken == params.h_per_edge) break;
        if (added.contains(c.key)) continue;
        added.insert(c.key);
        work[c.key.u].insert(c.key.v);
        work[c.key.v].insert(c.key.u);
        result.plan.actions.push_back({RewiringAction::Op::Add, c.key, trigger, iter});
        ++taken;
      }
    }

    std::size_t removed = 0;
    for (auto it = order.rbegin(); it != order.rend() && removed < params.k_remove; ++it) {
      // Walk from the highest curvature down; among equal values prefer the smaller key.
      auto group_end = it;
      while (group_end != order.rend() && curvs[*group_end] == curvs[*it]) ++group_end;
      std::vector<EdgeId> tied(it, group_end);
      std::sort(tied.begin(), tied.end());
      for (EdgeId id : tied) {
        if (removed == params.k_remove) break;
        const EdgeKey e = current.edges()[id];
        if (!has_detour(work, e.u, e.v)) continue;
        work[e.u].erase(e.v);
        work[e.v].erase(e.u);
        result.plan.actions.push_back({RewiringAction::Op::Remove, e, e, iter});
        ++removed;
      }
      it = group_end - 1;
    }

    result.graph = from_sets(current, work);
    result.plan.iterations = iter + 1;
  }
  return result;
}

Graph replay_plan(const Graph& g, const RewiringPlan& plan) {
  AdjacencySets adj = to_sets(g);
  for (const auto& a : plan.actions) {
    const auto [u, v] = a.edge;
    if (u >= adj.size() || v >= adj.size() || u == v) throw InputError("plan action has an invalid edge");
    const bool present = adj[u].contains(v);
    if (a.op == RewiringAction::Op::Add) {
      if (present) throw InputError("plan adds an existing edge");
      adj[u].insert(v);
      adj[v].insert(u);
    } else {
      if (!present) throw InputError("plan removes a missing edge");
      adj[u].erase(v);
      adj[v].erase(u);
    }
  }
  return from_sets(g, adj);
}

void write_plan_jsonl(std::ostream& out, const RewiringPlan& plan) {
  for (const auto& a : plan.actions) {
    nlohmann::ordered_json row;
    row["op"] = a.op == RewiringAction::Op::Add ? "add" : "remove";
    row["u"] = a.edge.u;
    row["v"] = a.edge.v;
    row["trigger_u"] = a.trigger.u;
    row["trigger_v"] = a.trigger.v;
    row["iter"] = a.iteration;
    out << row.dump() << '\n';
  }
}

RewiringPlan read_plan_jsonl(std::istream& in) {
  RewiringPlan plan;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto row = nlohmann::json::parse(line);
      RewiringAction a;
      auto op = row.at("op").get<std::string>();
      if (op != "add" && op != "remove") throw ParseError(lineno, "unknown op '" + op + "'");
      a.op = op == "add" ? RewiringAction::Op::Add : RewiringAction::Op::Remove;
      a.edge = EdgeKey::canonical(row.at("u").get<NodeId>(), row.at("v").get<NodeId>());
      a.trigger = EdgeKey::canonical(row.at("trigger_u").get<NodeId>(), row.at("trigger_v").get<NodeId>());
      a.iteration = row.at("iter").get<std::size_t>();
      plan.iterations = std::max(plan.iterations, a.iteration + 1);
      plan.actions.push_back(a);
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(lineno, ex.what());
    }
  }
  return plan;
}

}  // namespace ricci
