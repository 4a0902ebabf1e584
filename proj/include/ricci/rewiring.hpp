#pragma once

#include <iosfwd>
#include <vector>

#include "ricci/curvature.hpp"
#include "ricci/graph.hpp"

namespace ricci {

struct RewiringParams {
  std::size_t iterations = 3;
  std::size_t k_add = 4;     // most negatively curved edges that receive support
  std::size_t k_remove = 4;  // most positively curved edges removed
  std::size_t h_per_edge = 1;
  Measure measure;
  unsigned threads = 0;
};

struct RewiringAction {
  enum class Op { Add, Remove };
  Op op = Op::Add;
  EdgeKey edge;
  EdgeKey trigger;  // curved edge that caused the action; equals `edge` for removals
  std::size_t iteration = 0;
  bool operator==(const RewiringAction&) const = default;
};

struct RewiringPlan {
  std::vector<RewiringAction> actions;  // in application order
  std::size_t iterations = 0;
  RewiringParams params;

  std::size_t num_additions() const;
  std::size_t num_removals() const;
};

struct RewiringResult {
  Graph graph;
  RewiringPlan plan;
};

/// Curvature-based batch rewiring. Each iteration recomputes exact ORC, then:
///  - for each of the k_add lowest-curvature edges (u,v), adds up to
///    h_per_edge non-edges (p,q), p in N(u), q in N(v), ranked by the mass an
///    optimal transport plan moves from p to q (ties: lexicographic on (p,q));
///  - removes the k_remove highest-curvature edges (ties: lexicographic),
///    skipping any edge whose removal would disconnect its endpoints.
/// Throws InputError when k_remove would empty the edge set.
RewiringResult curvature_rewire(const Graph& g, const RewiringParams& params);

/// Applies plan actions in order. Throws InputError if an addition is already
/// an edge or a removal is not.
Graph replay_plan(const Graph& g, const RewiringPlan& plan);

/// One JSON object per line: {"op":"add"|"remove","u":..,"v":..,"trigger_u":..,"trigger_v":..,"iter":..}.
void write_plan_jsonl(std::ostream& out, const RewiringPlan& plan);
RewiringPlan read_plan_jsonl(std::istream& in);

}  // namespace ricci
