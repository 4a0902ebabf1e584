#pragma once

#include <span>

#include "ricci/curvature.hpp"
#include "ricci/graph.hpp"

namespace ricci {

struct CurvatureSummary {
  std::size_t count = 0;  // values (pooled) or graphs with edges (per-graph mean)
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;  // population
  bool empty() const noexcept { return count == 0; }
};

CurvatureSummary summarize_curvatures(std::span<const double> values);

/// Edge-curvature statistics of a graph collection, aggregated two ways:
/// `pooled` over all edges of all graphs, and `per_graph_mean`, the average
/// over graphs (with at least one edge) of each graph's min/max/mean/std.
struct CollectionCurvatureStats {
  std::size_t graphs = 0;
  std::size_t edges = 0;
  CurvatureSummary pooled;
  CurvatureSummary per_graph_mean;
};

CollectionCurvatureStats collection_curvature_stats(std::span<const Graph> graphs, const CurvatureMethod& method,
                                                    unsigned threads = 0);

}  // namespace ricci
