#include "ricci/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ricci/parallel.hpp"

namespace ricci {

CurvatureSummary summarize_curvatures(std::span<const double> values) {
  CurvatureSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double ss = 0.0;
  for (double x : values) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(values.size()));
  return s;
}

CollectionCurvatureStats collection_curvature_stats(std::span<const Graph> graphs, const CurvatureMethod& method,
                                                    unsigned threads) {
  std::vector<std::vector<double>> per_graph(graphs.size());
  if (graphs.size() == 1) {
    per_graph[0] = compute_curvature(graphs[0], method, threads).values();
  } else {
    parallel_for(graphs.size(), threads,
                 [&](std::size_t i) { per_graph[i] = compute_curvature(graphs[i], method, 1).values(); }, 1);
  }

  CollectionCurvatureStats out;
  out.graphs = graphs.size();
  std::vector<double> pooled;
  CurvatureSummary acc;
  for (const auto& values : per_graph) {
    pooled.insert(pooled.end(), values.begin(), values.end());
    if (values.empty()) continue;
    auto s = summarize_curvatures(values);
    acc.min += s.min;
    acc.max += s.max;
    acc.mean += s.mean;
    acc.std += s.std;
    ++acc.count;
  }
  out.edges = pooled.size();
  out.pooled = summarize_curvatures(pooled);
  if (acc.count > 0) {
    const auto n = static_cast<double>(acc.count);
    acc.min /= n;
    acc.max /= n;
    acc.mean /= n;
    acc.std /= n;
  }
  out.per_graph_mean = acc;
  return out;
}

}  // namespace ricci
