#include "ricci/encodings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ricci/error.hpp"
#include "ricci/parallel.hpp"

namespace ricci {
namespace {

using Index = Eigen::Index;

struct Summary {
  double min = 0, max = 0, mean = 0, std = 0, median = 0;
};

// `values` must be sorted and non-empty.
Summary summarize_sorted(const std::vector<double>& values) {
  Summary s;
  const std::size_t n = values.size();
  s.min = values.front();
  s.max = values.back();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double x : values) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(n));
  s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  return s;
}

void check_covers(const Graph& g, const EdgeCurvatureMap& curvs) {
  if (curvs.edges() != g.edges()) throw InputError("curvature map does not match the graph's edges");
}

template <typename RowFn>
Eigen::MatrixXd per_node(const Graph& g, Index width, RowFn&& fill) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Index>(g.num_nodes()), width);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) > 0) fill(v, out.row(v));
  }
  return out;
}

}  // namespace

FeatureMatrix::FeatureMatrix(Eigen::MatrixXd data, std::vector<ColumnGroup> groups)
    : data_(std::move(data)), groups_(std::move(groups)) {
  std::size_t width = 0;
  for (const auto& grp : groups_) width += grp.width;
  if (width != cols()) throw InputError("column groups do not cover the feature width");
  if (!data_.allFinite()) throw InputError("feature matrix contains NaN or Inf");
}

FeatureMatrix FeatureMatrix::single(std::string name, Eigen::MatrixXd data) {
  auto width = static_cast<std::size_t>(data.cols());
  return FeatureMatrix(std::move(data), {{std::move(name), width}});
}

std::vector<std::string> FeatureMatrix::column_names() const {
  std::vector<std::string> names;
  names.reserve(cols());
  for (const auto& grp : groups_)
    for (std::size_t i = 0; i < grp.width; ++i) names.push_back(grp.name + "_" + std::to_string(i));
  return names;
}

std::vector<double> curvature_multiset(const Graph& g, const EdgeCurvatureMap& curvs, NodeId v) {
  std::vector<double> out;
  out.reserve(g.degree(v));
  for (EdgeId id : g.incident_edges(v)) out.push_back(curvs[id]);
  return out;
}

LcpVariant parse_lcp_variant(std::string_view name) {
  if (name == "summary") return LcpVariant::Summary;
  if (name == "extremes") return LcpVariant::Extremes;
  if (name == "minmax") return LcpVariant::MinMax;
  if (name == "combinatorial") return LcpVariant::Combinatorial;
  throw InputError("unknown LCP variant '" + std::string(name) + "'");
}

std::string_view to_string(LcpVariant v) {
  switch (v) {
    case LcpVariant::Summary:
      return "summary";
    case LcpVariant::Extremes:
      return "extremes";
    case LcpVariant::MinMax:
      return "minmax";
    case LcpVariant::Combinatorial:
      return "combinatorial";
  }
  return "summary";
}

FeatureMatrix lcp_summary(const Graph& g, const EdgeCurvatureMap& curvs) {
  check_covers(g, curvs);
  auto data = per_node(g, 5, [&](NodeId v, auto row) {
    auto cms = curvature_multiset(g, curvs, v);
    std::sort(cms.begin(), cms.end());
    auto s = summarize_sorted(cms);
    row << s.min, s.max, s.mean, s.std, s.median;
  });
  return FeatureMatrix::single("lcp", std::move(data));
}

FeatureMatrix lcp_extremes(const Graph& g, const EdgeCurvatureMap& curvs) {
  check_covers(g, curvs);
  auto data = per_node(g, 5, [&](NodeId v, auto row) {
    auto cms = curvature_multiset(g, curvs, v);
    std::sort(cms.begin(), cms.end());
    const std::size_t n = cms.size();
    const std::size_t low_cap = (n + 1) / 2;
    const std::size_t high_floor = n / 2 + 1;
    // 1-based order statistics.
    auto at = [&](std::size_t k) { return cms[k - 1]; };
    row << at(std::min<std::size_t>(1, low_cap)), at(std::min<std::size_t>(2, low_cap)),
        at(std::min<std::size_t>(3, low_cap)), at(std::max(n - 1, high_floor)), at(n);
  });
  return FeatureMatrix::single("lcp", std::move(data));
}

FeatureMatrix lcp_minmax(const Graph& g, const EdgeCurvatureMap& curvs) {
  check_covers(g, curvs);
  auto data = per_node(g, 2, [&](NodeId v, auto row) {
    auto cms = curvature_multiset(g, curvs, v);
    auto [lo, hi] = std::minmax_element(cms.begin(), cms.end());
    row << *lo, *hi;
  });
  return FeatureMatrix::single("lcp", std::move(data));
}

FeatureMatrix lcp_combinatorial(const Graph& g) {
  std::vector<CurvatureBounds> bounds(g.num_edges());
  for (EdgeId id = 0; id < g.num_edges(); ++id) bounds[id] = orc_bounds(g, g.edges()[id]);
  auto data = per_node(g, 2, [&](NodeId v, auto row) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (EdgeId id : g.incident_edges(v)) {
      lo = std::min(lo, bounds[id].lower);
      hi = std::max(hi, bounds[id].upper);
    }
    row << lo, hi;
  });
  return FeatureMatrix::single("lcp", std::move(data));
}

FeatureMatrix lcp(const Graph& g, const EdgeCurvatureMap& curvs, LcpVariant variant) {
  switch (variant) {
    case LcpVariant::Summary:
      return lcp_summary(g, curvs);
    case LcpVariant::Extremes:
      return lcp_extremes(g, curvs);
    case LcpVariant::MinMax:
      return lcp_minmax(g, curvs);
    case LcpVariant::Combinatorial:
      return lcp_combinatorial(g);
  }
  return lcp_summary(g, curvs);
}

FeatureMatrix ldp(const Graph& g) {
  auto data = per_node(g, 5, [&](NodeId v, auto row) {
    std::vector<double> degs;
    for (NodeId w : g.neighbors(v)) degs.push_back(static_cast<double>(g.degree(w)));
    std::sort(degs.begin(), degs.end());
    auto s = summarize_sorted(degs);
    row << static_cast<double>(g.degree(v)), s.min, s.max, s.mean, s.std;
  });
  return FeatureMatrix::single("ldp", std::move(data));
}

LaplacianEncoding laplacian_encoding(const Graph& g, std::size_t k, unsigned threads) {
  if (k == 0) throw InputError("number of Laplacian eigenvectors must be positive");
  std::vector<std::uint32_t> label;
  const std::size_t num_components = g.connected_components(&label);
  std::vector<std::vector<NodeId>> members(num_components);
  for (NodeId v = 0; v < g.num_nodes(); ++v) members[label[v]].push_back(v);

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Index>(g.num_nodes()), static_cast<Index>(k));
  std::vector<std::vector<double>> spectra(num_components);

  parallel_for(num_components, threads, [&](std::size_t c) {
    const auto& nodes = members[c];
    const auto s = static_cast<Index>(nodes.size());
    if (s < 2) return;
    std::vector<Index> local(g.num_nodes(), -1);
    for (Index i = 0; i < s; ++i) local[nodes[static_cast<std::size_t>(i)]] = i;

    Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(s, s);
    for (Index i = 0; i < s; ++i) {
      const NodeId v = nodes[static_cast<std::size_t>(i)];
      const double dv = static_cast<double>(g.degree(v));
      for (NodeId w : g.neighbors(v)) {
        lap(i, local[w]) -= 1.0 / std::sqrt(dv * static_cast<double>(g.degree(w)));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    if (solver.info() != Eigen::Success) throw NumericalError("Laplacian eigensolver failed");

    // Index 0 is the trivial D^1/2 1 direction of the component.
    const Index take = std::min<Index>(static_cast<Index>(k), s - 1);
    for (Index col = 0; col < take; ++col) {
      Eigen::VectorXd vec = solver.eigenvectors().col(col + 1);
      Index pivot = 0;
      for (Index i = 1; i < s; ++i)
        if (std::abs(vec(i)) > std::abs(vec(pivot)) + 1e-12) pivot = i;
      if (vec(pivot) < 0) vec = -vec;
      for (Index i = 0; i < s; ++i) out(nodes[static_cast<std::size_t>(i)], col) = vec(i);
      spectra[c].push_back(solver.eigenvalues()(col + 1));
    }
  }, 1);

  return {FeatureMatrix::single("lape", std::move(out)), std::move(spectra)};
}

FeatureMatrix lape(const Graph& g, std::size_t k, unsigned threads) {
  return laplacian_encoding(g, k, threads).features;
}

FeatureMatrix rwpe(const Graph& g, std::size_t walk_length, unsigned threads) {
  if (walk_length == 0) throw InputError("random-walk length must be positive");
  const std::size_t n = g.num_nodes();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Index>(n), static_cast<Index>(walk_length));

  parallel_for(n, threads, [&](std::size_t start) {
    thread_local std::vector<double> current;
    thread_local std::vector<double> next;
    thread_local std::vector<NodeId> active;
    thread_local std::vector<NodeId> touched;
    current.assign(n, 0.0);
    next.assign(n, 0.0);
    const auto s = static_cast<NodeId>(start);
    current[s] = 1.0;
    active.assign(1, s);
    for (std::size_t step = 1; step <= walk_length; ++step) {
      touched.clear();
      for (NodeId z : active) {
        const double share = current[z] / static_cast<double>(g.degree(z));
        for (NodeId w : g.neighbors(z)) {
          if (next[w] == 0.0) touched.push_back(w);
          next[w] += share;
        }
        current[z] = 0.0;
      }
      out(static_cast<Index>(start), static_cast<Index>(step - 1)) = next[s];
      std::swap(current, next);
      active.swap(touched);
      // Slots written this step now live in `current`; `next` is all zero.
    }
  });
  return FeatureMatrix::single("rwpe", std::move(out));
}

FeatureMatrix assemble(const Graph& g, std::span<const FeatureMatrix> parts, bool include_input_features) {
  const auto rows = static_cast<Index>(g.num_nodes());
  Index width = include_input_features ? g.node_features().cols() : 0;
  for (const auto& p : parts) {
    if (static_cast<Index>(p.rows()) != rows) throw InputError("feature parts have different row counts");
    width += static_cast<Index>(p.cols());
  }
  Eigen::MatrixXd data(rows, width);
  std::vector<ColumnGroup> groups;
  Index col = 0;
  if (include_input_features && g.node_features().cols() > 0) {
    data.leftCols(g.node_features().cols()) = g.node_features();
    col = g.node_features().cols();
    groups.push_back({"x", static_cast<std::size_t>(col)});
  }
  for (const auto& p : parts) {
    data.middleCols(col, static_cast<Index>(p.cols())) = p.data();
    col += static_cast<Index>(p.cols());
    groups.insert(groups.end(), p.groups().begin(), p.groups().end());
  }
  return FeatureMatrix(std::move(data), std::move(groups));
}

}  // namespace ricci
