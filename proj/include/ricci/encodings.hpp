#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ricci/curvature.hpp"
#include "ricci/graph.hpp"

namespace ricci {

struct ColumnGroup {
  std::string name;
  std::size_t width = 0;
  bool operator==(const ColumnGroup&) const = default;
};

/// Dense |V| x d node features with named column groups.
/// Rows follow node-id order; entries are always finite.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  /// Throws InputError if group widths do not sum to the column count or an
  /// entry is NaN/Inf.
  FeatureMatrix(Eigen::MatrixXd data, std::vector<ColumnGroup> groups);
  static FeatureMatrix single(std::string name, Eigen::MatrixXd data);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(data_.cols()); }
  const Eigen::MatrixXd& data() const noexcept { return data_; }
  const std::vector<ColumnGroup>& groups() const noexcept { return groups_; }
  /// "<group>_<i>" for each column, i counted from 0 within the group.
  std::vector<std::string> column_names() const;

 private:
  Eigen::MatrixXd data_;
  std::vector<ColumnGroup> groups_;
};

/// Curvatures of the edges incident to v, in neighbor order.
std::vector<double> curvature_multiset(const Graph& g, const EdgeCurvatureMap& curvs, NodeId v);

enum class LcpVariant { Summary, Extremes, MinMax, Combinatorial };
LcpVariant parse_lcp_variant(std::string_view name);
std::string_view to_string(LcpVariant v);

/// [min, max, mean, std, median] of each node's curvature multiset.
/// Population std; even-sized medians average the two central values.
FeatureMatrix lcp_summary(const Graph& g, const EdgeCurvatureMap& curvs);

/// Order statistics [1st, 2nd, 3rd, (n-1)th, nth] of the curvature multiset.
/// For n < 5 the three low slots clamp into the lower half (index <= ceil(n/2))
/// and the two high slots into the upper half (index > floor(n/2)), so rows
/// stay sorted: {1,2} -> [1,1,1,2,2].
FeatureMatrix lcp_extremes(const Graph& g, const EdgeCurvatureMap& curvs);

/// [min, max] of the curvature multiset.
FeatureMatrix lcp_minmax(const Graph& g, const EdgeCurvatureMap& curvs);

/// [min of lower bounds, max of upper bounds] over incident edges, from the
/// combinatorial ORC bounds. Never runs a transport solve.
FeatureMatrix lcp_combinatorial(const Graph& g);

/// Dispatches on variant; `curvs` is ignored for Combinatorial.
FeatureMatrix lcp(const Graph& g, const EdgeCurvatureMap& curvs, LcpVariant variant);

/// [deg, min, max, mean, std] of neighbor degrees.
FeatureMatrix ldp(const Graph& g);

struct LaplacianEncoding {
  FeatureMatrix features;
  /// Per connected component (in order of smallest node id): the nontrivial
  /// eigenvalues used, ascending.
  std::vector<std::vector<double>> eigenvalues;
};

/// Eigenvectors of I - D^-1/2 A D^-1/2 for the k smallest nontrivial
/// eigenvalues, computed per connected component. Columns are unit-norm
/// within a component; the entry of largest magnitude (first on ties) is made
/// positive. Missing columns are zero.
LaplacianEncoding laplacian_encoding(const Graph& g, std::size_t k, unsigned threads = 0);
FeatureMatrix lape(const Graph& g, std::size_t k, unsigned threads = 0);

/// Column k-1 holds diag((D^-1 A)^k), the k-step return probability.
FeatureMatrix rwpe(const Graph& g, std::size_t walk_length, unsigned threads = 0);

/// Horizontal concatenation, optionally prefixed by the graph's input
/// features as group "x". Throws InputError on row-count mismatch.
FeatureMatrix assemble(const Graph& g, std::span<const FeatureMatrix> parts, bool include_input_features);

}  // namespace ricci
