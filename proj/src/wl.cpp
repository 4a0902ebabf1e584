#include "ricci/wl.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ricci/error.hpp"

namespace ricci {
namespace {

constexpr std::uint64_t kInitTag = ~std::uint64_t{0};
constexpr std::uint64_t kFeatureTag = ~std::uint64_t{0} - 1;

std::vector<Color> initial_colors(const Graph& g, const std::vector<Color>* init, ColorDictionary& dict) {
  if (init && init->size() != g.num_nodes()) throw InputError("initial labels must have one entry per node");
  std::vector<Color> colors(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) colors[v] = dict.intern({kInitTag, init ? (*init)[v] : 0});
  return colors;
}

std::vector<Color> refine_once(const Graph& g, const std::vector<Color>& colors, ColorDictionary& dict) {
  std::vector<Color> next(g.num_nodes());
  std::vector<std::uint64_t> sig;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    sig.assign(1, colors[v]);
    for (NodeId w : g.neighbors(v)) sig.push_back(colors[w]);
    std::sort(sig.begin() + 1, sig.end());
    next[v] = dict.intern(sig);
  }
  return next;
}

std::map<Color, std::size_t> histogram(const std::vector<Color>& colors) {
  std::map<Color, std::size_t> h;
  for (Color c : colors) ++h[c];
  return h;
}

std::vector<Color> encoding_labels(const Graph& g, WlEncoding encoding, const WlOptions& options,
                                   ColorDictionary& dict) {
  switch (encoding) {
    case WlEncoding::None:
      return std::vector<Color>(g.num_nodes(), 0);
    case WlEncoding::Degree: {
      std::vector<Color> out(g.num_nodes());
      for (NodeId v = 0; v < g.num_nodes(); ++v) out[v] = g.degree(v);
      return out;
    }
    case WlEncoding::Lcp: {
      auto curvs = orc_all(g, Measure::open_uniform(), OrcSolver::exact());
      return discretize_features(lcp_summary(g, curvs), options.decimals, dict);
    }
    case WlEncoding::Ldp:
      return discretize_features(ldp(g), options.decimals, dict);
    case WlEncoding::Rwpe:
      return discretize_features(rwpe(g, options.rwpe_length), options.decimals, dict);
  }
  return std::vector<Color>(g.num_nodes(), 0);
}

}  // namespace

Color ColorDictionary::intern(const std::vector<std::uint64_t>& signature) {
  auto [it, inserted] = ids_.try_emplace(signature, static_cast<Color>(ids_.size()));
  return it->second;
}

std::size_t ColorHistogram::total() const {
  std::size_t n = 0;
  for (const auto& [color, count] : counts) n += count;
  return n;
}

ColorHistogram wl_refine(const Graph& g, const std::vector<Color>* init_labels, std::size_t max_rounds,
                         ColorDictionary& dictionary) {
  auto colors = initial_colors(g, init_labels, dictionary);
  ColorHistogram out;
  out.counts = histogram(colors);
  out.distinct_per_round.push_back(out.counts.size());
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    auto next = refine_once(g, colors, dictionary);
    auto h = histogram(next);
    const bool grew = h.size() > out.counts.size();
    colors = std::move(next);
    out.counts = std::move(h);
    out.rounds = round;
    out.distinct_per_round.push_back(out.counts.size());
    if (!grew) break;
  }
  return out;
}

std::vector<Color> discretize_features(const FeatureMatrix& features, int decimals, ColorDictionary& dictionary) {
  if (decimals < 0 || decimals > 15) throw InputError("decimals must lie in [0, 15]");
  const double scale = std::pow(10.0, decimals);
  const auto& x = features.data();
  std::vector<Color> labels(features.rows());
  std::vector<std::uint64_t> key;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    key.assign(1, kFeatureTag);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      key.push_back(static_cast<std::uint64_t>(std::llround(x(i, j) * scale)));
    }
    labels[static_cast<std::size_t>(i)] = dictionary.intern(key);
  }
  return labels;
}

std::vector<Color> discretize_features(const FeatureMatrix& features, int decimals) {
  ColorDictionary dict;
  return discretize_features(features, decimals, dict);
}

WlEncoding parse_wl_encoding(std::string_view name) {
  if (name == "none") return WlEncoding::None;
  if (name == "degree") return WlEncoding::Degree;
  if (name == "lcp") return WlEncoding::Lcp;
  if (name == "ldp") return WlEncoding::Ldp;
  if (name == "rwpe") return WlEncoding::Rwpe;
  throw InputError("unknown WL encoding '" + std::string(name) + "'");
}

std::string_view to_string(WlEncoding e) {
  switch (e) {
    case WlEncoding::None:
      return "none";
    case WlEncoding::Degree:
      return "degree";
    case WlEncoding::Lcp:
      return "lcp";
    case WlEncoding::Ldp:
      return "ldp";
    case WlEncoding::Rwpe:
      return "rwpe";
  }
  return "none";
}

WlVerdict distinguishable(const Graph& a, const Graph& b, WlEncoding encoding, const WlOptions& options) {
  ColorDictionary dict;
  auto labels_a = encoding_labels(a, encoding, options, dict);
  auto labels_b = encoding_labels(b, encoding, options, dict);
  auto colors_a = initial_colors(a, &labels_a, dict);
  auto colors_b = initial_colors(b, &labels_b, dict);

  auto union_size = [](const std::vector<Color>& x, const std::vector<Color>& y) {
    std::set<Color> s(x.begin(), x.end());
    s.insert(y.begin(), y.end());
    return s.size();
  };

  WlVerdict verdict;
  std::size_t distinct = union_size(colors_a, colors_b);
  for (std::size_t round = 0;; ++round) {
    verdict.rounds = round;
    if (histogram(colors_a) != histogram(colors_b)) {
      verdict.separated = true;
      return verdict;
    }
    if (round == options.max_rounds) break;
    colors_a = refine_once(a, colors_a, dict);
    colors_b = refine_once(b, colors_b, dict);
    const std::size_t now = union_size(colors_a, colors_b);
    if (now <= distinct) {
      // Stable partition of the disjoint union: equal histograms stay equal.
      verdict.rounds = round + 1;
      verdict.separated = histogram(colors_a) != histogram(colors_b);
      return verdict;
    }
    distinct = now;
  }
  return verdict;
}

}  // namespace ricci
