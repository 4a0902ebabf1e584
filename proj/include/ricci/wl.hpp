#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "ricci/encodings.hpp"
#include "ricci/graph.hpp"

namespace ricci {

using Color = std::uint64_t;

/// Interns signatures (sequences of integers) to dense ids. Two signatures get
/// the same id iff they are equal, so there are no hash collisions.
class ColorDictionary {
 public:
  Color intern(const std::vector<std::uint64_t>& signature);
  std::size_t size() const noexcept { return ids_.size(); }

 private:
  std::map<std::vector<std::uint64_t>, Color> ids_;
};

struct ColorHistogram {
  std::map<Color, std::size_t> counts;
  std::size_t rounds = 0;
  /// Number of distinct colors after round 0 (initial labels), 1, 2, ...
  std::vector<std::size_t> distinct_per_round;

  std::size_t total() const;
  /// Compares color counts only.
  bool operator==(const ColorHistogram& other) const { return counts == other.counts; }
};

/// 1-WL refinement: color(v) <- id(color(v), sorted neighbor colors). Stops
/// once the number of colors stops growing or after max_rounds rounds.
/// Histograms are comparable across graphs refined with the same dictionary.
ColorHistogram wl_refine(const Graph& g, const std::vector<Color>* init_labels, std::size_t max_rounds,
                         ColorDictionary& dictionary);

/// Rounds each row to `decimals` places and interns the rounded tuple, so
/// equal rows get equal labels.
std::vector<Color> discretize_features(const FeatureMatrix& features, int decimals, ColorDictionary& dictionary);
std::vector<Color> discretize_features(const FeatureMatrix& features, int decimals = 6);

enum class WlEncoding { None, Degree, Lcp, Ldp, Rwpe };
WlEncoding parse_wl_encoding(std::string_view name);
std::string_view to_string(WlEncoding e);

struct WlOptions {
  std::size_t max_rounds = 32;
  int decimals = 6;
  std::size_t rwpe_length = 16;
};

struct WlVerdict {
  bool separated = false;
  std::size_t rounds = 0;
};

/// Refines both graphs in lockstep from the chosen encoding's discretized
/// labels (ORC LCP summary for Lcp); separated iff some round's histograms
/// differ.
WlVerdict distinguishable(const Graph& a, const Graph& b, WlEncoding encoding, const WlOptions& options = {});

}  // namespace ricci
