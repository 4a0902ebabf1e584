#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace ricci::cli {

/// Every knob of a CLI run. Filled from flags and/or a flat `key = value`
/// config file (`--config`); flags win. Echoed verbatim into output manifests.
struct RunConfig {
  std::string command;

  // input
  std::string graph;      // edge list or .json
  std::string tu_dir;     // TUDataset directory
  std::string generator;  // generator spec, e.g. "rook4x4"
  bool one_indexed = false;

  // curvature
  std::string method = "orc-exact";
  double alpha = -1.0;  // < 0: method default (0.5 for orc-idleness, else 0)
  double epsilon = 0.01;
  int sinkhorn_iters = 10000;
  bool strict = false;

  // encoders
  std::string lcp = "none";  // none | summary | extremes | minmax | combinatorial
  std::string lcp_method = "orc-exact";
  bool ldp = false;
  std::size_t lape = 0;
  std::size_t rwpe = 0;
  bool include_features = false;
  bool binary = false;

  // rewiring
  std::size_t rewire_iters = 3;
  std::size_t k_add = 4;
  std::size_t k_remove = 4;
  std::size_t h_per_edge = 1;
  std::string encode_order = "after";  // before | after
  std::string plan_out;
  std::string features_out;

  // wl
  std::string graph_a;
  std::string graph_b;
  std::string wl_encoding = "lcp";
  int decimals = 6;
  std::size_t max_rounds = 32;

  // output
  std::string out;
  std::string format;  // csv | json; empty = from extension
  unsigned threads = 0;
  std::uint64_t seed = 0;

  double resolved_alpha() const;
  nlohmann::ordered_json to_json() const;
};

}  // namespace ricci::cli
