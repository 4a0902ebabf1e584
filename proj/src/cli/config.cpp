#include "cli/config.hpp"

namespace ricci::cli {

double RunConfig::resolved_alpha() const {
  if (alpha >= 0.0) return alpha;
  return method == "orc-idleness" || method == "orc_idleness" ? 0.5 : 0.0;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["graph"] = graph;
  j["tu_dir"] = tu_dir;
  j["generator"] = generator;
  j["one_indexed"] = one_indexed;
  j["method"] = method;
  j["alpha"] = resolved_alpha();
  j["epsilon"] = epsilon;
  j["sinkhorn_iters"] = sinkhorn_iters;
  j["strict"] = strict;
  j["lcp"] = lcp;
  j["lcp_method"] = lcp_method;
  j["ldp"] = ldp;
  j["lape"] = lape;
  j["rwpe"] = rwpe;
  j["include_features"] = include_features;
  j["binary"] = binary;
  j["rewire_iters"] = rewire_iters;
  j["k_add"] = k_add;
  j["k_remove"] = k_remove;
  j["h_per_edge"] = h_per_edge;
  j["encode_order"] = encode_order;
  j["plan_out"] = plan_out;
  j["features_out"] = features_out;
  j["graph_a"] = graph_a;
  j["graph_b"] = graph_b;
  j["wl_encoding"] = wl_encoding;
  j["decimals"] = decimals;
  j["max_rounds"] = max_rounds;
  j["out"] = out;
  j["format"] = format;
  j["threads"] = threads;
  j["seed"] = seed;
  return j;
}

}  // namespace ricci::cli
