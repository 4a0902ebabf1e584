#include "ricci/generators.hpp"

#include <charconv>
#include <string>
#include <vector>

#include "ricci/error.hpp"

namespace ricci {
namespace {

constexpr std::size_t kMinNodes = 2;
constexpr std::size_t kMaxNodes = 1'000'000;

void check_size(std::size_t n, std::size_t min_nodes, const char* what) {
  if (n < min_nodes || n > kMaxNodes) {
    throw InputError(std::string(what) + " size " + std::to_string(n) + " outside [" +
                     std::to_string(min_nodes) + ", " + std::to_string(kMaxNodes) + "]");
  }
}

Graph torus_cayley(const std::vector<std::pair<int, int>>& connection) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (auto [da, db] : connection) {
        int c = (a + da + 4) % 4;
        int d = (b + db + 4) % 4;
        pairs.emplace_back(static_cast<NodeId>(4 * a + b), static_cast<NodeId>(4 * c + d));
      }
    }
  }
  return Graph::from_pairs(16, pairs);
}

// splitmix64
struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

std::vector<std::string_view> split_args(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',' || s[i] == ':') {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

template <typename T>
T arg(std::string_view tok, std::string_view spec) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw InputError("bad generator argument '" + std::string(tok) + "' in " + std::string(spec));
  }
  return value;
}

}  // namespace

Graph rook4x4() {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId x = 0; x < 16; ++x) {
    for (NodeId y = x + 1; y < 16; ++y) {
      if (x / 4 == y / 4 || x % 4 == y % 4) pairs.emplace_back(x, y);
    }
  }
  return Graph::from_pairs(16, pairs);
}

Graph shrikhande() { return torus_cayley({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}}); }

Graph complete_graph(std::size_t n) {
  check_size(n, kMinNodes, "complete");
  std::vector<EdgeKey> edges;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b) edges.push_back({a, b});
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  check_size(n, 3, "cycle");
  std::vector<EdgeKey> edges;
  for (NodeId a = 0; a < n; ++a) edges.push_back(EdgeKey::canonical(a, static_cast<NodeId>((a + 1) % n)));
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  check_size(n, kMinNodes, "path");
  std::vector<EdgeKey> edges;
  for (NodeId a = 0; a + 1 < n; ++a) edges.push_back({a, a + 1});
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t n) {
  check_size(n, kMinNodes, "star");
  std::vector<EdgeKey> edges;
  for (NodeId a = 1; a < n; ++a) edges.push_back({0, a});
  return Graph::from_edges(n, edges);
}

Graph barbell_graph(std::size_t k) {
  check_size(2 * k, 4, "barbell");
  std::vector<EdgeKey> edges;
  for (std::size_t side = 0; side < 2; ++side) {
    auto base = static_cast<NodeId>(side * k);
    for (NodeId a = 0; a < k; ++a)
      for (NodeId b = a + 1; b < k; ++b) edges.push_back({base + a, base + b});
  }
  edges.push_back({static_cast<NodeId>(k - 1), static_cast<NodeId>(k)});
  return Graph::from_edges(2 * k, edges);
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  check_size(n, 1, "erdos_renyi");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  SplitMix rng{seed};
  std::vector<EdgeKey> edges;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (rng.uniform() < p) edges.push_back({a, b});
  return Graph::from_edges(n, edges);
}

Graph generate_named(std::string_view spec) {
  std::string_view name = spec;
  std::string_view args;
  if (auto open = spec.find_first_of("(:"); open != std::string_view::npos) {
    name = spec.substr(0, open);
    args = spec.substr(open + 1);
    if (spec[open] == '(') {
      if (!args.ends_with(')')) throw InputError("unbalanced parenthesis in " + std::string(spec));
      args.remove_suffix(1);
    }
  }
  auto argv = args.empty() ? std::vector<std::string_view>{} : split_args(args);
  auto need = [&](std::size_t count) {
    if (argv.size() != count) {
      throw InputError("generator " + std::string(name) + " takes " + std::to_string(count) +
                       " argument(s)");
    }
  };

  if (name == "rook4x4") return need(0), rook4x4();
  if (name == "shrikhande") return need(0), shrikhande();
  if (name == "complete") return need(1), complete_graph(arg<std::size_t>(argv[0], spec));
  if (name == "cycle") return need(1), cycle_graph(arg<std::size_t>(argv[0], spec));
  if (name == "path") return need(1), path_graph(arg<std::size_t>(argv[0], spec));
  if (name == "star") return need(1), star_graph(arg<std::size_t>(argv[0], spec));
  if (name == "barbell") return need(1), barbell_graph(arg<std::size_t>(argv[0], spec));
  if (name == "er") {
    need(3);
    return erdos_renyi(arg<std::size_t>(argv[0], spec), arg<double>(argv[1], spec),
                       arg<std::uint64_t>(argv[2], spec));
  }
  throw InputError("unknown generator '" + std::string(name) + "'");
}

}  // namespace ricci
