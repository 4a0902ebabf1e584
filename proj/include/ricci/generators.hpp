#pragma once

#include <cstdint>
#include <string_view>

#include "ricci/graph.hpp"

namespace ricci {

/// K_4 x K_4 Cartesian product; node 4*row + col.
Graph rook4x4();
/// Cayley graph of Z_4 x Z_4 with connection set {±(1,0), ±(0,1), ±(1,1)}.
Graph shrikhande();

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// n nodes: center 0 joined to leaves 1..n-1.
Graph star_graph(std::size_t n);
/// Two K_k cliques joined by the single edge (k-1, k).
Graph barbell_graph(std::size_t clique_size);
/// G(n, p) with a fixed splitmix-style stream, stable across platforms.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Parses "rook4x4", "shrikhande", "complete(4)", "cycle:6", "er(20,0.3,7)" ...
/// Throws InputError for unknown names or out-of-range sizes.
Graph generate_named(std::string_view spec);

}  // namespace ricci
