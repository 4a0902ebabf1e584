#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ricci/graph.hpp"

namespace ricci {

struct EdgeListOptions {
  bool one_indexed = false;
  std::string comment_prefix = "#";
};

struct ParsedGraph {
  Graph graph;
  BuildReport report;
};

/// Reads whitespace- or comma-separated node pairs, one per line.
///
/// The node count is max id + 1 unless a `# num_nodes: N` comment raises it,
/// which lets isolated trailing nodes survive a write/read cycle. Throws
/// ParseError on a malformed line and InputError on empty input.
ParsedGraph parse_edge_list(std::istream& in, const EdgeListOptions& options = {});

/// Writes `# num_nodes: N` followed by canonical edges in id order.
void write_edge_list(std::ostream& out, const Graph& g, bool one_indexed = false);

/// JSON graph document: {"num_nodes": n, "edges": [[u,v],...], "features": [[...],...]}.
/// A `"directed": true` document is rejected.
Graph parse_graph_json(std::istream& in);
void write_graph_json(std::ostream& out, const Graph& g);

/// TUDataset directory: DS_A.txt and DS_graph_indicator.txt are required;
/// DS_graph_labels.txt, DS_node_labels.txt and DS_node_attributes.txt are
/// optional. Node labels become one-hot columns followed by raw attributes.
GraphCollection parse_tu_dataset(const std::filesystem::path& dir);

/// Loads a single graph, choosing JSON for `.json` files and the edge-list
/// reader otherwise.
Graph load_graph_file(const std::filesystem::path& path, const EdgeListOptions& options = {});

}  // namespace ricci
