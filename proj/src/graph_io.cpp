#include "ricci/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ricci/error.hpp"

namespace ricci {
namespace {

constexpr std::string_view kNumNodesTag = "num_nodes:";

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits on whitespace and commas.
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& value) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::int64_t> read_int_column(const std::filesystem::path& path) {
  std::vector<std::int64_t> out;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(path)) {
    ++lineno;
    std::int64_t value = 0;
    auto toks = tokenize(line);
    if (toks.size() != 1 || !parse_number(toks[0], value)) {
      throw ParseError(lineno, path.filename().string() + ": expected one integer");
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace

ParsedGraph parse_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::int64_t declared_nodes = -1;
  std::int64_t max_id = -1;
  std::string line;
  std::size_t lineno = 0;
  const std::int64_t offset = options.one_indexed ? 1 : 0;

  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty()) continue;
    if (!options.comment_prefix.empty() && body.starts_with(options.comment_prefix)) {
      auto rest = trim(body.substr(options.comment_prefix.size()));
      if (rest.starts_with(kNumNodesTag)) {
        std::int64_t n = 0;
        if (!parse_number(trim(rest.substr(kNumNodesTag.size())), n) || n < 0) {
          throw ParseError(lineno, "bad num_nodes directive");
        }
        declared_nodes = n;
      }
      continue;
    }
    auto toks = tokenize(body);
    if (toks.size() != 2) throw ParseError(lineno, "expected two node ids");
    std::int64_t a = 0;
    std::int64_t b = 0;
    if (!parse_number(toks[0], a) || !parse_number(toks[1], b)) {
      throw ParseError(lineno, "non-integer node id");
    }
    a -= offset;
    b -= offset;
    if (a < 0 || b < 0) throw ParseError(lineno, "negative node id after index shift");
    if (a > 0xfffffffeLL || b > 0xfffffffeLL) throw ParseError(lineno, "node id too large");
    max_id = std::max({max_id, a, b});
    pairs.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
  }
  if (pairs.empty() && declared_nodes <= 0) throw InputError("edge list is empty");

  auto n = static_cast<std::size_t>(std::max(max_id + 1, declared_nodes));
  ParsedGraph result;
  result.graph = Graph::from_pairs(n, pairs, &result.report);
  std::vector<std::int64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::int64_t>(i) + offset;
  result.graph.set_source_ids(std::move(ids));
  return result;
}

void write_edge_list(std::ostream& out, const Graph& g, bool one_indexed) {
  const NodeId offset = one_indexed ? 1 : 0;
  out << "# " << kNumNodesTag << ' ' << g.num_nodes() << '\n';
  for (const auto& e : g.edges()) out << e.u + offset << ' ' << e.v + offset << '\n';
}

Graph parse_graph_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("invalid graph JSON: ") + ex.what());
  }
  if (doc.value("directed", false)) throw InputError("directed graphs are not supported");
  if (!doc.contains("num_nodes") || !doc.contains("edges")) {
    throw InputError("graph JSON needs num_nodes and edges");
  }
  try {
    auto n = doc.at("num_nodes").get<std::size_t>();
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a [u, v] pair");
      pairs.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
    }
    Graph g = Graph::from_pairs(n, pairs);
    if (doc.contains("features") && !doc["features"].empty()) {
      const auto& rows = doc["features"];
      if (rows.size() != n) throw InputError("features must have one row per node");
      auto width = rows[0].size();
      Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(width));
      for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != width) throw InputError("ragged feature rows");
        for (std::size_t j = 0; j < width; ++j) {
          x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
        }
      }
      g.set_node_features(std::move(x));
    }
    return g;
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("invalid graph JSON: ") + ex.what());
  }
}

void write_graph_json(std::ostream& out, const Graph& g) {
  nlohmann::ordered_json doc;
  doc["num_nodes"] = g.num_nodes();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  doc["edges"] = std::move(edges);
  auto features = nlohmann::ordered_json::array();
  const auto& x = g.node_features();
  if (x.cols() > 0) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      auto row = nlohmann::ordered_json::array();
      for (Eigen::Index j = 0; j < x.cols(); ++j) row.push_back(x(i, j));
      features.push_back(std::move(row));
    }
  }
  doc["features"] = std::move(features);
  out << doc.dump() << '\n';
}

GraphCollection parse_tu_dataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError(dir.string() + " is not a directory");

  std::string name;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto file = entry.path().filename().string();
    if (file.size() > 6 && file.ends_with("_A.txt")) {
      name = file.substr(0, file.size() - 6);
      break;
    }
  }
  if (name.empty()) throw InputError("no <DS>_A.txt in " + dir.string());
  auto path_of = [&](const std::string& suffix) { return dir / (name + "_" + suffix + ".txt"); };
  if (!fs::exists(path_of("graph_indicator"))) {
    throw InputError("missing " + path_of("graph_indicator").string());
  }

  const auto indicator = read_int_column(path_of("graph_indicator"));
  const std::size_t total_nodes = indicator.size();
  if (total_nodes == 0) throw InputError("empty graph indicator");

  // Graph ids are taken in ascending order; nodes keep global order inside each graph.
  std::map<std::int64_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < total_nodes; ++i) members[indicator[i]].push_back(i);
  std::vector<std::size_t> graph_of(total_nodes);
  std::vector<NodeId> local_id(total_nodes);
  std::size_t gi = 0;
  for (const auto& [gid, nodes] : members) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      graph_of[nodes[k]] = gi;
      local_id[nodes[k]] = static_cast<NodeId>(k);
    }
    ++gi;
  }

  std::vector<std::vector<std::pair<NodeId, NodeId>>> pairs(members.size());
  std::size_t lineno = 0;
  for (const auto& line : read_lines(path_of("A"))) {
    ++lineno;
    auto toks = tokenize(line);
    std::int64_t a = 0;
    std::int64_t b = 0;
    if (toks.size() != 2 || !parse_number(toks[0], a) || !parse_number(toks[1], b)) {
      throw ParseError(lineno, name + "_A.txt: expected two integers");
    }
    if (a < 1 || b < 1 || static_cast<std::size_t>(std::max(a, b)) > total_nodes) {
      throw ParseError(lineno, name + "_A.txt: node id exceeds graph indicator length " +
                                   std::to_string(total_nodes));
    }
    auto ia = static_cast<std::size_t>(a - 1);
    auto ib = static_cast<std::size_t>(b - 1);
    if (graph_of[ia] != graph_of[ib]) {
      throw ParseError(lineno, name + "_A.txt: edge crosses graph boundary");
    }
    pairs[graph_of[ia]].emplace_back(local_id[ia], local_id[ib]);
  }

  // Optional node labels (one-hot over the sorted label set) and attributes.
  Eigen::MatrixXd node_x(static_cast<Eigen::Index>(total_nodes), 0);
  if (fs::exists(path_of("node_labels"))) {
    auto labels = read_int_column(path_of("node_labels"));
    if (labels.size() != total_nodes) throw InputError("node_labels length mismatch");
    std::set<std::int64_t> distinct(labels.begin(), labels.end());
    std::map<std::int64_t, Eigen::Index> column;
    for (auto l : distinct) column.emplace(l, static_cast<Eigen::Index>(column.size()));
    node_x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total_nodes),
                                   static_cast<Eigen::Index>(distinct.size()));
    for (std::size_t i = 0; i < total_nodes; ++i) node_x(static_cast<Eigen::Index>(i), column[labels[i]]) = 1.0;
  }
  if (fs::exists(path_of("node_attributes"))) {
    auto lines = read_lines(path_of("node_attributes"));
    if (lines.size() != total_nodes) throw InputError("node_attributes length mismatch");
    const auto width = static_cast<Eigen::Index>(tokenize(lines[0]).size());
    Eigen::MatrixXd attrs(static_cast<Eigen::Index>(total_nodes), width);
    for (std::size_t i = 0; i < total_nodes; ++i) {
      auto toks = tokenize(lines[i]);
      if (static_cast<Eigen::Index>(toks.size()) != width) {
        throw ParseError(i + 1, name + "_node_attributes.txt: ragged row");
      }
      for (Eigen::Index j = 0; j < width; ++j) {
        double value = 0;
        if (!parse_number(toks[static_cast<std::size_t>(j)], value)) {
          throw ParseError(i + 1, name + "_node_attributes.txt: not a number");
        }
        attrs(static_cast<Eigen::Index>(i), j) = value;
      }
    }
    Eigen::MatrixXd joined(node_x.rows(), node_x.cols() + width);
    joined << node_x, attrs;
    node_x = std::move(joined);
  }

  GraphCollection out;
  out.name = name;
  gi = 0;
  for (const auto& [gid, nodes] : members) {
    Graph g = Graph::from_pairs(nodes.size(), pairs[gi]);
    std::vector<std::int64_t> ids(nodes.size());
    Eigen::MatrixXd x(static_cast<Eigen::Index>(nodes.size()), node_x.cols());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      ids[k] = static_cast<std::int64_t>(nodes[k]) + 1;
      if (node_x.cols() > 0) x.row(static_cast<Eigen::Index>(k)) = node_x.row(static_cast<Eigen::Index>(nodes[k]));
    }
    g.set_source_ids(std::move(ids));
    g.set_node_features(std::move(x));
    out.graphs.push_back(std::move(g));
    ++gi;
  }

  if (fs::exists(path_of("graph_labels"))) {
    auto labels = read_int_column(path_of("graph_labels"));
    if (labels.size() != out.graphs.size()) throw InputError("graph_labels length mismatch");
    out.labels.assign(labels.begin(), labels.end());
  }
  return out;
}

Graph load_graph_file(const std::filesystem::path& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  if (path.extension() == ".json") return parse_graph_json(in);
  return parse_edge_list(in, options).graph;
}

}  // namespace ricci
