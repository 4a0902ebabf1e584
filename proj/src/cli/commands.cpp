#include "cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "ricci/curvature.hpp"
#include "ricci/encodings.hpp"
#include "ricci/error.hpp"
#include "ricci/generators.hpp"
#include "ricci/graph_io.hpp"
#include "ricci/output.hpp"
#include "ricci/rewiring.hpp"
#include "ricci/stats.hpp"
#include "ricci/version.hpp"
#include "ricci/wl.hpp"

namespace ricci::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Input {
  GraphCollection collection;
  bool is_collection = false;
};

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << content;
}

Json manifest(const RunConfig& cfg) {
  Json m;
  m["tool"] = "ricci";
  m["version"] = kVersion;
  m["config"] = cfg.to_json();
  return m;
}

Input load_input(const RunConfig& cfg) {
  const int sources = !cfg.graph.empty() + !cfg.tu_dir.empty() + !cfg.generator.empty();
  if (sources != 1) throw InputError("give exactly one of --graph, --tu-dir, --generate");
  Input in;
  if (!cfg.tu_dir.empty()) {
    in.collection = parse_tu_dataset(cfg.tu_dir);
    in.is_collection = true;
    return in;
  }
  EdgeListOptions opts;
  opts.one_indexed = cfg.one_indexed;
  if (!cfg.graph.empty()) {
    in.collection.name = fs::path(cfg.graph).stem().string();
    in.collection.graphs.push_back(load_graph_file(cfg.graph, opts));
  } else {
    in.collection.name = cfg.generator;
    in.collection.graphs.push_back(generate_named(cfg.generator));
  }
  return in;
}

Graph load_graph_or_generate(const std::string& spec) {
  if (fs::is_regular_file(spec)) return load_graph_file(spec);
  return generate_named(spec);
}

CurvatureMethod curvature_method(const RunConfig& cfg, const std::string& name) {
  SinkhornOptions sk;
  sk.epsilon = cfg.epsilon;
  sk.max_iterations = cfg.sinkhorn_iters;
  return parse_curvature_method(name, cfg.resolved_alpha(), sk);
}

std::string format_for(const RunConfig& cfg, const std::string& path, const std::string& fallback) {
  if (!cfg.format.empty()) return cfg.format;
  if (fs::path(path).extension() == ".json") return "json";
  return fallback;
}

struct EncodeOutcome {
  FeatureMatrix features;
  std::string curvature_label;
  bool sinkhorn_failed = false;
};

EncodeOutcome build_features(const Graph& g, const RunConfig& cfg) {
  EncodeOutcome outcome;
  std::vector<FeatureMatrix> parts;
  if (cfg.lcp != "none") {
    auto variant = parse_lcp_variant(cfg.lcp);
    if (variant == LcpVariant::Combinatorial) {
      parts.push_back(lcp_combinatorial(g));
      outcome.curvature_label = "orc_bounds";
    } else {
      auto method = curvature_method(cfg, cfg.lcp_method);
      auto curvs = compute_curvature(g, method, cfg.threads);
      outcome.sinkhorn_failed = !curvs.all_converged();
      outcome.curvature_label = method.label();
      parts.push_back(lcp(g, curvs, variant));
    }
  }
  if (cfg.ldp) parts.push_back(ldp(g));
  if (cfg.lape > 0) parts.push_back(lape(g, cfg.lape, cfg.threads));
  if (cfg.rwpe > 0) parts.push_back(rwpe(g, cfg.rwpe, cfg.threads));
  if (parts.empty() && !cfg.include_features) {
    throw InputError("no encoder selected (use --lcp, --ldp, --lape, --rwpe or --include-features)");
  }
  outcome.features = assemble(g, parts, cfg.include_features);
  return outcome;
}

Json feature_manifest(const RunConfig& cfg, const EncodeOutcome& enc) {
  Json m = manifest(cfg);
  m["rows"] = enc.features.rows();
  m["cols"] = enc.features.cols();
  auto groups = Json::array();
  for (const auto& grp : enc.features.groups()) groups.push_back({{"name", grp.name}, {"width", grp.width}});
  m["groups"] = std::move(groups);
  m["lcp_variant"] = cfg.lcp;
  m["curvature_method"] = enc.curvature_label;
  m["params"] = {{"lape_k", cfg.lape}, {"rwpe_k", cfg.rwpe}, {"ldp", cfg.ldp}};
  return m;
}

// Writes <prefix>.csv, <prefix>.manifest.json and optionally <prefix>.bin.
void write_feature_files(const fs::path& prefix, const Graph& g, const EncodeOutcome& enc, const RunConfig& cfg) {
  std::ostringstream csv;
  write_features_csv(csv, g, enc.features);
  write_file(prefix.string() + ".csv", csv.str());
  Json m = feature_manifest(cfg, enc);
  m["files"]["csv"] = prefix.filename().string() + ".csv";
  if (cfg.binary) {
    std::ostringstream bin;
    write_features_binary(bin, enc.features);
    write_file(prefix.string() + ".bin", bin.str());
    m["files"]["bin"] = prefix.filename().string() + ".bin";
    m["files"]["bin_layout"] = "float64 little-endian column-major";
  }
  write_file(prefix.string() + ".manifest.json", m.dump(2) + "\n");
}

fs::path strip_known_extension(const std::string& out) {
  fs::path p(out);
  if (p.extension() == ".csv" || p.extension() == ".bin") p.replace_extension();
  return p;
}

std::string graph_file_name(std::size_t index, const char* ext) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "graph_%04zu%s", index, ext);
  return buf;
}

int cmd_curvature(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto input = load_input(cfg);
  auto method = curvature_method(cfg, cfg.method);
  bool failed = false;

  auto render = [&](const Graph& g, const std::string& format) {
    auto curvs = compute_curvature(g, method, cfg.threads);
    failed = failed || !curvs.all_converged();
    std::ostringstream s;
    if (format == "json") {
      write_curvature_json(s, g, curvs);
    } else {
      write_curvature_csv(s, g, curvs);
    }
    return s.str();
  };

  if (input.is_collection) {
    if (cfg.out.empty()) throw InputError("collection input needs --out <directory>");
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    const char* ext = format == "json" ? ".json" : ".csv";
    Json index = manifest(cfg);
    index["dataset"] = input.collection.name;
    index["method"] = method.label();
    auto entries = Json::array();
    for (std::size_t i = 0; i < input.collection.graphs.size(); ++i) {
      const auto& g = input.collection.graphs[i];
      write_file(fs::path(cfg.out) / graph_file_name(i, ext), render(g, format));
      Json e{{"index", i}, {"file", graph_file_name(i, ext)}, {"num_nodes", g.num_nodes()}, {"num_edges", g.num_edges()}};
      if (!input.collection.labels.empty()) e["label"] = input.collection.labels[i];
      entries.push_back(std::move(e));
    }
    index["graphs"] = std::move(entries);
    write_file(fs::path(cfg.out) / "index.json", index.dump(2) + "\n");
  } else {
    const auto& g = input.collection.graphs.front();
    auto text = render(g, format_for(cfg, cfg.out, "csv"));
    if (cfg.out.empty()) {
      out << text;
    } else {
      write_file(cfg.out, text);
      Json m = manifest(cfg);
      m["method"] = method.label();
      m["num_edges"] = g.num_edges();
      write_file(cfg.out + ".manifest.json", m.dump(2) + "\n");
    }
  }
  if (failed && cfg.strict) {
    err << "error: Sinkhorn did not converge on every edge\n";
    return kExitNumericalError;
  }
  if (failed) err << "warning: Sinkhorn did not converge on every edge (see converged column)\n";
  return kExitOk;
}

int cmd_encode(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto input = load_input(cfg);
  bool failed = false;
  if (input.is_collection) {
    if (cfg.out.empty()) throw InputError("collection input needs --out <directory>");
    Json index = manifest(cfg);
    index["dataset"] = input.collection.name;
    auto entries = Json::array();
    for (std::size_t i = 0; i < input.collection.graphs.size(); ++i) {
      const auto& g = input.collection.graphs[i];
      auto enc = build_features(g, cfg);
      failed = failed || enc.sinkhorn_failed;
      write_feature_files(fs::path(cfg.out) / graph_file_name(i, ""), g, enc, cfg);
      Json e{{"index", i}, {"file", graph_file_name(i, ".csv")}, {"num_nodes", g.num_nodes()}};
      if (!input.collection.labels.empty()) e["label"] = input.collection.labels[i];
      entries.push_back(std::move(e));
    }
    index["graphs"] = std::move(entries);
    write_file(fs::path(cfg.out) / "index.json", index.dump(2) + "\n");
  } else {
    const auto& g = input.collection.graphs.front();
    auto enc = build_features(g, cfg);
    failed = enc.sinkhorn_failed;
    if (cfg.out.empty()) {
      write_features_csv(out, g, enc.features);
    } else {
      write_feature_files(strip_known_extension(cfg.out), g, enc, cfg);
    }
  }
  if (failed && cfg.strict) {
    err << "error: Sinkhorn did not converge on every edge\n";
    return kExitNumericalError;
  }
  return kExitOk;
}

Json summary_json(const CurvatureSummary& s) {
  if (s.empty()) return {{"count", 0}, {"status", "no edges"}};
  return {{"count", s.count}, {"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"std", s.std}};
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  auto input = load_input(cfg);
  auto method = curvature_method(cfg, cfg.method);
  auto stats = collection_curvature_stats(input.collection.graphs, method, cfg.threads);

  Json doc = manifest(cfg);
  doc["dataset"] = input.collection.name;
  doc["method"] = method.label();
  doc["graphs"] = stats.graphs;
  doc["edges"] = stats.edges;
  doc["pooled"] = summary_json(stats.pooled);
  doc["per_graph_mean"] = summary_json(stats.per_graph_mean);

  const std::string format = format_for(cfg, cfg.out, "table");
  std::ostringstream table;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %-24s %-15s %7s %9s %10s %10s %10s %10s\n", "dataset", "method",
                "aggregate", "graphs", "edges", "min", "max", "mean", "std");
  table << line;
  auto row = [&](const char* aggregate, const CurvatureSummary& s) {
    if (s.empty()) {
      std::snprintf(line, sizeof line, "%-16s %-24s %-15s %7zu %9zu %s\n", input.collection.name.c_str(),
                    method.label().c_str(), aggregate, stats.graphs, stats.edges, "no edges");
    } else {
      std::snprintf(line, sizeof line, "%-16s %-24s %-15s %7zu %9zu %10.6f %10.6f %10.6f %10.6f\n",
                    input.collection.name.c_str(), method.label().c_str(), aggregate, stats.graphs, stats.edges,
                    s.min, s.max, s.mean, s.std);
    }
    table << line;
  };
  row("pooled", stats.pooled);
  row("per_graph_mean", stats.per_graph_mean);

  if (format == "json") {
    if (cfg.out.empty()) {
      out << doc.dump(2) << '\n';
    } else {
      write_file(cfg.out, doc.dump(2) + "\n");
      out << table.str();
    }
  } else {
    out << table.str();
    if (!cfg.out.empty()) write_file(cfg.out, table.str());
  }
  return kExitOk;
}

int cmd_rewire(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  auto input = load_input(cfg);
  if (input.is_collection) throw InputError("rewire takes a single graph");
  const Graph& g = input.collection.graphs.front();

  RewiringParams params;
  params.iterations = cfg.rewire_iters;
  params.k_add = cfg.k_add;
  params.k_remove = cfg.k_remove;
  params.h_per_edge = cfg.h_per_edge;
  params.measure = Measure::idleness(cfg.resolved_alpha());
  params.threads = cfg.threads;
  auto result = curvature_rewire(g, params);

  const std::string format = format_for(cfg, cfg.out, "edges");
  std::ostringstream graph_text;
  if (format == "json") {
    write_graph_json(graph_text, result.graph);
  } else {
    write_edge_list(graph_text, result.graph, cfg.one_indexed);
  }
  if (cfg.out.empty()) {
    out << graph_text.str();
  } else {
    write_file(cfg.out, graph_text.str());
    Json m = manifest(cfg);
    m["iterations"] = result.plan.iterations;
    m["additions"] = result.plan.num_additions();
    m["removals"] = result.plan.num_removals();
    m["num_edges_in"] = g.num_edges();
    m["num_edges_out"] = result.graph.num_edges();
    write_file(cfg.out + ".manifest.json", m.dump(2) + "\n");
  }
  if (!cfg.plan_out.empty()) {
    std::ostringstream plan;
    write_plan_jsonl(plan, result.plan);
    write_file(cfg.plan_out, plan.str());
  }
  if (!cfg.features_out.empty()) {
    if (cfg.encode_order != "before" && cfg.encode_order != "after") {
      throw InputError("--encode-order must be 'before' or 'after'");
    }
    const Graph& target = cfg.encode_order == "before" ? g : result.graph;
    write_feature_files(strip_known_extension(cfg.features_out), target, build_features(target, cfg), cfg);
  }
  return kExitOk;
}

int cmd_wl(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.graph_a.empty() || cfg.graph_b.empty()) throw InputError("wl needs --a and --b");
  auto a = load_graph_or_generate(cfg.graph_a);
  auto b = load_graph_or_generate(cfg.graph_b);
  WlOptions opts;
  opts.decimals = cfg.decimals;
  opts.max_rounds = cfg.max_rounds;
  if (cfg.rwpe > 0) opts.rwpe_length = cfg.rwpe;
  auto encoding = parse_wl_encoding(cfg.wl_encoding);
  auto verdict = distinguishable(a, b, encoding, opts);
  Json doc;
  doc["graph_a"] = cfg.graph_a;
  doc["graph_b"] = cfg.graph_b;
  doc["encoding"] = std::string(to_string(encoding));
  doc["rounds"] = verdict.rounds;
  doc["separated"] = verdict.separated;
  doc["manifest"] = manifest(cfg);
  if (cfg.out.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    write_file(cfg.out, doc.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.generator.empty()) throw InputError("generate needs --generate <name>");
  auto g = generate_named(cfg.generator);
  std::ostringstream text;
  if (format_for(cfg, cfg.out, "edges") == "json") {
    write_graph_json(text, g);
  } else {
    write_edge_list(text, g, cfg.one_indexed);
  }
  if (cfg.out.empty()) {
    out << text.str();
  } else {
    write_file(cfg.out, text.str());
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Discrete Ricci curvature, curvature profiles and graph encodings"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "flat key = value file; command-line flags override it");
  app.fallthrough();

  app.add_option("--graph,-g", cfg.graph, "graph file: edge list, or .json");
  app.add_option("--tu-dir", cfg.tu_dir, "TUDataset directory");
  app.add_option("--generate", cfg.generator, "generator: rook4x4, shrikhande, complete(n), cycle(n), path(n), star(n), barbell(k), er(n,p,seed)");
  app.add_flag("--one-indexed", cfg.one_indexed, "edge-list ids start at 1");

  app.add_option("--method", cfg.method, "orc-exact | orc-idleness | orc-sinkhorn | frc | afrc3 | afrc4");
  app.add_option("--alpha", cfg.alpha, "idleness: mass kept on the node itself (orc-idleness default 0.5)");
  app.add_option("--eps", cfg.epsilon, "Sinkhorn entropic regularization");
  app.add_option("--sinkhorn-iters", cfg.sinkhorn_iters, "Sinkhorn iteration cap");
  app.add_flag("--strict", cfg.strict, "exit 3 if Sinkhorn fails to converge");

  app.add_option("--lcp", cfg.lcp, "none | summary | extremes | minmax | combinatorial (bare flag: summary)")
      ->expected(0, 1)
      ->default_str("summary");
  app.add_option("--lcp-method", cfg.lcp_method, "curvature used by --lcp");
  app.add_flag("--ldp", cfg.ldp, "local degree profile");
  app.add_option("--lape", cfg.lape, "Laplacian eigenvectors (bare flag: 8)")->expected(0, 1)->default_str("8");
  app.add_option("--rwpe", cfg.rwpe, "random-walk steps (bare flag: 16)")->expected(0, 1)->default_str("16");
  app.add_flag("--include-features", cfg.include_features, "prepend input node features");
  app.add_flag("--binary", cfg.binary, "also write a float64 column-major .bin");

  app.add_option("--iters", cfg.rewire_iters, "rewiring iterations");
  app.add_option("--k-add", cfg.k_add, "negatively curved edges supported per iteration");
  app.add_option("--k-remove", cfg.k_remove, "positively curved edges removed per iteration");
  app.add_option("--h-per-edge", cfg.h_per_edge, "edges added per supported edge");
  app.add_option("--encode-order", cfg.encode_order, "encode the graph 'before' or 'after' rewiring");
  app.add_option("--plan", cfg.plan_out, "rewiring plan output (JSON lines)");
  app.add_option("--features-out", cfg.features_out, "feature output prefix for rewire");

  app.add_option("--a", cfg.graph_a, "first graph: file or generator name");
  app.add_option("--b", cfg.graph_b, "second graph: file or generator name");
  app.add_option("--encoding", cfg.wl_encoding, "none | degree | lcp | ldp | rwpe");
  app.add_option("--decimals", cfg.decimals, "rounding used to discretize features");
  app.add_option("--max-rounds", cfg.max_rounds, "WL round cap");

  app.add_option("--out,-o", cfg.out, "output path (stdout when omitted)");
  app.add_option("--format", cfg.format, "csv | json | edges | table");
  app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  app.add_option("--seed", cfg.seed, "seed for randomized alternates");

  const std::pair<const char*, const char*> commands[] = {
      {"curvature", "per-edge curvature"},
      {"encode", "node feature matrices"},
      {"rewire", "curvature-based rewiring"},
      {"stats", "curvature statistics of a graph or dataset"},
      {"wl", "1-WL separation test of two graphs"},
      {"generate", "write a generated graph"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "curvature") return cmd_curvature(cfg, out, err);
    if (cfg.command == "encode") return cmd_encode(cfg, out, err);
    if (cfg.command == "rewire") return cmd_rewire(cfg, out, err);
    if (cfg.command == "stats") return cmd_stats(cfg, out, err);
    if (cfg.command == "wl") return cmd_wl(cfg, out, err);
    return cmd_generate(cfg, out, err);
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const fs::filesystem_error& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace ricci::cli
