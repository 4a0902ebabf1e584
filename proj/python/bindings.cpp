#include <optional>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ricci/curvature.hpp"
#include "ricci/encodings.hpp"
#include "ricci/error.hpp"
#include "ricci/graph.hpp"
#include "ricci/rewiring.hpp"
#include "ricci/version.hpp"

namespace py = pybind11;
using namespace ricci;

namespace {

using EdgeArray = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

Graph graph_from_array(const EdgeArray& edges, std::int64_t num_nodes) {
  if (num_nodes < 0) throw InputError("num_nodes must be non-negative");
  if (edges.size() == 0) return Graph::from_edges(static_cast<std::size_t>(num_nodes), std::span<const EdgeKey>{});
  if (edges.ndim() != 2 || edges.shape(1) != 2) throw InputError("edges must have shape (E, 2)");
  auto view = edges.unchecked<2>();
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(static_cast<std::size_t>(view.shape(0)));
  for (py::ssize_t i = 0; i < view.shape(0); ++i) {
    const auto a = view(i, 0), b = view(i, 1);
    if (a < 0 || b < 0 || a >= num_nodes || b >= num_nodes)
      throw InputError("edge " + std::to_string(i) + " references a node outside [0, num_nodes)");
    pairs.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
  }
  return Graph::from_pairs(static_cast<std::size_t>(num_nodes), pairs);
}

py::array_t<std::int64_t> edges_to_array(const std::vector<EdgeKey>& edges) {
  py::array_t<std::int64_t> out({static_cast<py::ssize_t>(edges.size()), py::ssize_t{2}});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    view(static_cast<py::ssize_t>(i), 0) = edges[i].u;
    view(static_cast<py::ssize_t>(i), 1) = edges[i].v;
  }
  return out;
}

/// Opaque immutable graph handle.
struct BoundGraph {
  Graph graph;
};

BoundGraph make_graph(const EdgeArray& edges, std::int64_t num_nodes) { return {graph_from_array(edges, num_nodes)}; }

CurvatureMethod method_from(const std::string& name, double alpha, double epsilon, int max_iterations) {
  SinkhornOptions sk;
  sk.epsilon = epsilon;
  sk.max_iterations = max_iterations;
  return parse_curvature_method(name, alpha, sk);
}

py::tuple curvature(const BoundGraph& bg, const std::string& method, double alpha, double epsilon, int max_iterations,
                    unsigned threads) {
  auto m = method_from(method, alpha, epsilon, max_iterations);
  std::vector<double> values;
  std::vector<bool> converged;
  {
    py::gil_scoped_release release;
    auto curvs = compute_curvature(bg.graph, m, threads);
    values = curvs.values();
    converged = curvs.converged();
  }
  const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(values.size())};
  py::array_t<double> kappa(shape, values.data());
  py::object flags = py::none();
  if (!converged.empty()) {
    std::vector<std::uint8_t> bytes(converged.begin(), converged.end());
    flags = py::array_t<std::uint8_t>(shape, bytes.data()).attr("astype")("bool");
  }
  return py::make_tuple(kappa, edges_to_array(bg.graph.edges()), flags, m.label());
}

py::tuple encode(const BoundGraph& bg, const std::string& lcp_variant, const std::string& lcp_method, double alpha,
                 bool use_ldp, std::size_t lape_k, std::size_t rwpe_k, bool include_features, unsigned threads) {
  const Graph& g = bg.graph;
  std::vector<FeatureMatrix> parts;
  std::string label;
  std::optional<LcpVariant> variant;
  if (!lcp_variant.empty() && lcp_variant != "none") variant = parse_lcp_variant(lcp_variant);
  CurvatureMethod method;
  if (variant && *variant != LcpVariant::Combinatorial) method = method_from(lcp_method, alpha, 0.01, 10000);
  Eigen::MatrixXd data;
  std::vector<ColumnGroup> groups;
  {
    py::gil_scoped_release release;
    if (variant) {
      if (*variant == LcpVariant::Combinatorial) {
        parts.push_back(lcp_combinatorial(g));
        label = "orc_bounds";
      } else {
        parts.push_back(lcp(g, compute_curvature(g, method, threads), *variant));
        label = method.label();
      }
    }
    if (use_ldp) parts.push_back(ldp(g));
    if (lape_k > 0) parts.push_back(lape(g, lape_k, threads));
    if (rwpe_k > 0) parts.push_back(rwpe(g, rwpe_k, threads));
    if (parts.empty() && !include_features) throw InputError("no encoder selected");
    auto features = assemble(g, parts, include_features);
    data = features.data();
    groups = features.groups();
  }
  py::dict manifest;
  manifest["rows"] = data.rows();
  manifest["cols"] = data.cols();
  py::list group_list;
  for (const auto& grp : groups) {
    py::dict d;
    d["name"] = grp.name;
    d["width"] = grp.width;
    group_list.append(d);
  }
  manifest["groups"] = group_list;
  manifest["lcp_variant"] = variant ? std::string(to_string(*variant)) : std::string("none");
  manifest["curvature_method"] = label;
  manifest["version"] = kVersion;
  return py::make_tuple(py::cast(data), manifest);
}

py::tuple rewire(const BoundGraph& bg, std::size_t iterations, std::size_t k_add, std::size_t k_remove,
                 std::size_t h_per_edge, double alpha, unsigned threads) {
  RewiringParams p;
  p.iterations = iterations;
  p.k_add = k_add;
  p.k_remove = k_remove;
  p.h_per_edge = h_per_edge;
  p.measure = alpha > 0.0 ? Measure::idleness(alpha) : Measure{};
  p.threads = threads;
  RewiringResult r;
  {
    py::gil_scoped_release release;
    r = curvature_rewire(bg.graph, p);
  }
  py::list plan;
  for (const auto& a : r.plan.actions) {
    py::dict d;
    d["op"] = a.op == RewiringAction::Op::Add ? "add" : "remove";
    d["edge"] = py::make_tuple(a.edge.u, a.edge.v);
    d["trigger"] = py::make_tuple(a.trigger.u, a.trigger.v);
    d["iteration"] = a.iteration;
    plan.append(d);
  }
  return py::make_tuple(edges_to_array(r.graph.edges()), plan);
}

}  // namespace

PYBIND11_MODULE(_ricci, m) {
  m.doc() = "Discrete Ricci curvature and curvature encodings";
  m.attr("__version__") = kVersion;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<BoundGraph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("edges"), py::arg("num_nodes"))
      .def_property_readonly("num_nodes", [](const BoundGraph& g) { return g.graph.num_nodes(); })
      .def_property_readonly("num_edges", [](const BoundGraph& g) { return g.graph.num_edges(); })
      .def("edges", [](const BoundGraph& g) { return edges_to_array(g.graph.edges()); });

  m.def("curvature", &curvature, py::arg("graph"), py::arg("method"), py::arg("alpha"), py::arg("epsilon"),
        py::arg("max_iterations"), py::arg("threads"));
  m.def("encode", &encode, py::arg("graph"), py::arg("lcp"), py::arg("lcp_method"), py::arg("alpha"),
        py::arg("ldp"), py::arg("lape"), py::arg("rwpe"), py::arg("include_features"), py::arg("threads"));
  m.def("rewire", &rewire, py::arg("graph"), py::arg("iterations"), py::arg("k_add"), py::arg("k_remove"),
        py::arg("h_per_edge"), py::arg("alpha"), py::arg("threads"));
}
