#include "ricci/curvature.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>

#include "ricci/error.hpp"
#include "ricci/local.hpp"
#include "ricci/parallel.hpp"

namespace ricci {
namespace {

constexpr std::uint32_t kGroundRadius = 3;

std::string format_param(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void append_measure(const Graph& g, NodeId x, Measure measure, std::vector<NodeId>& support,
                    std::vector<double>& mass) {
  const auto deg = static_cast<double>(g.degree(x));
  const double share = (1.0 - measure.alpha) / deg;
  // Node-id order keeps the problem layout canonical.
  bool placed_self = measure.alpha == 0.0;
  for (NodeId y : g.neighbors(x)) {
    if (!placed_self && x < y) {
      support.push_back(x);
      mass.push_back(measure.alpha);
      placed_self = true;
    }
    support.push_back(y);
    mass.push_back(share);
  }
  if (!placed_self) {
    support.push_back(x);
    mass.push_back(measure.alpha);
  }
}

}  // namespace

Measure Measure::idleness(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InputError("idleness must lie in [0, 1)");
  return Measure{alpha};
}

std::string CurvatureMethod::label() const {
  std::string base;
  switch (kind) {
    case CurvatureKind::OrcExact:
      return measure.alpha == 0.0 ? "orc_exact" : "orc_idleness(" + format_param(measure.alpha) + ")";
    case CurvatureKind::OrcSinkhorn:
      base = "orc_sinkhorn(" + format_param(sinkhorn.epsilon) + ")";
      if (measure.alpha != 0.0) base += "+idleness(" + format_param(measure.alpha) + ")";
      return base;
    case CurvatureKind::Frc:
      return "frc";
    case CurvatureKind::Afrc3:
      return "afrc3";
    case CurvatureKind::Afrc4:
      return "afrc4";
  }
  return "unknown";
}

EdgeCurvatureMap::EdgeCurvatureMap(std::vector<EdgeKey> edges, std::vector<double> values,
                                   CurvatureMethod method, std::vector<bool> converged)
    : edges_(std::move(edges)), values_(std::move(values)), method_(method), converged_(std::move(converged)) {
  if (edges_.size() != values_.size()) throw InputError("curvature map size mismatch");
}

double EdgeCurvatureMap::at(EdgeKey e) const {
  auto key = EdgeKey::canonical(e.u, e.v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) {
    throw InputError("(" + std::to_string(e.u) + "," + std::to_string(e.v) + ") has no curvature");
  }
  return values_[static_cast<std::size_t>(it - edges_.begin())];
}

bool EdgeCurvatureMap::all_converged() const {
  return std::all_of(converged_.begin(), converged_.end(), [](bool b) { return b; });
}

TransportProblem build_transport_problem(const Graph& g, EdgeKey e, Measure measure) {
  g.require_edge(e);
  if (!(measure.alpha >= 0.0 && measure.alpha < 1.0)) throw InputError("idleness must lie in [0, 1)");
  TransportProblem p;
  append_measure(g, e.u, measure, p.source_support, p.source_mass);
  append_measure(g, e.v, measure, p.target_support, p.target_mass);

  auto table = local_distances(g, p.source_support, kGroundRadius);
  p.cost.resize(static_cast<Eigen::Index>(p.source_support.size()),
                static_cast<Eigen::Index>(p.target_support.size()));
  for (std::size_t i = 0; i < p.source_support.size(); ++i) {
    for (std::size_t j = 0; j < p.target_support.size(); ++j) {
      auto d = table.distance(i, p.target_support[j]);
      // Supports of adjacent endpoints are joined by z-u-v-z', so d <= 3.
      if (d == DistanceTable::kUnreachable) {
        throw NumericalError("ground distance exceeded BFS radius inside an edge neighborhood");
      }
      p.cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
    }
  }
  return p;
}

double orc_exact(const Graph& g, EdgeKey e, Measure measure) {
  auto problem = build_transport_problem(g, EdgeKey::canonical(e.u, e.v), measure);
  return 1.0 - solve_transport_exact(problem).cost;
}

EdgeCurvatureMap orc_all(const Graph& g, Measure measure, const OrcSolver& solver, unsigned threads) {
  CurvatureMethod method;
  method.measure = measure;
  method.kind = solver.kind == OrcSolver::Kind::Exact ? CurvatureKind::OrcExact : CurvatureKind::OrcSinkhorn;
  method.sinkhorn = solver.sinkhorn;

  const auto& edges = g.edges();
  std::vector<double> values(edges.size());
  std::vector<char> ok(edges.size(), 1);
  parallel_for(edges.size(), threads, [&](std::size_t i) {
    auto problem = build_transport_problem(g, edges[i], measure);
    if (solver.kind == OrcSolver::Kind::Exact) {
      values[i] = 1.0 - solve_transport_exact(problem).cost;
    } else {
      auto r = solve_transport_sinkhorn(problem, solver.sinkhorn);
      values[i] = 1.0 - r.cost;
      ok[i] = r.converged ? 1 : 0;
    }
  });
  std::vector<bool> converged;
  if (solver.kind == OrcSolver::Kind::Sinkhorn) converged.assign(ok.begin(), ok.end());
  return EdgeCurvatureMap(edges, std::move(values), method, std::move(converged));
}

CurvatureBounds orc_bounds(const Graph& g, EdgeKey e) {
  g.require_edge(e);
  const double du = static_cast<double>(g.degree(e.u));
  const double dv = static_cast<double>(g.degree(e.v));
  const double t = static_cast<double>(common_neighbor_count(g, e.u, e.v));
  const double lo_deg = std::min(du, dv);
  const double hi_deg = std::max(du, dv);
  auto pos = [](double x) { return std::max(x, 0.0); };
  CurvatureBounds b;
  b.upper = t / hi_deg;
  b.lower = -pos(1.0 - 1.0 / dv - 1.0 / du - t / lo_deg) - pos(1.0 - 1.0 / dv - 1.0 / du - t / hi_deg) + t / hi_deg;
  return b;
}

double frc(const Graph& g, EdgeKey e) {
  g.require_edge(e);
  return 4.0 - static_cast<double>(g.degree(e.u)) - static_cast<double>(g.degree(e.v));
}

double afrc3(const Graph& g, EdgeKey e) {
  return frc(g, e) + 3.0 * static_cast<double>(common_neighbor_count(g, e.u, e.v));
}

double afrc4(const Graph& g, EdgeKey e) {
  auto motifs = edge_motif_counts(g, e);
  return frc(g, e) + 3.0 * static_cast<double>(motifs.triangles) + 2.0 * static_cast<double>(motifs.quadrangles);
}

EdgeCurvatureMap compute_curvature(const Graph& g, const CurvatureMethod& method, unsigned threads) {
  switch (method.kind) {
    case CurvatureKind::OrcExact:
      return orc_all(g, method.measure, OrcSolver::exact(), threads);
    case CurvatureKind::OrcSinkhorn: {
      OrcSolver solver;
      solver.kind = OrcSolver::Kind::Sinkhorn;
      solver.sinkhorn = method.sinkhorn;
      return orc_all(g, method.measure, solver, threads);
    }
    case CurvatureKind::Frc:
    case CurvatureKind::Afrc3:
    case CurvatureKind::Afrc4:
      break;
  }
  const auto& edges = g.edges();
  std::vector<double> values(edges.size());
  parallel_for(edges.size(), threads, [&](std::size_t i) {
    switch (method.kind) {
      case CurvatureKind::Frc:
        values[i] = frc(g, edges[i]);
        break;
      case CurvatureKind::Afrc3:
        values[i] = afrc3(g, edges[i]);
        break;
      default:
        values[i] = afrc4(g, edges[i]);
        break;
    }
  });
  return EdgeCurvatureMap(edges, std::move(values), method);
}

CurvatureMethod parse_curvature_method(std::string_view name, double alpha, SinkhornOptions sinkhorn) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '_', '-');
  CurvatureMethod m;
  m.sinkhorn = sinkhorn;
  if (key == "orc-exact" || key == "orc") {
    m.kind = CurvatureKind::OrcExact;
  } else if (key == "orc-idleness") {
    m.kind = CurvatureKind::OrcExact;
  } else if (key == "orc-sinkhorn") {
    m.kind = CurvatureKind::OrcSinkhorn;
  } else if (key == "frc") {
    m.kind = CurvatureKind::Frc;
  } else if (key == "afrc3") {
    m.kind = CurvatureKind::Afrc3;
  } else if (key == "afrc4") {
    m.kind = CurvatureKind::Afrc4;
  } else {
    throw InputError("unknown curvature method '" + key + "'");
  }
  if (m.is_ollivier()) m.measure = Measure::idleness(alpha);
  return m;
}

}  // namespace ricci
