#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ricci/graph.hpp"
#include "ricci/transport.hpp"

namespace ricci {

/// Probability measure placed on a node's neighborhood: mass `alpha` on the
/// node itself and (1 - alpha)/deg on each neighbor. alpha = 0 is the
/// open-neighborhood uniform measure.
struct Measure {
  double alpha = 0.0;

  static Measure open_uniform() { return {}; }
  /// Throws InputError unless 0 <= alpha < 1.
  static Measure idleness(double alpha);
  bool operator==(const Measure&) const = default;
};

enum class CurvatureKind { OrcExact, OrcSinkhorn, Frc, Afrc3, Afrc4 };

struct CurvatureMethod {
  CurvatureKind kind = CurvatureKind::OrcExact;
  Measure measure;
  SinkhornOptions sinkhorn;

  bool is_ollivier() const { return kind == CurvatureKind::OrcExact || kind == CurvatureKind::OrcSinkhorn; }
  /// "orc_exact", "orc_idleness(0.5)", "orc_sinkhorn(0.01)", "frc", ...
  std::string label() const;
};

/// One curvature value per edge, aligned with Graph::edges().
class EdgeCurvatureMap {
 public:
  EdgeCurvatureMap() = default;
  EdgeCurvatureMap(std::vector<EdgeKey> edges, std::vector<double> values, CurvatureMethod method,
                   std::vector<bool> converged = {});

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<EdgeKey>& edges() const noexcept { return edges_; }
  const std::vector<double>& values() const noexcept { return values_; }
  /// Per-edge Sinkhorn convergence flags; empty for other methods.
  const std::vector<bool>& converged() const noexcept { return converged_; }
  const CurvatureMethod& method() const noexcept { return method_; }

  double operator[](EdgeId id) const { return values_[id]; }
  /// Lookup by key in either orientation; throws InputError for non-edges.
  double at(EdgeKey e) const;
  bool all_converged() const;

 private:
  std::vector<EdgeKey> edges_;
  std::vector<double> values_;
  CurvatureMethod method_;
  std::vector<bool> converged_;
};

/// Transport problem between the measures of the endpoints of `e`, with hop
/// distances from a radius-3 BFS as ground cost.
TransportProblem build_transport_problem(const Graph& g, EdgeKey e, Measure measure = {});

/// 1 - W1(m_u, m_v) with W1 solved exactly.
double orc_exact(const Graph& g, EdgeKey e, Measure measure = {});

struct OrcSolver {
  enum class Kind { Exact, Sinkhorn } kind = Kind::Exact;
  SinkhornOptions sinkhorn;

  static OrcSolver exact() { return {}; }
  static OrcSolver sinkhorn_with(double epsilon, int max_iterations) {
    OrcSolver s;
    s.kind = Kind::Sinkhorn;
    s.sinkhorn.epsilon = epsilon;
    s.sinkhorn.max_iterations = max_iterations;
    return s;
  }
};

/// Ollivier-Ricci curvature of every edge, fanned out over `threads`
/// workers (0 = all cores). Output is independent of the thread count.
EdgeCurvatureMap orc_all(const Graph& g, Measure measure, const OrcSolver& solver, unsigned threads = 0);

/// Combinatorial bounds on ORC under the open-neighborhood measure:
/// lower = -(1 - 1/dv - 1/du - t/(du^dv))_+ - (1 - 1/dv - 1/du - t/(du v dv))_+ + t/(du v dv),
/// upper = t/(du v dv), with t the triangle count of the edge.
struct CurvatureBounds {
  double lower = 0.0;
  double upper = 0.0;
};
CurvatureBounds orc_bounds(const Graph& g, EdgeKey e);

double frc(const Graph& g, EdgeKey e);
double afrc3(const Graph& g, EdgeKey e);
double afrc4(const Graph& g, EdgeKey e);

/// Dispatches on method.kind.
EdgeCurvatureMap compute_curvature(const Graph& g, const CurvatureMethod& method, unsigned threads = 0);

/// Parses "orc-exact", "orc-idleness", "orc-sinkhorn", "frc", "afrc3", "afrc4"
/// (underscores accepted). `alpha` sets the measure of the ORC methods.
CurvatureMethod parse_curvature_method(std::string_view name, double alpha = 0.0,
                                       SinkhornOptions sinkhorn = {});

}  // namespace ricci
