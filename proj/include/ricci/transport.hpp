#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ricci/graph.hpp"

namespace ricci {

/// Balanced transportation problem between two discrete measures.
/// cost(i, j) is the ground distance from source_support[i] to target_support[j].
struct TransportProblem {
  std::vector<NodeId> source_support;
  std::vector<NodeId> target_support;
  std::vector<double> source_mass;
  std::vector<double> target_mass;
  Eigen::MatrixXd cost;

  /// Throws InputError on shape mismatch, negative entries, or masses that do
  /// not sum to 1 within 1e-12.
  void validate() const;
};

struct TransportPlan {
  double cost = 0.0;
  Eigen::MatrixXd flow;  // same shape as the cost matrix
};

/// Exact optimum by successive shortest augmenting paths with node
/// potentials (dense Dijkstra), O((n+m)^3) for n x m supports.
TransportPlan solve_transport_exact(const TransportProblem& problem);

struct SinkhornOptions {
  double epsilon = 0.01;
  int max_iterations = 10000;
  double tolerance = 1e-9;  // L1 row-marginal residual that stops iteration
};

struct SinkhornResult {
  double cost = 0.0;  // <plan, cost> of the entropic plan
  Eigen::MatrixXd plan;
  double marginal_violation = 0.0;
  int iterations = 0;
  bool converged = false;  // marginal_violation <= 1e-6
};

/// Log-domain Sinkhorn iterations. Approximate: cost >= exact W1 up to the
/// marginal residual, and approaches it as epsilon -> 0.
SinkhornResult solve_transport_sinkhorn(const TransportProblem& problem, const SinkhornOptions& options);

/// Number of transport solves (exact or Sinkhorn) performed by this process.
std::uint64_t transport_solve_count() noexcept;

}  // namespace ricci
