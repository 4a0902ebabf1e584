#include "ricci/transport.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>

#include "ricci/error.hpp"

namespace ricci {
namespace {

std::atomic<std::uint64_t> g_solves{0};

constexpr double kMassEps = 1e-14;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sum_exp(const double* values, std::size_t count, std::size_t stride) {
  double hi = -kInf;
  for (std::size_t k = 0; k < count; ++k) hi = std::max(hi, values[k * stride]);
  if (hi == -kInf) return -kInf;
  double sum = 0.0;
  for (std::size_t k = 0; k < count; ++k) sum += std::exp(values[k * stride] - hi);
  return hi + std::log(sum);
}

}  // namespace

void TransportProblem::validate() const {
  const auto n = source_mass.size();
  const auto m = target_mass.size();
  if (n == 0 || m == 0) throw InputError("transport problem has an empty support");
  if (source_support.size() != n || target_support.size() != m) {
    throw InputError("support and mass sizes differ");
  }
  if (static_cast<std::size_t>(cost.rows()) != n || static_cast<std::size_t>(cost.cols()) != m) {
    throw InputError("cost matrix shape does not match supports");
  }
  auto check_mass = [](const std::vector<double>& mass) {
    double total = 0.0;
    for (double x : mass) {
      if (!(x >= 0.0)) throw InputError("negative or NaN mass");
      total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) throw InputError("measure does not sum to 1");
  };
  check_mass(source_mass);
  check_mass(target_mass);
  if ((cost.array() < 0.0).any() || !cost.allFinite()) throw InputError("invalid ground cost");
}

TransportPlan solve_transport_exact(const TransportProblem& problem) {
  problem.validate();
  g_solves.fetch_add(1, std::memory_order_relaxed);

  const std::size_t n = problem.source_mass.size();
  const std::size_t m = problem.target_mass.size();
  const Eigen::MatrixXd& c = problem.cost;

  // Node layout: 0 = super source, 1..n sources, n+1..n+m sinks, n+m+1 = super sink.
  const std::size_t num = n + m + 2;
  const std::size_t sink = num - 1;
  auto src_node = [](std::size_t i) { return 1 + i; };
  auto dst_node = [n](std::size_t j) { return 1 + n + j; };

  std::vector<double> supply_left(problem.source_mass);
  std::vector<double> demand_left(problem.target_mass);
  Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  std::vector<double> potential(num, 0.0);
  std::vector<double> dist(num);
  std::vector<std::size_t> parent(num);
  std::vector<char> done(num);

  double remaining = std::accumulate(supply_left.begin(), supply_left.end(), 0.0);
  const std::size_t max_rounds = 4 * (n + m) * (n + m) + 16;
  std::size_t rounds = 0;

  while (remaining > kMassEps) {
    if (++rounds > max_rounds) throw NumericalError("exact transport solver did not terminate");
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    dist[0] = 0.0;

    // Settled nodes stay final; rounding can make reduced costs slightly negative.
    auto relax = [&](std::size_t from, std::size_t to, double arc_cost) {
      if (done[to]) return;
      double nd = dist[from] + arc_cost + potential[from] - potential[to];
      if (nd < dist[to]) {
        dist[to] = nd;
        parent[to] = from;
      }
    };

    while (true) {
      std::size_t x = num;
      double best = kInf;
      for (std::size_t k = 0; k < num; ++k) {
        if (!done[k] && dist[k] < best) {
          best = dist[k];
          x = k;
        }
      }
      if (x == num || x == sink) break;
      done[x] = 1;
      if (x == 0) {
        for (std::size_t i = 0; i < n; ++i)
          if (supply_left[i] > kMassEps) relax(0, src_node(i), 0.0);
      } else if (x <= n) {
        const std::size_t i = x - 1;
        for (std::size_t j = 0; j < m; ++j) relax(x, dst_node(j), c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      } else {
        const std::size_t j = x - 1 - n;
        for (std::size_t i = 0; i < n; ++i) {
          if (flow(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > kMassEps) {
            relax(x, src_node(i), -c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
          }
        }
        if (demand_left[j] > kMassEps) relax(x, sink, 0.0);
      }
    }
    if (dist[sink] == kInf) throw NumericalError("transport problem became infeasible");

    for (std::size_t k = 0; k < num; ++k) potential[k] += std::min(dist[k], dist[sink]);

    // Bottleneck along the path; source->sink arcs are uncapacitated.
    double push = kInf;
    for (std::size_t y = sink; y != 0;) {
      std::size_t x = parent[y];
      if (x == 0) {
        push = std::min(push, supply_left[y - 1]);
      } else if (y == sink) {
        push = std::min(push, demand_left[x - 1 - n]);
      } else if (x > n && y <= n) {
        push = std::min(push, flow(static_cast<Eigen::Index>(y - 1), static_cast<Eigen::Index>(x - 1 - n)));
      }
      y = x;
    }
    for (std::size_t y = sink; y != 0;) {
      std::size_t x = parent[y];
      if (x == 0) {
        supply_left[y - 1] -= push;
      } else if (y == sink) {
        demand_left[x - 1 - n] -= push;
      } else if (x <= n) {
        flow(static_cast<Eigen::Index>(x - 1), static_cast<Eigen::Index>(y - 1 - n)) += push;
      } else {
        flow(static_cast<Eigen::Index>(y - 1), static_cast<Eigen::Index>(x - 1 - n)) -= push;
      }
      y = x;
    }
    remaining = std::accumulate(supply_left.begin(), supply_left.end(), 0.0);
  }

  TransportPlan plan;
  plan.cost = (flow.array() * c.array()).sum();
  plan.flow = std::move(flow);
  return plan;
}

SinkhornResult solve_transport_sinkhorn(const TransportProblem& problem, const SinkhornOptions& options) {
  problem.validate();
  if (!(options.epsilon > 0.0)) throw InputError("Sinkhorn epsilon must be positive");
  if (options.max_iterations < 1) throw InputError("Sinkhorn needs at least one iteration");
  g_solves.fetch_add(1, std::memory_order_relaxed);

  const auto n = static_cast<Eigen::Index>(problem.source_mass.size());
  const auto m = static_cast<Eigen::Index>(problem.target_mass.size());
  const double eps = options.epsilon;
  Eigen::VectorXd log_a(n);
  Eigen::VectorXd log_b(m);
  for (Eigen::Index i = 0; i < n; ++i) log_a(i) = std::log(problem.source_mass[static_cast<std::size_t>(i)]);
  for (Eigen::Index j = 0; j < m; ++j) log_b(j) = std::log(problem.target_mass[static_cast<std::size_t>(j)]);

  // Row-major scratch so both half-steps read contiguous or strided rows.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> work(n, m);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(m);

  SinkhornResult result;
  for (int it = 1; it <= options.max_iterations; ++it) {
    result.iterations = it;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < m; ++j) work(i, j) = (g(j) - problem.cost(i, j)) / eps;
    for (Eigen::Index i = 0; i < n; ++i) {
      f(i) = eps * log_a(i) - eps * log_sum_exp(work.data() + i * m, static_cast<std::size_t>(m), 1);
    }
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < m; ++j) work(i, j) = (f(i) - problem.cost(i, j)) / eps;
    for (Eigen::Index j = 0; j < m; ++j) {
      g(j) = eps * log_b(j) - eps * log_sum_exp(work.data() + j, static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    }
    double violation = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0;
      for (Eigen::Index j = 0; j < m; ++j) row += std::exp((f(i) + g(j) - problem.cost(i, j)) / eps);
      violation += std::abs(row - problem.source_mass[static_cast<std::size_t>(i)]);
    }
    result.marginal_violation = violation;
    if (violation <= options.tolerance) break;
  }

  result.plan.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) result.plan(i, j) = std::exp((f(i) + g(j) - problem.cost(i, j)) / eps);
  result.cost = (result.plan.array() * problem.cost.array()).sum();
  result.converged = result.marginal_violation <= 1e-6;
  return result;
}

std::uint64_t transport_solve_count() noexcept { return g_solves.load(std::memory_order_relaxed); }

}  // namespace ricci
