#pragma once

// Reference implementations used only by tests. Each one is deliberately
// naive and shares no code with the library beyond the Graph container.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ricci/graph.hpp"

namespace ricci::oracle {

using DenseAdj = std::vector<std::vector<bool>>;

inline DenseAdj adjacency(const Graph& g) {
  DenseAdj a(g.num_nodes(), std::vector<bool>(g.num_nodes(), false));
  for (auto e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = true;
  return a;
}

inline std::size_t degree(const DenseAdj& a, std::size_t v) {
  return static_cast<std::size_t>(std::count(a[v].begin(), a[v].end(), true));
}

/// All-pairs hop distances by Floyd-Warshall; unreachable pairs hold a large value.
inline std::vector<std::vector<int>> all_pairs_distances(const DenseAdj& a) {
  const std::size_t n = a.size();
  constexpr int kFar = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kFar));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j]) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// Exact W1 for integer costs by enumerating integral dual vertices.
///
/// The dual is max sum a_i f_i + sum b_j g_j s.t. f_i + g_j <= C_ij. The
/// constraint matrix is totally unimodular, so an integral optimum exists;
/// replacing g by the c-transform of f and shifting so min f = 0 keeps f in
/// [0, max C]. Enumerating all such f on the smaller side is therefore exact.
inline double w1_dual_enumeration(const Eigen::MatrixXi& cost, const std::vector<double>& a,
                                  const std::vector<double>& b) {
  if (cost.rows() > cost.cols()) {
    Eigen::MatrixXi t = cost.transpose();
    return w1_dual_enumeration(t, b, a);
  }
  const int n = static_cast<int>(cost.rows());
  const int m = static_cast<int>(cost.cols());
  const int cmax = cost.maxCoeff();
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> f(n, 0);
  // partial[k][j] = min over i < k of C_ij - f_i
  std::vector<std::vector<int>> partial(n + 1, std::vector<int>(m, std::numeric_limits<int>::max()));
  std::function<void(int, double)> descend = [&](int k, double primal_part) {
    if (k == n) {
      double value = primal_part;
      for (int j = 0; j < m; ++j) value += b[j] * partial[n][j];
      best = std::max(best, value);
      return;
    }
    for (int x = 0; x <= cmax; ++x) {
      f[k] = x;
      for (int j = 0; j < m; ++j) partial[k + 1][j] = std::min(partial[k][j], cost(k, j) - x);
      descend(k + 1, primal_part + a[k] * x);
    }
  };
  descend(0, 0.0);
  return best;
}

/// Exact W1 by enumerating every basis of the transportation polytope: each
/// (n+m-1)-cell subset that forms a spanning tree of the bipartite cell graph
/// has a unique flow; the minimum-cost nonnegative one is optimal. Only
/// usable for tiny supports.
inline double w1_basis_enumeration(const Eigen::MatrixXd& cost, const std::vector<double>& a,
                                   const std::vector<double>& b) {
  const int n = static_cast<int>(cost.rows());
  const int m = static_cast<int>(cost.cols());
  const int cells = n * m;
  const int k = n + m - 1;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    // Solve the basis by repeatedly peeling rows/columns with one open cell.
    std::vector<double> ra(a), cb(b);
    std::vector<bool> used(k, false);
    std::vector<double> flow(k, 0.0);
    bool ok = true;
    for (int step = 0; step < k && ok; ++step) {
      int chosen = -1;
      bool by_row = false;
      for (int r = 0; r < n && chosen < 0; ++r) {
        int cnt = 0, last = -1;
        for (int t = 0; t < k; ++t)
          if (!used[t] && pick[t] / m == r) ++cnt, last = t;
        if (cnt == 1) chosen = last, by_row = true;
      }
      for (int c = 0; c < m && chosen < 0; ++c) {
        int cnt = 0, last = -1;
        for (int t = 0; t < k; ++t)
          if (!used[t] && pick[t] % m == c) ++cnt, last = t;
        if (cnt == 1) chosen = last;
      }
      if (chosen < 0) {
        ok = false;
        break;
      }
      const int r = pick[chosen] / m;
      const int c = pick[chosen] % m;
      flow[chosen] = by_row ? ra[r] : cb[c];
      ra[r] -= flow[chosen];
      cb[c] -= flow[chosen];
      used[chosen] = true;
    }
    if (ok) {
      double residual = 0.0;
      for (double x : ra) residual += std::abs(x);
      for (double x : cb) residual += std::abs(x);
      bool nonneg = std::all_of(flow.begin(), flow.end(), [](double x) { return x >= -1e-12; });
      if (nonneg && residual < 1e-9) {
        double c = 0.0;
        for (int t = 0; t < k; ++t) c += flow[t] * cost(pick[t] / m, pick[t] % m);
        best = std::min(best, c);
      }
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == cells - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

struct DenseTransport {
  Eigen::MatrixXi cost;
  std::vector<double> a;
  std::vector<double> b;
};

/// Transport problem for edge (u,v) built from Floyd-Warshall distances.
inline DenseTransport edge_transport(const DenseAdj& adj, const std::vector<std::vector<int>>& dist,
                                     std::size_t u, std::size_t v, double alpha) {
  auto support = [&](std::size_t x, std::vector<std::size_t>& nodes, std::vector<double>& mass) {
    const double d = static_cast<double>(degree(adj, x));
    for (std::size_t z = 0; z < adj.size(); ++z) {
      if (adj[x][z]) {
        nodes.push_back(z);
        mass.push_back((1.0 - alpha) / d);
      } else if (z == x && alpha > 0.0) {
        nodes.push_back(z);
        mass.push_back(alpha);
      }
    }
  };
  DenseTransport t;
  std::vector<std::size_t> su, sv;
  support(u, su, t.a);
  support(v, sv, t.b);
  t.cost.resize(static_cast<Eigen::Index>(su.size()), static_cast<Eigen::Index>(sv.size()));
  for (std::size_t i = 0; i < su.size(); ++i)
    for (std::size_t j = 0; j < sv.size(); ++j) t.cost(i, j) = dist[su[i]][sv[j]];
  return t;
}

/// 1 - W1 for every edge of g (in g.edges() order), fully independent of the library solver.
inline std::vector<double> orc_reference(const Graph& g, double alpha = 0.0) {
  auto adj = adjacency(g);
  auto dist = all_pairs_distances(adj);
  std::vector<double> out;
  for (auto e : g.edges()) {
    auto t = edge_transport(adj, dist, e.u, e.v, alpha);
    out.push_back(1.0 - w1_dual_enumeration(t.cost, t.a, t.b));
  }
  return out;
}

inline std::size_t triangles_brute(const DenseAdj& a, std::size_t u, std::size_t v) {
  std::size_t t = 0;
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[u][w] && a[v][w]) ++t;
  return t;
}

/// Ordered 4-cycles u-p-q-v-u where neither p nor q is adjacent to the far endpoint.
inline std::size_t quadrangles_brute(const DenseAdj& a, std::size_t u, std::size_t v) {
  std::size_t q4 = 0;
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = 0; q < a.size(); ++q) {
      if (p == q || p == u || p == v || q == u || q == v) continue;
      if (a[u][p] && a[p][q] && a[q][v] && !a[p][v] && !a[q][u]) ++q4;
    }
  return q4;
}

/// diag(P^k) for k = 1..K with P = D^-1 A, by dense matrix powers.
inline Eigen::MatrixXd rwpe_dense(const Graph& g, std::size_t walk_length) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (auto e : g.edges()) {
    p(e.u, e.v) = 1.0 / static_cast<double>(g.degree(e.u));
    p(e.v, e.u) = 1.0 / static_cast<double>(g.degree(e.v));
  }
  Eigen::MatrixXd out(n, static_cast<Eigen::Index>(walk_length));
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t k = 0; k < walk_length; ++k) {
    power = power * p;
    out.col(static_cast<Eigen::Index>(k)) = power.diagonal();
  }
  return out;
}

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<EdgeKey> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

inline std::vector<NodeId> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// Relabels node v as perm[v].
inline Graph permute(const Graph& g, const std::vector<NodeId>& perm) {
  std::vector<EdgeKey> edges;
  for (auto e : g.edges()) edges.push_back(EdgeKey::canonical(perm[e.u], perm[e.v]));
  return Graph::from_edges(g.num_nodes(), edges);
}

}  // namespace ricci::oracle
