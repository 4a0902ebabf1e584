#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ricci/curvature.hpp"
#include "ricci/error.hpp"
#include "ricci/generators.hpp"
#include "ricci/local.hpp"
#include "ricci/transport.hpp"

namespace ricci {
namespace {

constexpr double kTol = 1e-9;

TransportProblem random_problem(std::mt19937_64& rng, int n, int m, int max_cost) {
  std::uniform_int_distribution<int> cost(0, max_cost);
  std::uniform_int_distribution<int> weight(1, 5);
  TransportProblem p;
  p.cost.resize(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) p.cost(i, j) = cost(rng);
  auto masses = [&](int k) {
    std::vector<double> w(k);
    double total = 0;
    for (auto& x : w) total += x = weight(rng);
    for (auto& x : w) x /= total;
    return w;
  };
  p.source_mass = masses(n);
  p.target_mass = masses(m);
  for (int i = 0; i < n; ++i) p.source_support.push_back(static_cast<NodeId>(i));
  for (int j = 0; j < m; ++j) p.target_support.push_back(static_cast<NodeId>(j));
  return p;
}

// ----------------------------------------------------------------------------
// Oracles agree with each other
// ----------------------------------------------------------------------------

TEST(Oracle, DualAndBasisEnumerationAgree) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 4, m = 1 + (trial / 4) % 4;
    auto p = random_problem(rng, n, m, 3);
    double dual = oracle::w1_dual_enumeration(p.cost.cast<int>(), p.source_mass, p.target_mass);
    double primal = oracle::w1_basis_enumeration(p.cost, p.source_mass, p.target_mass);
    EXPECT_NEAR(dual, primal, 1e-12) << "trial " << trial;
  }
}

// ----------------------------------------------------------------------------
// Exact transport
// ----------------------------------------------------------------------------

TEST(TransportExact, MatchesOracleOnRandomProblems) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + trial % 7, m = 1 + (trial / 7) % 7;
    auto p = random_problem(rng, n, m, 3);
    auto plan = solve_transport_exact(p);
    double expect = oracle::w1_dual_enumeration(p.cost.cast<int>(), p.source_mass, p.target_mass);
    EXPECT_NEAR(plan.cost, expect, 1e-12) << "trial " << trial;
    // The returned flow is a feasible coupling with the reported cost.
    EXPECT_GE(plan.flow.minCoeff(), -1e-14);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(plan.flow.row(i).sum(), p.source_mass[i], 1e-12);
    for (int j = 0; j < m; ++j) EXPECT_NEAR(plan.flow.col(j).sum(), p.target_mass[j], 1e-12);
    EXPECT_NEAR((plan.flow.array() * p.cost.array()).sum(), plan.cost, 1e-12);
  }
}

TEST(TransportExact, NonIntegerCosts) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = random_problem(rng, 3, 3, 1);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p.cost(i, j) = u(rng);
    EXPECT_NEAR(solve_transport_exact(p).cost,
                oracle::w1_basis_enumeration(p.cost, p.source_mass, p.target_mass), 1e-12);
  }
}

TEST(TransportExact, Validation) {
  TransportProblem p;
  p.source_mass = {0.5, 0.5};
  p.target_mass = {1.0};
  p.cost = Eigen::MatrixXd::Ones(2, 1);
  p.source_support = {0, 1};
  p.target_support = {2};
  EXPECT_NO_THROW(p.validate());
  auto bad = p;
  bad.source_mass = {0.5, 0.4};
  EXPECT_THROW(solve_transport_exact(bad), InputError);
  bad = p;
  bad.cost(0, 0) = -1;
  EXPECT_THROW(solve_transport_exact(bad), InputError);
  bad = p;
  bad.cost(0, 0) = std::nan("");
  EXPECT_THROW(solve_transport_exact(bad), InputError);
  bad = p;
  bad.cost = Eigen::MatrixXd::Ones(1, 1);
  EXPECT_THROW(solve_transport_exact(bad), InputError);
  bad = p;
  bad.source_mass = {1.5, -0.5};
  EXPECT_THROW(solve_transport_exact(bad), InputError);
}

TEST(TransportExact, CountsSolves) {
  std::mt19937_64 rng(4);
  auto p = random_problem(rng, 2, 2, 3);
  auto before = transport_solve_count();
  solve_transport_exact(p);
  solve_transport_sinkhorn(p, {});
  EXPECT_EQ(transport_solve_count(), before + 2);
}

// ----------------------------------------------------------------------------
// Sinkhorn
// ----------------------------------------------------------------------------

TEST(Sinkhorn, ApproachesExactCost) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_problem(rng, 4, 5, 3);
    double exact = solve_transport_exact(p).cost;
    auto r = solve_transport_sinkhorn(p, {0.01, 10000, 1e-9});
    EXPECT_NEAR(r.cost, exact, 0.05);
    EXPECT_TRUE(r.plan.allFinite());
    EXPECT_GE(r.iterations, 1);
    EXPECT_EQ(r.converged, r.marginal_violation <= 1e-6);
  }
}

TEST(Sinkhorn, LargeEpsilonConvergesQuickly) {
  std::mt19937_64 rng(6);
  auto p = random_problem(rng, 4, 4, 3);
  auto r = solve_transport_sinkhorn(p, {1.0, 10000, 1e-9});
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.iterations, 10000);
  EXPECT_LE(r.marginal_violation, 1e-9);
}

TEST(Sinkhorn, IterationCapFlagsNonConvergence) {
  // Two optimal-support cells only: the residual decays like 1/t at small epsilon.
  TransportProblem p;
  p.source_support = {0, 1};
  p.target_support = {2, 3};
  p.source_mass = {0.5, 0.5};
  p.target_mass = {0.5, 0.5};
  p.cost.resize(2, 2);
  p.cost << 1, 1, 1, 2;
  auto r = solve_transport_sinkhorn(p, {0.01, 50, 1e-9});
  EXPECT_EQ(r.iterations, 50);
  EXPECT_FALSE(r.converged);
  EXPECT_NEAR(r.cost, 1.0, 1e-6);
}

TEST(Sinkhorn, Validation) {
  std::mt19937_64 rng(7);
  auto p = random_problem(rng, 2, 2, 3);
  EXPECT_THROW(solve_transport_sinkhorn(p, {0.0, 10, 1e-9}), InputError);
  EXPECT_THROW(solve_transport_sinkhorn(p, {0.1, 0, 1e-9}), InputError);
}

// ----------------------------------------------------------------------------
// Measures and transport problems
// ----------------------------------------------------------------------------

TEST(Measure, IdlenessRange) {
  EXPECT_NO_THROW(Measure::idleness(0.0));
  EXPECT_NO_THROW(Measure::idleness(0.99));
  EXPECT_THROW(Measure::idleness(1.0), InputError);
  EXPECT_THROW(Measure::idleness(-0.1), InputError);
}

TEST(TransportProblemBuild, OpenUniformOnPath) {
  auto p = build_transport_problem(path_graph(3), {0, 1});
  EXPECT_EQ(p.source_support, (std::vector<NodeId>{1}));
  EXPECT_EQ(p.target_support, (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(p.target_mass, (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(p.cost(0, 0), 1.0);
  EXPECT_EQ(p.cost(0, 1), 1.0);
}

TEST(TransportProblemBuild, IdlenessAddsSelf) {
  auto p = build_transport_problem(path_graph(3), {1, 2}, Measure::idleness(0.5));
  EXPECT_EQ(p.source_support, (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(p.source_mass, (std::vector<double>{0.25, 0.5, 0.25}));
  EXPECT_EQ(p.target_support, (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(p.target_mass, (std::vector<double>{0.5, 0.5}));
}

TEST(TransportProblemBuild, CostsBoundedByThree) {
  auto g = generate_named("er(25,0.2,4)");
  for (auto e : g.edges()) {
    auto p = build_transport_problem(g, e);
    EXPECT_GE(p.cost.minCoeff(), 0.0);
    EXPECT_LE(p.cost.maxCoeff(), 3.0);
  }
}

// ----------------------------------------------------------------------------
// Ollivier-Ricci curvature
// ----------------------------------------------------------------------------

TEST(Orc, StronglyRegularPair) {
  for (const auto g = rook4x4(); auto e : g.edges()) EXPECT_NEAR(orc_exact(g, e), 1.0 / 3.0, kTol);
  // Shrikhande edges sit at 1/6; the dense oracle confirms it independently.
  const auto s = shrikhande();
  const auto ref = oracle::orc_reference(s);
  for (EdgeId id = 0; id < s.num_edges(); ++id) {
    EXPECT_NEAR(ref[id], 1.0 / 6.0, kTol);
    EXPECT_NEAR(orc_exact(s, s.edges()[id]), ref[id], kTol);
  }
}

TEST(Orc, SmallGraphs) {
  EXPECT_NEAR(orc_exact(complete_graph(3), {0, 1}), 0.5, kTol);
  EXPECT_NEAR(orc_exact(path_graph(3), {0, 1}), 0.0, kTol);
  EXPECT_NEAR(orc_exact(complete_graph(2), {0, 1}), 0.0, kTol);
  for (const auto g = cycle_graph(6); auto e : g.edges()) EXPECT_NEAR(orc_exact(g, e), 0.0, kTol);
  // K_n: only the mass at v (under m_u) has to move, to u, so W1 = 1/(n-1).
  for (std::size_t n = 3; n <= 8; ++n)
    for (const auto g = complete_graph(n); auto e : g.edges())
      EXPECT_NEAR(orc_exact(g, e), (static_cast<double>(n) - 2) / (static_cast<double>(n) - 1), kTol);
}

TEST(Orc, KnMatchesOracle) {
  auto g = complete_graph(4);
  auto ref = oracle::orc_reference(g);
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(orc_exact(g, g.edges()[i]), ref[i], 1e-12);
}

TEST(Orc, IdlenessMatchesOracle) {
  std::mt19937_64 rng(8);
  for (double alpha : {0.25, 0.5, 0.9}) {
    auto g = oracle::random_graph(12, 0.35, rng);
    auto ref = oracle::orc_reference(g, alpha);
    for (std::size_t i = 0; i < ref.size(); ++i)
      EXPECT_NEAR(orc_exact(g, g.edges()[i], Measure::idleness(alpha)), ref[i], 1e-9);
  }
}

TEST(Orc, IdlenessReachesOne) {
  // K_2 with alpha = 0.5: both measures are (1/2, 1/2) on {0, 1}.
  EXPECT_NEAR(orc_exact(complete_graph(2), {0, 1}, Measure::idleness(0.5)), 1.0, kTol);
}

TEST(Orc, Errors) {
  EXPECT_THROW(orc_exact(path_graph(3), {0, 2}), InputError);
  EXPECT_THROW(orc_exact(path_graph(3), {0, 9}), InputError);
}

TEST(Orc, ExchangeSymmetry) {
  auto g = generate_named("er(14,0.4,2)");
  for (auto e : g.edges()) EXPECT_EQ(orc_exact(g, e), orc_exact(g, {e.v, e.u}));
}

TEST(OrcAll, AlignedWithEdgesAndThreadIndependent) {
  auto g = generate_named("er(40,0.2,6)");
  auto one = orc_all(g, {}, OrcSolver::exact(), 1);
  auto many = orc_all(g, {}, OrcSolver::exact(), 7);
  ASSERT_EQ(one.edges(), g.edges());
  EXPECT_EQ(one.values(), many.values());
  for (EdgeId id = 0; id < g.num_edges(); ++id) EXPECT_EQ(one[id], orc_exact(g, g.edges()[id]));
  EXPECT_TRUE(one.converged().empty());
  EXPECT_TRUE(one.all_converged());
}

TEST(OrcAll, SinkhornWithinContract) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = erdos_renyi(20, 0.3, seed);
    auto exact = orc_all(g, {}, OrcSolver::exact());
    auto approx = orc_all(g, {}, OrcSolver::sinkhorn_with(0.01, 10000));
    ASSERT_EQ(approx.converged().size(), g.num_edges());
    for (EdgeId id = 0; id < g.num_edges(); ++id) EXPECT_NEAR(approx[id], exact[id], 0.05);
  }
}

TEST(OrcAll, SinkhornValidation) {
  EXPECT_THROW(orc_all(cycle_graph(5), {}, OrcSolver::sinkhorn_with(0.0, 10)), InputError);
  EXPECT_THROW(orc_all(cycle_graph(5), {}, OrcSolver::sinkhorn_with(0.1, 0)), InputError);
}

TEST(OrcAll, EdgelessGraph) {
  auto g = Graph::from_edges(3, std::vector<EdgeKey>{});
  EXPECT_EQ(orc_all(g, {}, OrcSolver::exact()).size(), 0u);
}

TEST(EdgeCurvatureMapAt, LookupBothOrientations) {
  auto g = path_graph(4);
  auto m = orc_all(g, {}, OrcSolver::exact());
  EXPECT_EQ(m.at({2, 1}), m.at({1, 2}));
  EXPECT_THROW(m.at({0, 3}), InputError);
}

// ----------------------------------------------------------------------------
// Bounds and Forman curvatures
// ----------------------------------------------------------------------------

TEST(Bounds, KnownValues) {
  auto k3 = orc_bounds(complete_graph(3), {0, 1});
  EXPECT_NEAR(k3.lower, 0.5, 1e-15);
  EXPECT_NEAR(k3.upper, 0.5, 1e-15);
  auto p3 = orc_bounds(path_graph(3), {0, 1});
  EXPECT_EQ(p3.lower, 0.0);
  EXPECT_EQ(p3.upper, 0.0);
  for (const auto g = cycle_graph(7); auto e : g.edges()) EXPECT_EQ(orc_bounds(g, e).upper, 0.0);
  EXPECT_THROW(orc_bounds(path_graph(3), {0, 2}), InputError);
}

TEST(Bounds, HandComputedStar) {
  // Star(5) edge (0,1): du = 4, dv = 1, no triangles.
  // lower = -(1 - 1 - 1/4)_+ - (1 - 1 - 1/4)_+ + 0 = 0.
  auto b = orc_bounds(star_graph(5), {0, 1});
  EXPECT_EQ(b.lower, 0.0);
  EXPECT_EQ(b.upper, 0.0);
  // Cycle(8) edge: du = dv = 2, so lower = -2 * (1 - 1/2 - 1/2)_+ = 0.
  EXPECT_EQ(orc_bounds(cycle_graph(8), {0, 1}).lower, 0.0);
  // Edge (0,1) of two joined K_{1,3} centers: du = dv = 4, t = 0 -> lower = -2 * (1 - 1/2) = -1.
  std::vector<EdgeKey> e{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {1, 6}, {1, 7}};
  auto b2 = orc_bounds(Graph::from_edges(8, e), {0, 1});
  EXPECT_DOUBLE_EQ(b2.lower, -1.0);
  EXPECT_EQ(b2.upper, 0.0);
}

TEST(Bounds, LowerNotAboveUpper) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 20; ++t) {
    auto g = oracle::random_graph(15, 0.3, rng);
    for (auto e : g.edges()) {
      auto b = orc_bounds(g, e);
      EXPECT_LE(b.lower, b.upper);
      double t_over_max = static_cast<double>(edge_motif_counts(g, e).triangles) /
                          static_cast<double>(std::max(g.degree(e.u), g.degree(e.v)));
      EXPECT_DOUBLE_EQ(b.upper, t_over_max);
    }
  }
}

TEST(Forman, ClosedForms) {
  EXPECT_EQ(frc(complete_graph(4), {0, 1}), -2.0);
  EXPECT_EQ(afrc3(complete_graph(3), {0, 1}), 3.0);
  EXPECT_EQ(afrc4(cycle_graph(4), {0, 1}), 2.0);
  EXPECT_EQ(afrc4(complete_graph(4), {0, 1}), -2.0 + 6.0);
  EXPECT_THROW(frc(path_graph(3), {0, 2}), InputError);
  EXPECT_THROW(afrc3(path_graph(3), {0, 2}), InputError);
  EXPECT_THROW(afrc4(path_graph(3), {0, 2}), InputError);
}

TEST(Forman, OrderedAndIntegral) {
  auto g = generate_named("er(30,0.25,12)");
  for (auto e : g.edges()) {
    double f = frc(g, e), a3 = afrc3(g, e), a4 = afrc4(g, e);
    EXPECT_EQ(f, 4.0 - static_cast<double>(g.degree(e.u) + g.degree(e.v)));
    EXPECT_LE(f, a3);
    EXPECT_LE(a3, a4);
    EXPECT_EQ(a4, std::round(a4));
  }
}

// ----------------------------------------------------------------------------
// Dispatch
// ----------------------------------------------------------------------------

TEST(CurvatureMethodParse, NamesAndLabels) {
  EXPECT_EQ(parse_curvature_method("orc-exact").label(), "orc_exact");
  EXPECT_EQ(parse_curvature_method("orc_exact").label(), "orc_exact");
  EXPECT_EQ(parse_curvature_method("orc-idleness", 0.5).label(), "orc_idleness(0.5)");
  EXPECT_EQ(parse_curvature_method("orc-sinkhorn").label(), "orc_sinkhorn(0.01)");
  EXPECT_EQ(parse_curvature_method("frc").label(), "frc");
  EXPECT_EQ(parse_curvature_method("afrc3").label(), "afrc3");
  EXPECT_EQ(parse_curvature_method("afrc4").label(), "afrc4");
  EXPECT_THROW(parse_curvature_method("bakry-emery"), InputError);
  EXPECT_THROW(parse_curvature_method("orc-idleness", 1.5), InputError);
}

TEST(ComputeCurvature, DispatchesClosedForms) {
  auto g = cycle_graph(4);
  auto m = compute_curvature(g, parse_curvature_method("afrc4"));
  for (double x : m.values()) EXPECT_EQ(x, 2.0);
  EXPECT_EQ(m.method().label(), "afrc4");
  auto k4 = compute_curvature(complete_graph(4), parse_curvature_method("frc"));
  for (double x : k4.values()) EXPECT_EQ(x, -2.0);
}

}  // namespace
}  // namespace ricci
