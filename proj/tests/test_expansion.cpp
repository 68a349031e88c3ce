#include <gtest/gtest.h>

#include <cmath>

#include "minexp/expansion.hpp"
#include "minexp/generators.hpp"
#include "oracles.hpp"

using namespace minexp;
using oracle::eigen_lambda;
using oracle::naive_violation;
using oracle::with_defects;

namespace {

Graph two_cliques_bridged() {
  std::vector<Edge> edges;
  for (Vertex base : {0u, 10u}) {
    for (Vertex u = 0; u < 10; ++u) {
      for (Vertex v = u + 1; v < 10; ++v) edges.push_back({base + u, base + v});
    }
  }
  edges.push_back({9, 10});
  return Graph::from_edges(20, edges);
}

}  // namespace

TEST(ExpansionParams, Validation) {
  EXPECT_THROW((ExpansionParams{0.0, 2.0}.validate()), InputError);
  EXPECT_THROW((ExpansionParams{1.0, 2.0}.validate()), InputError);
  EXPECT_THROW((ExpansionParams{0.5, 0.5}.validate()), InputError);
  EXPECT_EQ((ExpansionParams{0.1, 1.0}.size_cap(30)), 3u);  // 0.1 * 30 is not exactly 3 in binary
  EXPECT_EQ((ExpansionParams{0.5, 2.0}.size_cap(6)), 1u);
}

TEST(CertifyExact, Examples) {
  ExpansionCertificate k6 = certify_expansion_exact(complete_graph(6), {0.5, 2.0});
  EXPECT_EQ(k6.verdict, Verdict::certified_exact);
  EXPECT_EQ(k6.checked_size_cap, 1u);

  ExpansionCertificate c8 = certify_expansion_exact(cycle_graph(8), {0.5, 2.0});
  EXPECT_EQ(c8.verdict, Verdict::refuted);
  EXPECT_EQ(*c8.witness, (VertexSet{0, 1}));
  EXPECT_EQ(c8.checked_size_cap, 2u);

  ExpansionCertificate pet = certify_expansion_exact(petersen_graph(), {0.25, 2.0});
  EXPECT_EQ(pet.verdict, Verdict::certified_exact);
  EXPECT_EQ(pet.checked_size_cap, 1u);
}

TEST(CertifyExact, RefusesOverBudget) {
  EXPECT_THROW(certify_expansion_exact(gen_random_regular(200, 4, 1), {0.5, 2.0}, 1e6), TooLargeError);
}

TEST(CertifyExact, MatchesNaiveOracle) {
  std::size_t refuted = 0;
  std::size_t certified = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const std::size_t n = 4 + rng.below(9);
    Graph g = gen_gnp(n, 0.2 + 0.6 * rng.uniform01(), seed);
    for (double alpha : {0.25, 0.5}) {
      for (double t : {1.0, 2.0, 4.0}) {
        ExpansionCertificate c = certify_expansion_exact(g, {alpha, t});
        auto oracle = naive_violation(g, alpha, t);
        ASSERT_EQ(c.verdict == Verdict::refuted, oracle.has_value()) << "seed " << seed;
        if (oracle) {
          EXPECT_EQ(c.witness->ids(), *oracle);
          ++refuted;
        } else {
          ++certified;
        }
      }
    }
  }
  EXPECT_GT(refuted, 0u);
  EXPECT_GT(certified, 0u);
}

TEST(Heuristic, Examples) {
  auto w = find_violation_heuristic(two_cliques_bridged(), {0.5, 3.0});
  ASSERT_TRUE(w.has_value());
  EXPECT_LT(external_neighborhood(two_cliques_bridged(), *w).size(), 3 * w->size());

  EXPECT_FALSE(find_violation_heuristic(complete_graph(30), {0.5, 2.0}).has_value());

  SearchEffort tiny;
  tiny.exhaustive_budget = 10;  // force the greedy stage
  auto arc = find_violation_heuristic(cycle_graph(20), {0.5, 2.0}, tiny);
  ASSERT_TRUE(arc.has_value());
  EXPECT_GE(arc->size(), 2u);
  EXPECT_LT(external_neighborhood(cycle_graph(20), *arc).size(), 2 * arc->size());
}

TEST(Heuristic, GreedyStageFindsPlantedSparseSet) {
  // a 30-vertex clique hanging off a 16-regular graph by 3 edges
  Graph base = gen_random_regular(400, 16, 3);
  std::vector<Edge> edges = base.edges();
  for (Vertex u = 400; u < 430; ++u) {
    for (Vertex v = u + 1; v < 430; ++v) edges.push_back({u, v});
  }
  edges.push_back({400, 0});
  edges.push_back({401, 1});
  edges.push_back({402, 2});
  Graph g = Graph::from_edges(430, edges);
  auto w = find_violation_heuristic(g, {0.5, 2.0});
  ASSERT_TRUE(w.has_value());
  EXPECT_LT(external_neighborhood(g, *w).size(), 2 * w->size());
  EXPECT_LE(w->size(), (ExpansionParams{0.5, 2.0}.size_cap(430)));
}

TEST(Heuristic, HeuristicCertificateLabels) {
  ExpansionCertificate c = certify_expansion_heuristic(gen_random_regular(500, 16, 9), {0.3, 3.0});
  EXPECT_EQ(c.verdict, Verdict::passed_heuristic);
  EXPECT_FALSE(c.witness.has_value());
  ExpansionCertificate small = certify_expansion_heuristic(complete_graph(6), {0.5, 2.0});
  EXPECT_EQ(small.verdict, Verdict::certified_exact);
}

TEST(Spectral, Examples) {
  SpectralEstimate k4 = spectral_lambda(complete_graph(4));
  EXPECT_TRUE(k4.regular);
  EXPECT_NEAR(k4.lambda, 1.0, 1e-6);
  // C8 is bipartite, so |lambda_n| = 2 dominates 2cos(pi/4)
  EXPECT_NEAR(spectral_lambda(cycle_graph(8)).lambda, 2.0, 1e-6);
  EXPECT_NEAR(spectral_lambda(petersen_graph()).lambda, 2.0, 1e-6);
  EXPECT_NEAR(spectral_lambda(cycle_graph(9)).lambda, 2.0 * std::cos(M_PI / 9.0), 1e-6);
  SpectralEstimate path = spectral_lambda(path_graph(5));
  EXPECT_FALSE(path.regular);
}

TEST(Spectral, MatchesDenseEigensolver) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const std::size_t n = 20 + 2 * rng.below(16);
    const std::size_t d = 3 + rng.below(6);
    Graph g = gen_random_regular(n, d % 2 && n % 2 ? d + 1 : d, seed);
    SpectralEstimate est = spectral_lambda(g);
    EXPECT_NEAR(est.lambda, eigen_lambda(g), 1e-4) << "seed " << seed;
  }
}

TEST(Ndl, Params) {
  ExpansionParams a = ndl_expansion_params(100, 8, 1);
  EXPECT_DOUBLE_EQ(a.alpha, 0.25);
  EXPECT_DOUBLE_EQ(a.t, 4.0);
  EXPECT_DOUBLE_EQ(ndl_expansion_params(100, 40, 5).t, 4.0);
  EXPECT_THROW(ndl_expansion_params(100, 8, 2), HypothesisError);
  EXPECT_THROW(ndl_expansion_params(100, 8, 0), InputError);
}

TEST(Mixing, FormulaAndAudit) {
  EXPECT_DOUBLE_EQ(mixing_bound(10, 3, 2, 0, 7), 0.0);
  EXPECT_DOUBLE_EQ(mixing_bound(10, 3, 2, 5, 5), 17.5);
  Graph p = petersen_graph();
  const double lambda = eigen_lambda(p);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    std::vector<Vertex> xs;
    std::vector<Vertex> ys;
    for (Vertex v = 0; v < 10; ++v) {
      if (rng.bernoulli(0.5)) xs.push_back(v);
      if (rng.bernoulli(0.5)) ys.push_back(v);
    }
    VertexSet x(xs);
    VertexSet y(ys);
    EXPECT_LE(static_cast<double>(edges_between(p, x, y)), mixing_bound(10, 3, lambda, x.size(), y.size()) + 1e-9);
  }
}

TEST(Prune, CompleteGraphUntouched) {
  PruneResult r = prune_one2all(complete_graph(20), 0.5, 2.0, default_finder());
  EXPECT_EQ(r.kept, VertexSet::range(20));
  EXPECT_TRUE(r.removed.empty());
}

TEST(Prune, RemovesPendantVertex) {
  Graph base = gen_random_regular(200, 8, 4);
  std::vector<Edge> edges = base.edges();
  edges.push_back({0, 200});
  Graph g = Graph::from_edges(201, edges);
  PruneResult r = prune_one2all(g, 0.5, 4.0, default_finder());
  EXPECT_EQ(r.removed, (VertexSet{200}));
  EXPECT_EQ(r.kept, VertexSet::range(200));
}

TEST(Prune, SparseRandomGraphLosesFewVertices) {
  std::size_t pruned_runs = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = gen_gnp(500, 0.05, seed);
    const double alpha = 0.5;
    const double t = 24.0;
    PruneResult r;
    try {
      r = prune_one2all(g, alpha, t, default_finder());
    } catch (const HypothesisError&) {
      continue;
    }
    EXPECT_LE(r.removed.size(), ceil_ratio(alpha * 500, t));
    if (!r.removed.empty()) ++pruned_runs;
    Graph sub = induced_subgraph(g, r.kept).graph;
    for (std::size_t k = 1; k <= 2; ++k) {
      EXPECT_FALSE(detail::first_violation_of_size(sub, {alpha / 4, t / 2}, k).has_value());
    }
  }
  EXPECT_GT(pruned_runs, 0u);
}

TEST(Prune, DefectsRemovedAndRecertified) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = with_defects(200, 16, 3, 2, seed);
    const double alpha = 0.5;
    const double t = 13.0;
    PruneResult r = prune_one2all(g, alpha, t, default_finder());
    EXPECT_LE(r.removed.size(), ceil_ratio(alpha * 203, t));
    EXPECT_EQ(r.removed, (VertexSet{200, 201, 202}));
    Graph sub = induced_subgraph(g, r.kept).graph;
    ExpansionCertificate c = certify_expansion_exact(sub, {alpha / 4, t / 2});
    EXPECT_LE(c.checked_size_cap, 4u);
    EXPECT_EQ(c.verdict, Verdict::certified_exact);
  }
}

TEST(Prune, HypothesisFailureCarriesRemovedSet) {
  // a long path: every short arc violates, so R outgrows alpha n / (2t)
  try {
    prune_one2all(path_graph(100), 0.5, 4.0, default_finder());
    FAIL() << "expected a hypothesis error";
  } catch (const HypothesisError& e) {
    EXPECT_FALSE(e.witness().empty());
    EXPECT_GT(static_cast<double>(e.witness().size()), 0.5 * 100 / 8.0);
  }
}

TEST(SparseCut, FindsSeparatorBetweenCliques) {
  auto cut = find_sparse_cut(two_cliques_bridged(), 1, 5);
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->removed.size(), 1u);
  EXPECT_GE(cut->side_a.size(), 5u);
  EXPECT_GE(cut->side_b.size(), 5u);
  EXPECT_EQ(edges_between(two_cliques_bridged(), cut->side_a, cut->side_b), 0u);
  EXPECT_FALSE(find_sparse_cut(complete_graph(30), 3, 5).has_value());
}

TEST(RobustPartition, CompleteGraphIsKept) {
  RobustSubgraph r = robust_partition(complete_graph(300), 0.5, 4096.0, default_finder());
  EXPECT_EQ(r.x, VertexSet::range(300));
  EXPECT_DOUBLE_EQ(r.beta, 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(r.t_eff, 1024.0);
  EXPECT_EQ(r.cut_rounds, 0u);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(RobustPartition, HypothesisOnT) {
  EXPECT_THROW(robust_partition(complete_graph(30), 0.5, 2048.0, default_finder()), InputError);
  RobustOptions relaxed;
  relaxed.enforce_hypotheses = false;
  RobustSubgraph r = robust_partition(complete_graph(30), 0.5, 16.0, default_finder(), relaxed);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(RobustPartition, StripsSeparatorBetweenTwoExpanders) {
  Graph a = gen_random_regular(512, 16, 1);
  Graph b = gen_random_regular(512, 16, 2);
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges()) edges.push_back({e.u + 512, e.v + 512});
  Rng rng(3);
  for (Vertex r = 1024; r < 1028; ++r) {
    for (int j = 0; j < 8; ++j) {
      edges.push_back({static_cast<Vertex>(rng.below(512)), r});
      edges.push_back({static_cast<Vertex>(512 + rng.below(512)), r});
    }
  }
  Graph g = Graph::from_edges(1028, edges, true);
  RobustOptions relaxed;
  relaxed.enforce_hypotheses = false;
  RobustSubgraph res = robust_partition(g, 0.5, 16.0, default_finder(), relaxed);
  EXPECT_GE(res.cut_rounds, 1u);
  const bool left = res.x.back() < 512;
  const bool right = res.x.front() >= 512 && res.x.back() < 1024;
  EXPECT_TRUE(left || right);
  EXPECT_GE(static_cast<double>(res.x.size()), 0.5 * 1028 / 8.0);
  EXPECT_LE(res.beta, 1.0);
  EXPECT_DOUBLE_EQ(res.beta, 0.5 * 1028 / (8.0 * static_cast<double>(res.x.size())));
}

TEST(RobustPartition, EdgeAcrossPropertyOnDOut) {
  RobustOptions relaxed;
  relaxed.enforce_hypotheses = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = gen_d_out(1024, 32, seed);
    RobustSubgraph r = robust_partition(g, 0.5, 64.0, heuristic_finder(), relaxed);
    EXPECT_GE(static_cast<double>(r.x.size()), 0.5 * 1024 / 8.0);
    Rng rng(derive_seed(seed, "audit"));
    const auto r_cap = static_cast<std::size_t>(std::floor(r.edge_across_r_cap));
    const auto floor_ab = static_cast<std::size_t>(std::ceil(r.edge_across_ab_floor));
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Vertex> ids(r.x.begin(), r.x.end());
      rng.shuffle(ids);
      const std::size_t rs = rng.below(r_cap + 1);
      const std::size_t rest = ids.size() - rs;
      if (rest < 2 * floor_ab) continue;
      const std::size_t as = floor_ab + rng.below(rest - 2 * floor_ab + 1);
      VertexSet a(std::vector<Vertex>(ids.begin() + static_cast<std::ptrdiff_t>(rs),
                                      ids.begin() + static_cast<std::ptrdiff_t>(rs + as)));
      VertexSet b(std::vector<Vertex>(ids.begin() + static_cast<std::ptrdiff_t>(rs + as), ids.end()));
      ASSERT_GT(edges_between(g, a, b), 0u);
    }
  }
}
