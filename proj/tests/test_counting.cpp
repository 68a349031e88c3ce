#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "minexp/counting.hpp"
#include "minexp/embedding.hpp"
#include "minexp/generators.hpp"

using namespace minexp;

namespace {

// Tries every map V(G) -> {unused, 0..k-1} and asks verify_minor. Independent of
// the pruned search in counting.hpp.
bool brute_force_minor(const Graph& g, const Graph& h) {
  const std::size_t n = g.vertex_count();
  const std::size_t k = h.vertex_count();
  std::vector<std::size_t> label(n, 0);
  while (true) {
    MinorModel m;
    m.pattern = h;
    std::vector<std::vector<Vertex>> sets(k);
    for (std::size_t v = 0; v < n; ++v) {
      if (label[v] > 0) sets[label[v] - 1].push_back(static_cast<Vertex>(v));
    }
    for (auto& s : sets) m.branch_sets.emplace_back(std::move(s));
    if (verify_minor(g, m).valid) return true;
    std::size_t i = 0;
    while (i < n && label[i] == k) label[i++] = 0;
    if (i == n) return false;
    ++label[i];
  }
}

}  // namespace

TEST(UniversalityThreshold, Examples) {
  UniversalityThreshold a = universality_threshold(std::exp(6.0), std::numbers::e - 2.0);
  EXPECT_EQ(a.m, 402u);  // floor(e^6) = 403, evened
  UniversalityThreshold b = universality_threshold(1e6, 10);
  const auto raw = static_cast<std::size_t>(std::floor(6e6 * std::log(12.0) / std::log(1e6)));
  EXPECT_EQ(b.m, raw - raw % 2);
  EXPECT_TRUE(b.trivial);  // 12 > 1e6^(1/6) = 10
  EXPECT_GT(b.m, 1000000u);
  EXPECT_FALSE(universality_threshold(1e12, 10).trivial);
  EXPECT_THROW(universality_threshold(2, 10), InputError);
  EXPECT_THROW(universality_threshold(100, 0), InputError);
  EXPECT_THROW(universality_threshold(1e30, 10), InputError);
}

TEST(CountBounds, FormulaAndDegenerateCase) {
  CountingReport r = count_bounds(1000, 3, 100);
  const double expected_upper =
      1000 * std::log(5.0) + 50 * std::log(2 * std::numbers::e * 1000 / 100) + 100 * std::log(2 * 5.0 * 1000 / 100);
  EXPECT_NEAR(r.log_minor_upper, expected_upper, 1e-9);
  EXPECT_NEAR(r.log_graph_lower, 50 * std::log(100.0 / 256.0), 1e-12);
  EXPECT_NEAR(r.separation, r.log_graph_lower - r.log_minor_upper, 1e-12);
  EXPECT_NEAR(count_bounds(1000, 3, 2).log_graph_lower, std::log(2.0 / 256.0), 1e-12);
  EXPECT_THROW(count_bounds(1000, 3, 3), InputError);
  EXPECT_TRUE(std::isfinite(count_bounds(1e300, 10, 1000000).log_minor_upper));
}

TEST(CountBounds, SeparationPerVertexGrowsWithN) {
  // both logs scale like n, so the comparison is made per vertex
  const double s4 = count_bounds_at_threshold(1e4, 10).separation / 1e4;
  const double s5 = count_bounds_at_threshold(1e5, 10).separation / 1e5;
  const double s6 = count_bounds_at_threshold(1e6, 10).separation / 1e6;
  EXPECT_LT(s4, s5);
  EXPECT_LT(s5, s6);
}

TEST(CountBounds, CrossoverExistsForLargeN) {
  auto cross = separation_crossover(10, 1e3, 1e15);
  ASSERT_TRUE(cross.has_value());
  EXPECT_GT(count_bounds_at_threshold(*cross * 1.01, 10).separation, 0.0);
  EXPECT_LT(count_bounds_at_threshold(*cross / 1.01, 10).separation, 0.0);
  EXPECT_GT(*cross, 1e9);
  EXPECT_LT(*cross, 1e12);
}

TEST(ExactMinor, ClassicalCases) {
  EXPECT_TRUE(is_minor_exact(petersen_graph(), complete_graph(5)));
  EXPECT_FALSE(is_minor_exact(grid_graph(4, 4), complete_graph(5)));
  EXPECT_FALSE(is_minor_exact(cycle_graph(12), complete_graph(4)));
  EXPECT_TRUE(is_minor_exact(cycle_graph(12), cycle_graph(5)));
  Graph g = gen_gnp(10, 0.5, 3);
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (e.u < 8 && e.v < 8) kept.push_back(e);
  }
  EXPECT_TRUE(is_minor_exact(g, Graph::from_edges(8, kept)));
  auto model = find_minor_exact(petersen_graph(), complete_graph(5));
  ASSERT_TRUE(model.has_value());
  EXPECT_TRUE(verify_minor(petersen_graph(), *model).valid);
  EXPECT_THROW(is_minor_exact(complete_graph(17), complete_graph(3)), TooLargeError);
  EXPECT_THROW(is_minor_exact(complete_graph(10), complete_graph(9)), TooLargeError);
}

TEST(ExactMinor, AgreesWithBruteForce) {
  std::size_t yes = 0;
  std::size_t no = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const std::size_t n = 4 + rng.below(4);
    const std::size_t k = 2 + rng.below(3);
    Graph g = gen_gnp(n, 0.25 + 0.4 * rng.uniform01(), seed);
    Graph h = random_gnm(k, rng.below(k * (k - 1) / 2 + 1), seed + 1000);
    const bool fast = is_minor_exact(g, h);
    ASSERT_EQ(fast, brute_force_minor(g, h)) << "seed " << seed;
    ++(fast ? yes : no);
    if (auto m = find_minor_exact(g, h)) {
      EXPECT_TRUE(verify_minor(g, *m).valid);
    }
  }
  EXPECT_GT(yes, 0u);
  EXPECT_GT(no, 0u);
}

TEST(ExactMinor, MonotoneUnderEdgeDeletion) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = gen_gnp(9, 0.35, seed);
    Graph h = random_gnm(5, 6, seed);
    if (!is_minor_exact(g, h)) continue;
    std::vector<Edge> edges = h.edges();
    for (std::size_t drop = 0; drop < edges.size(); ++drop) {
      std::vector<Edge> fewer;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i != drop) fewer.push_back(edges[i]);
      }
      EXPECT_TRUE(is_minor_exact(g, Graph::from_edges(5, fewer)));
    }
  }
}

TEST(ExactMinor, EngineModelsAgree) {
  // tiny hosts: whenever the universal engine returns a model, the oracle agrees
  EmbedConfig relaxed;
  relaxed.enforce_hypotheses = false;
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = gen_random_regular(14, 4, seed);
    Graph h = random_gnm(4, 4, seed);
    try {
      UniversalEmbedding e = embed_universal(g, 0.5, 5, h, relaxed);
      EXPECT_TRUE(verify_minor(g, e.model).valid);
      EXPECT_TRUE(is_minor_exact(g, h));
      ++checked;
    } catch (const EmbeddingFailedError&) {
    }
  }
  EXPECT_GT(checked, 0u);
}

TEST(Enumeration, FourVertexClasses) {
  std::vector<std::size_t> expected{1, 1, 2, 3, 2, 1, 1};
  std::size_t total = 0;
  for (std::size_t e = 0; e <= 6; ++e) {
    const std::size_t count = enumerate_graphs(4, e).size();
    EXPECT_EQ(count, expected[e]) << "e = " << e;
    total += count;
  }
  EXPECT_EQ(total, 11u);
}

TEST(Enumeration, FiveVertexClasses) {
  std::vector<std::size_t> expected{1, 1, 2, 4, 6, 6, 6, 4, 2, 1, 1};
  for (std::size_t e = 0; e <= 10; ++e) EXPECT_EQ(enumerate_graphs(5, e).size(), expected[e]) << "e = " << e;
}

TEST(Enumeration, CanonicalFormIsAnInvariant) {
  Graph g = gen_gnp(7, 0.5, 4);
  std::vector<Vertex> perm(7);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    rng.shuffle(perm);
    std::vector<Edge> relabeled;
    for (const Edge& e : g.edges()) relabeled.push_back({perm[e.u], perm[e.v]});
    EXPECT_EQ(canonical_form(Graph::from_edges(7, relabeled)), canonical_form(g));
  }
  EXPECT_NE(canonical_form(path_graph(4)), canonical_form(Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}})));
}

TEST(FindNonMinor, Examples) {
  auto k4 = find_non_minor(cycle_graph(12), 4, 6);
  ASSERT_TRUE(k4.has_value());
  EXPECT_EQ(*k4, complete_graph(4));
  auto k5 = find_non_minor(grid_graph(4, 4), 5, 10);
  ASSERT_TRUE(k5.has_value());
  EXPECT_EQ(*k5, complete_graph(5));
  EXPECT_FALSE(find_non_minor(complete_graph(16), 6, 9).has_value());
  EXPECT_FALSE(find_non_minor(complete_graph(16), 8, 4).has_value());
  // C12 contains every graph on 4 vertices and 3 edges except the star and the triangle
  auto star = find_non_minor(cycle_graph(12), 4, 3);
  ASSERT_TRUE(star.has_value());
  EXPECT_FALSE(is_minor_exact(cycle_graph(12), *star));
}
