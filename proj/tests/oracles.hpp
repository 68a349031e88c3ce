#pragma once

// Independent reference implementations shared by the unit tests and the
// acceptance binary. None of these call into the code they check.

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "minexp/generators.hpp"
#include "minexp/graph.hpp"

namespace minexp::oracle {

// Bitmask brute force over all subsets (n <= 31). Returns the violating subset
// that is smallest by (size, lexicographic).
inline std::optional<std::vector<Vertex>> naive_violation(const Graph& g, double alpha, double t) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  std::optional<std::vector<Vertex>> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (static_cast<double>(k) * t > alpha * static_cast<double>(n) * (1 + 1e-12)) continue;
    std::uint32_t nb = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (mask >> v & 1u) nb |= adj[v];
    }
    nb &= ~mask;
    if (!(std::popcount(nb) < t * static_cast<double>(k))) continue;
    std::vector<Vertex> s;
    for (std::size_t v = 0; v < n; ++v) {
      if (mask >> v & 1u) s.push_back(static_cast<Vertex>(v));
    }
    if (!best || s.size() < best->size() || (s.size() == best->size() && s < *best)) best = s;
  }
  return best;
}

// max(|lambda_2|, |lambda_n|) from a dense symmetric eigensolver.
inline double eigen_lambda(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev(n - 2)), std::abs(ev(0)));
}

// Random d-regular host on n vertices plus `defects` extra vertices, each
// attached to `attach` random host vertices.
inline Graph with_defects(std::size_t n, std::size_t d, std::size_t defects, std::size_t attach, std::uint64_t seed) {
  Graph base = gen_random_regular(n, d, seed);
  std::vector<Edge> edges = base.edges();
  Rng rng(derive_seed(seed, "defect"));
  for (std::size_t i = 0; i < defects; ++i) {
    std::vector<Vertex> pool(n);
    std::iota(pool.begin(), pool.end(), Vertex{0});
    rng.shuffle(pool);
    for (std::size_t j = 0; j < attach; ++j) edges.push_back({pool[j], static_cast<Vertex>(n + i)});
  }
  return Graph::from_edges(n + defects, edges);
}

// Plain BFS layer count from a set, for ball sizes.
inline std::size_t ball_size(const Graph& g, const std::vector<Vertex>& u, std::size_t z) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<Vertex> frontier;
  for (Vertex v : u) {
    if (dist[v] < 0) {
      dist[v] = 0;
      frontier.push_back(v);
    }
  }
  std::size_t count = frontier.size();
  for (std::size_t layer = 0; layer < z && !frontier.empty(); ++layer) {
    std::vector<Vertex> next;
    for (Vertex v : frontier) {
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = static_cast<int>(layer) + 1;
          next.push_back(w);
        }
      }
    }
    count += next.size();
    frontier.swap(next);
  }
  return count;
}

}  // namespace minexp::oracle
