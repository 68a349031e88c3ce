#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "minexp/core.hpp"
#include "minexp/graph.hpp"

namespace minexp {

// ---------------------------------------------------------------------------
// Random expander families. All generators are pure functions of their
// arguments; the same seed gives the same graph on every platform.
// ---------------------------------------------------------------------------

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

}  // namespace detail

// Simple d-regular graph from the pairing (configuration) model. Points are
// paired one random pair at a time and a pair that would create a loop or a
// repeated edge is rejected and redrawn; when the remaining points admit no
// legal pair the whole pairing restarts.
inline Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                                std::size_t max_restarts = 1000) {
  detail::require(n >= 1, "random-regular: n must be positive");
  detail::require(d < n, "random-regular: need d < n");
  detail::require((n * d) % 2 == 0, "random-regular: n*d must be even");
  if (d == 0) return Graph(n);

  Rng rng(seed);
  for (std::size_t attempt = 0; attempt <= max_restarts; ++attempt) {
    std::vector<Vertex> points;
    points.reserve(n * d);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t k = 0; k < d; ++k) points.push_back(static_cast<Vertex>(v));
    }
    std::vector<std::vector<Vertex>> adj(n);
    std::vector<Edge> edges;
    edges.reserve(n * d / 2);

    auto adjacent = [&](Vertex a, Vertex b) {
      const auto& la = adj[a].size() < adj[b].size() ? adj[a] : adj[b];
      Vertex other = adj[a].size() < adj[b].size() ? b : a;
      return std::find(la.begin(), la.end(), other) != la.end();
    };
    auto take = [&](std::size_t i, std::size_t j) {
      Vertex a = points[i];
      Vertex b = points[j];
      adj[a].push_back(b);
      adj[b].push_back(a);
      edges.push_back({a, b});
      if (i < j) std::swap(i, j);
      points[i] = points.back();
      points.pop_back();
      points[j] = points.back();
      points.pop_back();
    };

    bool stuck = false;
    std::size_t failures = 0;
    while (!points.empty()) {
      const std::size_t r = points.size();
      std::size_t i = static_cast<std::size_t>(rng.below(r));
      std::size_t j = static_cast<std::size_t>(rng.below(r));
      if (i != j && points[i] != points[j] && !adjacent(points[i], points[j])) {
        take(i, j);
        failures = 0;
        continue;
      }
      if (++failures < 64) continue;

      // Many consecutive rejections: enumerate the legal pairs among the
      // remaining points and draw one uniformly (or restart if there is none).
      std::vector<std::pair<std::size_t, std::size_t>> legal;
      for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = a + 1; b < r; ++b) {
          if (points[a] != points[b] && !adjacent(points[a], points[b])) legal.emplace_back(a, b);
        }
      }
      if (legal.empty()) {
        stuck = true;
        break;
      }
      auto [a, b] = legal[static_cast<std::size_t>(rng.below(legal.size()))];
      take(a, b);
      failures = 0;
    }
    if (!stuck) return Graph::from_edges(n, edges);
  }
  throw GenerationError("random-regular: rejection budget exceeded (d too close to n?)");
}

// Every vertex picks d distinct uniform partners; the union is symmetrised.
inline Graph gen_d_out(std::size_t n, std::size_t d, std::uint64_t seed) {
  detail::require(d >= 1 && d < n, "d-out: need 1 <= d < n");
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(n * d);
  std::vector<char> mark(n, 0);
  std::vector<Vertex> picked;
  const std::size_t pool = n - 1;  // all vertices except v, mapped past v
  for (std::size_t v = 0; v < n; ++v) {
    picked.clear();
    // Floyd's sampling of d distinct values from [0, pool).
    for (std::size_t j = pool - d; j < pool; ++j) {
      auto x = static_cast<std::size_t>(rng.below(j + 1));
      std::size_t pick = mark[x] ? j : x;
      mark[pick] = 1;
      picked.push_back(static_cast<Vertex>(pick));
    }
    for (Vertex x : picked) {
      mark[x] = 0;
      Vertex w = x >= v ? x + 1 : x;
      edges.push_back({static_cast<Vertex>(v), w});
    }
  }
  return Graph::from_edges(n, edges, /*merge_duplicates=*/true);
}

// Binomial random graph: each of the n(n-1)/2 pairs independently with prob. p.
inline Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  detail::require(p >= 0.0 && p <= 1.0, "gnp: need 0 <= p <= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
  }
  return Graph::from_edges(n, edges);
}

// ---------------------------------------------------------------------------
// Explicit graphs.
// ---------------------------------------------------------------------------

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph::from_edges(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
  detail::require(n >= 3, "cycle: need n >= 3");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>((v + 1) % n)});
  return Graph::from_edges(n, edges);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v + 1)});
  return Graph::from_edges(n, edges);
}

// rows x cols grid, vertex (r, c) = r*cols + c.
inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      auto v = static_cast<Vertex>(r * cols + c);
      if (c + 1 < cols) edges.push_back({v, v + 1});
      if (r + 1 < rows) edges.push_back({v, static_cast<Vertex>(v + cols)});
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, static_cast<Vertex>((i + 1) % 5)});
    edges.push_back({static_cast<Vertex>(5 + i), static_cast<Vertex>(5 + (i + 2) % 5)});
    edges.push_back({i, static_cast<Vertex>(i + 5)});
  }
  return Graph::from_edges(10, edges);
}

// ---------------------------------------------------------------------------
// Pattern families.
// ---------------------------------------------------------------------------

// Random recursive tree: vertex i attaches to a uniform earlier vertex.
inline Graph random_tree(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    edges.push_back({static_cast<Vertex>(rng.below(v)), static_cast<Vertex>(v)});
  }
  return Graph::from_edges(n, edges);
}

// Uniform graph with exactly m edges (rejection on repeated pairs).
inline Graph random_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  detail::require(n >= 2 || m == 0, "gnm: need n >= 2");
  detail::require(m <= n * (n - 1) / 2, "gnm: too many edges");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<std::uint64_t> keys;
  while (edges.size() < m) {
    auto u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    std::uint64_t key = (std::uint64_t{u} << 32) | v;
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it != keys.end() && *it == key) continue;
    keys.insert(it, key);
    edges.push_back({u, v});
  }
  return Graph::from_edges(n, edges);
}

// Random graph with maximum degree <= max_deg: m random edge proposals, each
// kept if it is new and both endpoints still have room.
inline Graph random_bounded_degree(std::size_t n, std::size_t proposals, std::size_t max_deg,
                                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> deg(n, 0);
  std::vector<std::uint64_t> keys;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < proposals && n >= 2; ++i) {
    auto u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n));
    if (u == v || deg[u] >= max_deg || deg[v] >= max_deg) continue;
    if (u > v) std::swap(u, v);
    std::uint64_t key = (std::uint64_t{u} << 32) | v;
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it != keys.end() && *it == key) continue;
    keys.insert(it, key);
    edges.push_back({u, v});
    ++deg[u];
    ++deg[v];
  }
  return Graph::from_edges(n, edges);
}

// ---------------------------------------------------------------------------
// Degree-3 reduction.
// ---------------------------------------------------------------------------

struct Degree3Reduction {
  Graph graph;
  std::vector<Vertex> provenance;  // reduced vertex -> original vertex

  // Reduced vertices grouped by original vertex (each group induces a path).
  std::vector<VertexSet> classes(std::size_t original_n) const {
    std::vector<std::vector<Vertex>> groups(original_n);
    for (std::size_t i = 0; i < provenance.size(); ++i) groups[provenance[i]].push_back(static_cast<Vertex>(i));
    std::vector<VertexSet> out;
    out.reserve(original_n);
    for (auto& g : groups) out.emplace_back(std::move(g));
    return out;
  }
};

// Replaces every vertex v by a path (v,1)..(v,deg v); the i-th copy of v is
// joined to the j-th copy of w when w is v's i-th smallest neighbour and v is
// w's j-th smallest. Isolated vertices keep a single copy. Copies are numbered
// in order of (v, i).
inline Degree3Reduction degree3_reduce(const Graph& h) {
  const std::size_t n = h.vertex_count();
  std::vector<std::size_t> first(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) first[v + 1] = first[v] + std::max<std::size_t>(1, h.degree(static_cast<Vertex>(v)));

  Degree3Reduction out;
  out.provenance.resize(first[n]);
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    const auto vv = static_cast<Vertex>(v);
    for (std::size_t c = first[v]; c < first[v + 1]; ++c) out.provenance[c] = vv;
    auto nb = h.neighbors(vv);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Vertex w = nb[i];
      if (i + 1 < nb.size()) edges.push_back({static_cast<Vertex>(first[v] + i), static_cast<Vertex>(first[v] + i + 1)});
      if (w < vv) continue;
      auto wn = h.neighbors(w);
      auto j = static_cast<std::size_t>(std::lower_bound(wn.begin(), wn.end(), vv) - wn.begin());
      edges.push_back({static_cast<Vertex>(first[v] + i), static_cast<Vertex>(first[w] + j)});
    }
  }
  out.graph = Graph::from_edges(first[n], edges);
  return out;
}

}  // namespace minexp
