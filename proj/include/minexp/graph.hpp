#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "minexp/core.hpp"

namespace minexp {

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph on vertices 0..n-1 with sorted adjacency
// lists (CSR layout).
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : offsets_(n + 1, 0) {}

  // Rejects self-loops, out-of-range endpoints and (unless `merge_duplicates`)
  // repeated edges in either orientation.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges, bool merge_duplicates = false) {
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const Edge& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") out of range for n=" + std::to_string(n));
      }
      if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
      canon.push_back(e.u < e.v ? e : Edge{e.v, e.u});
    }
    std::sort(canon.begin(), canon.end());
    auto dup = std::adjacent_find(canon.begin(), canon.end());
    if (dup != canon.end()) {
      if (!merge_duplicates) {
        throw InputError("duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
      }
      canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    }

    Graph g(n);
    for (const Edge& e : canon) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adjacency_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : canon) {
      g.adjacency_[fill[e.u]++] = e.v;
      g.adjacency_[fill[e.v]++] = e.u;
    }
    for (std::size_t w = 0; w < n; ++w) {
      std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[w]),
                g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[w + 1]));
    }
    g.edge_count_ = canon.size();
    return g;
  }

  static Graph from_edges(std::size_t n, std::initializer_list<Edge> edges) {
    std::vector<Edge> v(edges);
    return from_edges(n, std::span<const Edge>(v));
  }

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (std::size_t v = 0; v < vertex_count(); ++v) d = std::max(d, degree(static_cast<Vertex>(v)));
    return d;
  }
  std::size_t min_degree() const {
    if (vertex_count() == 0) return 0;
    std::size_t d = degree(0);
    for (std::size_t v = 1; v < vertex_count(); ++v) d = std::min(d, degree(static_cast<Vertex>(v)));
    return d;
  }

  bool has_edge(Vertex u, Vertex v) const {
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < vertex_count(); ++u) {
      for (Vertex v : neighbors(static_cast<Vertex>(u))) {
        if (u < v) out.push_back({static_cast<Vertex>(u), v});
      }
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::size_t edge_count_ = 0;
};

inline void check_in_range(const Graph& g, const VertexSet& s, const char* what) {
  if (!s.empty() && s.back() >= g.vertex_count()) {
    throw InputError(std::string(what) + ": vertex " + std::to_string(s.back()) +
                     " out of range for n=" + std::to_string(g.vertex_count()));
  }
}

// ---------------------------------------------------------------------------
// Edge-list text format: "n m" then m lines "u v".
// ---------------------------------------------------------------------------

inline Graph read_edge_list(std::istream& in) {
  long long n = -1;
  long long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw InputError("edge list: bad header, expected 'n m'");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = -1;
    long long v = -1;
    if (!(in >> u >> v)) throw InputError("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("edge list: endpoint out of range on edge " + std::to_string(i));
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  std::string trailing;
  if (in >> trailing) throw InputError("edge list: trailing data after " + std::to_string(m) + " edges");
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

// ---------------------------------------------------------------------------
// Distance with an explicit infinity.
// ---------------------------------------------------------------------------

class Distance {
 public:
  static Distance finite(std::size_t d) { return Distance(d); }
  static Distance infinite() { return Distance(); }

  bool is_finite() const { return value_.has_value(); }
  bool is_infinite() const { return !value_.has_value(); }
  std::size_t value() const {
    if (!value_) throw InputError("distance is infinite");
    return *value_;
  }

  friend bool operator==(const Distance&, const Distance&) = default;

 private:
  Distance() = default;
  explicit Distance(std::size_t d) : value_(d) {}
  std::optional<std::size_t> value_;
};

namespace detail {

// Reusable layered BFS. Distances are kept only for touched vertices so repeated
// searches on a large graph cost O(explored) each.
class Bfs {
 public:
  static constexpr std::int32_t kUnseen = -1;

  explicit Bfs(std::size_t n) : dist_(n, kUnseen) {}

  void clear() {
    for (Vertex v : touched_) dist_[v] = kUnseen;
    touched_.clear();
  }

  // Multi-source BFS restricted to `allowed` (null = all vertices). If `stop`
  // is given, finishes the layer in which a stop vertex is first reached and
  // returns that layer's depth; otherwise explores everything reachable (up to
  // `max_depth` layers) and returns the largest distance seen. Returns -1 when a
  // stop set was given and never reached.
  std::int32_t run(const Graph& g, std::span<const Vertex> sources, const VertexMask* allowed = nullptr,
                   const VertexMask* stop = nullptr, std::int32_t max_depth = -1) {
    clear();
    std::vector<Vertex> frontier;
    for (Vertex s : sources) {
      if (allowed && !allowed->test(s)) continue;
      if (dist_[s] == kUnseen) {
        dist_[s] = 0;
        touched_.push_back(s);
        frontier.push_back(s);
      }
    }
    std::int32_t depth = 0;
    std::int32_t deepest = 0;
    std::vector<Vertex> next;
    while (!frontier.empty()) {
      deepest = depth;
      if (stop) {
        for (Vertex v : frontier) {
          if (stop->test(v)) return depth;
        }
      }
      if (max_depth >= 0 && depth >= max_depth) break;
      next.clear();
      for (Vertex v : frontier) {
        for (Vertex w : g.neighbors(v)) {
          if (dist_[w] != kUnseen) continue;
          if (allowed && !allowed->test(w)) continue;
          dist_[w] = depth + 1;
          touched_.push_back(w);
          next.push_back(w);
        }
      }
      frontier.swap(next);
      ++depth;
    }
    return stop ? -1 : deepest;
  }

  std::int32_t dist(Vertex v) const { return dist_[v]; }
  const std::vector<Vertex>& touched() const { return touched_; }

  // Walks back from `target` to a source, taking at each step the smallest-id
  // neighbour one layer closer. Returned path runs source -> target.
  std::vector<Vertex> path_to(const Graph& g, Vertex target, const VertexMask* allowed = nullptr) const {
    std::vector<Vertex> path{target};
    Vertex cur = target;
    while (dist_[cur] > 0) {
      const std::int32_t want = dist_[cur] - 1;
      Vertex prev = cur;
      for (Vertex w : g.neighbors(cur)) {
        if (dist_[w] == want && (!allowed || allowed->test(w))) {
          prev = w;
          break;
        }
      }
      if (prev == cur) throw InvariantError("BFS parent chain broken");
      path.push_back(prev);
      cur = prev;
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  std::vector<std::int32_t> dist_;
  std::vector<Vertex> touched_;
};

inline std::vector<Vertex> shortest_path_masked(const Graph& g, Bfs& bfs, std::span<const Vertex> source,
                                                const VertexMask& target, const VertexMask* allowed) {
  std::int32_t d = bfs.run(g, source, allowed, &target);
  if (d < 0) return {};
  Vertex best = 0;
  bool found = false;
  for (Vertex v : bfs.touched()) {
    if (bfs.dist(v) == d && target.test(v) && (!found || v < best)) {
      best = v;
      found = true;
    }
  }
  return bfs.path_to(g, best, allowed);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Neighbourhood, balls, distances, paths.
// ---------------------------------------------------------------------------

inline VertexSet external_neighborhood(const Graph& g, const VertexSet& x) {
  check_in_range(g, x, "external_neighborhood");
  VertexMask in_x(g.vertex_count(), x);
  VertexMask seen(g.vertex_count());
  std::vector<Vertex> out;
  for (Vertex v : x) {
    for (Vertex w : g.neighbors(v)) {
      if (!in_x.test(w) && !seen.test(w)) {
        seen.set(w);
        out.push_back(w);
      }
    }
  }
  return VertexSet(std::move(out));
}

// B(U, z): vertices within distance z of U.
inline VertexSet ball(const Graph& g, const VertexSet& u, std::size_t z) {
  if (u.empty()) throw InputError("ball: empty centre set");
  check_in_range(g, u, "ball");
  detail::Bfs bfs(g.vertex_count());
  bfs.run(g, u.ids(), nullptr, nullptr, static_cast<std::int32_t>(std::min<std::size_t>(z, 1u << 30)));
  return VertexSet(bfs.touched());
}

inline Distance distance(const Graph& g, const VertexSet& x, const VertexSet& y) {
  if (x.empty() || y.empty()) throw InputError("distance: empty vertex set");
  check_in_range(g, x, "distance");
  check_in_range(g, y, "distance");
  detail::Bfs bfs(g.vertex_count());
  VertexMask target(g.vertex_count(), y);
  std::int32_t d = bfs.run(g, x.ids(), nullptr, &target);
  return d < 0 ? Distance::infinite() : Distance::finite(static_cast<std::size_t>(d));
}

// Shortest path from `source` to `target`. Among targets at minimum distance the
// smallest id is chosen; each step back takes the smallest-id predecessor.
inline std::vector<Vertex> shortest_path(const Graph& g, const VertexSet& source, const VertexSet& target) {
  if (source.empty() || target.empty()) throw InputError("shortest_path: empty vertex set");
  check_in_range(g, source, "shortest_path");
  check_in_range(g, target, "shortest_path");
  detail::Bfs bfs(g.vertex_count());
  VertexMask t(g.vertex_count(), target);
  auto path = detail::shortest_path_masked(g, bfs, source.ids(), t, nullptr);
  if (path.empty()) throw NotConnectedError("shortest_path: no path between the given sets");
  return path;
}

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;    // new id -> old id
  std::vector<std::int64_t> from_parent;  // old id -> new id, or -1

  VertexSet lift(const VertexSet& local) const {
    std::vector<Vertex> out;
    out.reserve(local.size());
    for (Vertex v : local) out.push_back(to_parent[v]);
    return VertexSet(std::move(out));
  }
  std::vector<Vertex> lift(std::span<const Vertex> local) const {
    std::vector<Vertex> out;
    out.reserve(local.size());
    for (Vertex v : local) out.push_back(to_parent[v]);
    return out;
  }
  // Members of `parent_set` that survive, relabelled.
  VertexSet restrict(const VertexSet& parent_set) const {
    std::vector<Vertex> out;
    for (Vertex v : parent_set) {
      if (v < from_parent.size() && from_parent[v] >= 0) out.push_back(static_cast<Vertex>(from_parent[v]));
    }
    return VertexSet(std::move(out));
  }
};

// G[X], relabelled in increasing order of old id.
inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& x) {
  check_in_range(g, x, "induced_subgraph");
  InducedSubgraph out;
  out.to_parent = x.ids();
  out.from_parent.assign(g.vertex_count(), -1);
  for (std::size_t i = 0; i < x.size(); ++i) out.from_parent[x[i]] = static_cast<std::int64_t>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (Vertex w : g.neighbors(x[i])) {
      std::int64_t j = out.from_parent[w];
      if (j > static_cast<std::int64_t>(i)) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    }
  }
  out.graph = Graph::from_edges(x.size(), edges);
  return out;
}

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexMask& x) {
  return induced_subgraph(g, x.to_set());
}

// Components ordered by smallest member.
inline std::vector<VertexSet> connected_components(const Graph& g, const VertexMask* allowed = nullptr) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexSet> out;
  VertexMask seen(n);
  std::vector<Vertex> stack;
  for (std::size_t s = 0; s < n; ++s) {
    const auto sv = static_cast<Vertex>(s);
    if (seen.test(sv) || (allowed && !allowed->test(sv))) continue;
    std::vector<Vertex> comp{sv};
    seen.set(sv);
    stack.assign(1, sv);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (seen.test(w) || (allowed && !allowed->test(w))) continue;
        seen.set(w);
        comp.push_back(w);
        stack.push_back(w);
      }
    }
    out.emplace_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const Graph& g) {
  return g.vertex_count() <= 1 || connected_components(g).size() == 1;
}

// Is G[S] connected? (Empty S counts as not connected.)
inline bool induces_connected(const Graph& g, const VertexSet& s) {
  if (s.empty()) return false;
  VertexMask mask(g.vertex_count(), s);
  detail::Bfs bfs(g.vertex_count());
  Vertex src = s.front();
  bfs.run(g, std::span<const Vertex>(&src, 1), &mask);
  return bfs.touched().size() == s.size();
}

// BFS tree rooted at 0; a vertex's parent is the first dequeued vertex that
// reaches it. Edges returned canonical (u < v) and sorted.
inline std::vector<Edge> spanning_tree(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return {};
  std::vector<Edge> tree;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    for (Vertex w : g.neighbors(v)) {
      if (seen[w]) continue;
      seen[w] = 1;
      queue.push_back(w);
      tree.push_back(v < w ? Edge{v, w} : Edge{w, v});
    }
  }
  if (queue.size() != n) throw NotConnectedError("spanning_tree: graph is not connected");
  std::sort(tree.begin(), tree.end());
  return tree;
}

// Number of ordered pairs (x, y) in X x Y joined by an edge.
inline std::size_t edges_between(const Graph& g, const VertexSet& x, const VertexSet& y) {
  VertexMask in_y(g.vertex_count(), y);
  std::size_t count = 0;
  for (Vertex v : x) {
    for (Vertex w : g.neighbors(v)) count += in_y.test(w) ? 1 : 0;
  }
  return count;
}

// All-pairs BFS diameter; infinite if disconnected.
inline Distance diameter(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return Distance::finite(0);
  detail::Bfs bfs(n);
  std::size_t best = 0;
  for (std::size_t s = 0; s < n; ++s) {
    Vertex sv = static_cast<Vertex>(s);
    std::int32_t depth = bfs.run(g, std::span<const Vertex>(&sv, 1));
    if (bfs.touched().size() != n) return Distance::infinite();
    best = std::max(best, static_cast<std::size_t>(depth));
  }
  return Distance::finite(best);
}

}  // namespace minexp
