#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "minexp/core.hpp"
#include "minexp/graph.hpp"
#include "minexp/minor_model.hpp"

namespace minexp {

struct UniversalityThreshold {
  double m_real = 0.0;   // 6 n ln(d+2) / ln n
  std::size_t m = 0;     // floor, rounded down to even
  bool trivial = false;  // d + 2 > n^(1/6): then m > n and the statement is vacuous
};

inline UniversalityThreshold universality_threshold(double n, double d) {
  if (!(n >= 3.0)) throw InputError("universality_threshold: need n >= 3");
  if (!(d > 0.0)) throw InputError("universality_threshold: need d > 0");
  UniversalityThreshold out;
  out.m_real = 6.0 * n * std::log(d + 2.0) / std::log(n);
  if (!(out.m_real < 9.0e15)) throw InputError("universality_threshold: m beyond exact integer range");
  // Nudge by a relative epsilon so e.g. n = e^6, d = e-2 gives floor(e^6) and
  // not floor(e^6) - 1 from rounding in the logs.
  auto m = static_cast<std::size_t>(std::floor(out.m_real * (1.0 + kRelSlack)));
  out.m = m - (m % 2);
  out.trivial = d + 2.0 > std::pow(n, 1.0 / 6.0);
  return out;
}

struct CountingReport {
  double n = 0.0;
  double d = 0.0;
  std::size_t m = 0;
  double log_minor_upper = 0.0;  // ln of the bound on minors with m/2 vertices and m edges
  double log_graph_lower = 0.0;  // ln of the bound on non-isomorphic such graphs
  double separation = 0.0;       // log_graph_lower - log_minor_upper
  bool m_exceeds_n = false;
};

// Both sides of the counting argument in log space. The analytic overestimates
// of the binomials are evaluated, not the binomials themselves.
inline CountingReport count_bounds(double n, double d, std::size_t m) {
  if (m < 2 || m % 2 != 0) throw InputError("count_bounds: m must be even and >= 2");
  if (!(n >= 2.0) || !(d >= 0.0)) throw InputError("count_bounds: need n >= 2 and d >= 0");
  CountingReport r;
  r.n = n;
  r.d = d;
  r.m = m;
  const double md = static_cast<double>(m);
  const double l = std::log(d + 2.0);
  r.log_minor_upper = n * l + md / 2.0 * std::log(2.0 * std::numbers::e * n / md) + md * std::log(2.0 * (d + 2.0) * n / md);
  r.log_graph_lower = md / 2.0 * std::log(md / 256.0);
  r.separation = r.log_graph_lower - r.log_minor_upper;
  r.m_exceeds_n = md > n;
  return r;
}

// Separation at (n, d, universality_threshold(n, d).m).
inline CountingReport count_bounds_at_threshold(double n, double d) {
  return count_bounds(n, d, universality_threshold(n, d).m);
}

// Smallest n in [lo, hi] (to relative precision `rel`) with positive
// separation at the threshold m, assuming the sign changes once.
inline std::optional<double> separation_crossover(double d, double lo, double hi, double rel = 1e-3) {
  auto positive = [&](double n) { return count_bounds_at_threshold(n, d).separation > 0.0; };
  if (!positive(hi)) return std::nullopt;
  if (positive(lo)) return lo;
  while (hi / lo > 1.0 + rel) {
    double mid = std::sqrt(lo * hi);
    if (positive(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------
// Exact minor containment on tiny graphs.
// ---------------------------------------------------------------------------

struct MinorSearchLimits {
  std::size_t max_pattern = 8;
  std::size_t max_host = 16;
};

namespace detail {

using Mask = std::uint64_t;

class ExactMinorSearch {
 public:
  ExactMinorSearch(const Graph& g, const Graph& h, bool partition_mode)
      : g_(g), h_(h), n_(g.vertex_count()), k_(h.vertex_count()), partition_(partition_mode) {
    adj_.assign(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) {
      for (Vertex w : g.neighbors(static_cast<Vertex>(v))) adj_[v] |= Mask{1} << w;
    }
    order_ = bfs_order_all();
    // Labels with identical neighbourhoods (ignoring each other) are
    // interchangeable; such a label may be opened only after its predecessor.
    prev_twin_.assign(k_, -1);
    for (std::size_t b = 0; b < k_; ++b) {
      for (std::size_t a = b; a-- > 0;) {
        if (twins(a, b)) {
          prev_twin_[b] = static_cast<int>(a);
          break;
        }
      }
    }
    members_.assign(k_, 0);
    hedges_ = h.edges();
  }

  std::optional<std::vector<Mask>> run() {
    if (k_ == 0) return std::vector<Mask>{};
    if (k_ > n_) return std::nullopt;
    if (dfs(0, ~Mask{0} >> (64 - n_))) return members_;
    return std::nullopt;
  }

 private:
  bool twins(std::size_t a, std::size_t b) const {
    for (std::size_t x = 0; x < k_; ++x) {
      if (x == a || x == b) continue;
      if (h_.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(x)) !=
          h_.has_edge(static_cast<Vertex>(b), static_cast<Vertex>(x))) {
        return false;
      }
    }
    return true;
  }

  std::vector<Vertex> bfs_order_all() const {
    std::vector<Vertex> order;
    std::vector<char> seen(n_, 0);
    for (std::size_t s = 0; s < n_; ++s) {
      if (seen[s]) continue;
      seen[s] = 1;
      std::size_t head = order.size();
      order.push_back(static_cast<Vertex>(s));
      while (head < order.size()) {
        Vertex v = order[head++];
        for (Vertex w : g_.neighbors(v)) {
          if (!seen[w]) {
            seen[w] = 1;
            order.push_back(w);
          }
        }
      }
    }
    return order;
  }

  Mask neighborhood(Mask s) const {
    Mask out = 0;
    for (Mask x = s; x; x &= x - 1) out |= adj_[std::countr_zero(x)];
    return out & ~s;
  }

  // Component of `s` containing its lowest vertex.
  Mask component(Mask s) const {
    Mask comp = s & (~s + 1);
    while (true) {
      Mask grown = comp | (neighborhood(comp) & s);
      if (grown == comp) return comp;
      comp = grown;
    }
  }

  bool feasible(Mask undecided) const {
    std::size_t empty_labels = 0;
    for (std::size_t l = 0; l < k_; ++l) {
      const Mask m = members_[l];
      if (!m) {
        ++empty_labels;
        continue;
      }
      // every component but one must still be able to grow
      Mask rest = m;
      std::size_t closed_parts = 0;
      std::size_t parts = 0;
      while (rest) {
        Mask c = component(rest);
        rest &= ~c;
        ++parts;
        if (!(neighborhood(c) & undecided)) ++closed_parts;
      }
      if (closed_parts > 0 && parts > 1) return false;
    }
    if (empty_labels > static_cast<std::size_t>(std::popcount(undecided))) return false;
    for (const Edge& e : hedges_) {
      const Mask a = members_[e.u];
      const Mask b = members_[e.v];
      if (neighborhood(a) & b) continue;
      if (a && !(neighborhood(a) & undecided)) return false;
      if (b && !(neighborhood(b) & undecided)) return false;
    }
    return true;
  }

  bool dfs(std::size_t i, Mask undecided) {
    if (i == order_.size()) {
      for (std::size_t l = 0; l < k_; ++l) {
        if (!members_[l] || component(members_[l]) != members_[l]) return false;
      }
      for (const Edge& e : hedges_) {
        if (!(neighborhood(members_[e.u]) & members_[e.v])) return false;
      }
      return true;
    }
    const Vertex v = order_[i];
    const Mask bit = Mask{1} << v;
    const Mask rest = undecided & ~bit;
    for (std::size_t l = 0; l < k_; ++l) {
      if (!members_[l] && prev_twin_[l] >= 0 && !members_[static_cast<std::size_t>(prev_twin_[l])]) continue;
      members_[l] |= bit;
      if (feasible(rest) && dfs(i + 1, rest)) return true;
      members_[l] &= ~bit;
    }
    if (!partition_ && feasible(rest) && dfs(i + 1, rest)) return true;
    return false;
  }

  const Graph& g_;
  const Graph& h_;
  std::size_t n_;
  std::size_t k_;
  bool partition_;
  std::vector<Mask> adj_;
  std::vector<Vertex> order_;
  std::vector<int> prev_twin_;
  std::vector<Mask> members_;
  std::vector<Edge> hedges_;
};

}  // namespace detail

// Exact search for a minor model of H in G. When both graphs are connected the
// branch sets may be assumed to partition V(G) (leftover vertices can always be
// absorbed by an adjacent branch set), which shrinks the search considerably.
inline std::optional<MinorModel> find_minor_exact(const Graph& g, const Graph& h, const MinorSearchLimits& limits = {}) {
  if (h.vertex_count() > limits.max_pattern || g.vertex_count() > limits.max_host || g.vertex_count() > 64) {
    throw TooLargeError("exact minor search: pattern has " + std::to_string(h.vertex_count()) + " vertices, host " +
                        std::to_string(g.vertex_count()) + " (limits " + std::to_string(limits.max_pattern) + "/" +
                        std::to_string(limits.max_host) + ")");
  }
  const bool partition = h.vertex_count() > 0 && is_connected(h) && is_connected(g);
  detail::ExactMinorSearch search(g, h, partition);
  auto found = search.run();
  if (!found) return std::nullopt;
  MinorModel model;
  model.pattern = h;
  for (detail::Mask m : *found) {
    std::vector<Vertex> ids;
    for (detail::Mask x = m; x; x &= x - 1) ids.push_back(static_cast<Vertex>(std::countr_zero(x)));
    model.branch_sets.push_back(VertexSet::from_sorted(std::move(ids)));
  }
  return model;
}

inline bool is_minor_exact(const Graph& g, const Graph& h, const MinorSearchLimits& limits = {}) {
  return find_minor_exact(g, h, limits).has_value();
}

// ---------------------------------------------------------------------------
// Isomorphism classes of tiny graphs.
// ---------------------------------------------------------------------------

// Lexicographically smallest upper-triangle adjacency string over all vertex
// orders that list vertices by non-increasing degree.
inline std::string canonical_form(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 10) throw TooLargeError("canonical_form: at most 10 vertices");
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::sort(perm.begin(), perm.end(), [&](Vertex a, Vertex b) {
    return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b;
  });
  // permute only within blocks of equal degree
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && g.degree(perm[j]) == g.degree(perm[i])) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  std::string best;
  std::string cur(n * (n - (n ? 1 : 0)) / 2, '0');
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      std::size_t pos = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) cur[pos++] = g.has_edge(perm[i], perm[j]) ? '1' : '0';
      }
      if (best.empty() || cur < best) best = cur;
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(perm.begin() + static_cast<std::ptrdiff_t>(lo), perm.begin() + static_cast<std::ptrdiff_t>(hi));
    do {
      rec(b + 1);
    } while (std::next_permutation(perm.begin() + static_cast<std::ptrdiff_t>(lo),
                                   perm.begin() + static_cast<std::ptrdiff_t>(hi)));
  };
  rec(0);
  return std::to_string(n) + ":" + best;
}

// One representative per isomorphism class of graphs with k vertices and e
// edges, in order of first appearance among edge subsets listed
// lexicographically over the pairs (0,1), (0,2), ..., (k-2,k-1).
inline std::vector<Graph> enumerate_graphs(std::size_t k, std::size_t e, double max_subsets = 5e6) {
  if (k > 8) throw TooLargeError("enumerate_graphs: at most 8 vertices");
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < k; ++u) {
    for (Vertex v = u + 1; v < k; ++v) pairs.push_back({u, v});
  }
  if (e > pairs.size()) return {};
  double total = 1.0;
  for (std::size_t i = 0; i < e; ++i) total = total * static_cast<double>(pairs.size() - i) / static_cast<double>(i + 1);
  if (total > max_subsets) {
    throw TooLargeError("enumerate_graphs: " + std::to_string(total) + " edge subsets exceed the limit");
  }
  std::vector<Graph> out;
  std::set<std::string> seen;
  std::vector<std::size_t> idx(e);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<Edge> chosen(e);
  while (true) {
    for (std::size_t i = 0; i < e; ++i) chosen[i] = pairs[idx[i]];
    Graph g = Graph::from_edges(k, chosen);
    if (seen.insert(canonical_form(g)).second) out.push_back(std::move(g));
    std::size_t i = e;
    while (i > 0 && idx[i - 1] == pairs.size() - e + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < e; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// First graph (in enumeration order) with the given size that is not a minor of g.
inline std::optional<Graph> find_non_minor(const Graph& g, std::size_t k_vertices, std::size_t k_edges,
                                           const MinorSearchLimits& limits = {}) {
  for (Graph& h : enumerate_graphs(k_vertices, k_edges)) {
    if (!is_minor_exact(g, h, limits)) return std::move(h);
  }
  return std::nullopt;
}

}  // namespace minexp
