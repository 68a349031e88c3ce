#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "minexp/core.hpp"
#include "minexp/graph.hpp"

namespace minexp {

// Branch sets W_h for every pattern vertex h, as host vertex ids.
struct MinorModel {
  Graph pattern;
  std::vector<VertexSet> branch_sets;

  std::size_t max_branch_size() const {
    std::size_t m = 0;
    for (const auto& w : branch_sets) m = std::max(m, w.size());
    return m;
  }
};

enum class MinorClause { ok, shape, range, empty_set, disjointness, connectivity, edge };

inline const char* to_string(MinorClause c) {
  switch (c) {
    case MinorClause::ok: return "ok";
    case MinorClause::shape: return "shape";
    case MinorClause::range: return "range";
    case MinorClause::empty_set: return "empty-branch-set";
    case MinorClause::disjointness: return "disjointness";
    case MinorClause::connectivity: return "connectivity";
    case MinorClause::edge: return "edge-realization";
  }
  return "unknown";
}

struct MinorVerdict {
  bool valid = false;
  MinorClause clause = MinorClause::ok;
  std::string diagnostic;
};

// Standalone checker: deliberately uses its own DFS and adjacency scans rather
// than anything the embedding engines call, so a bug there cannot hide here.
inline MinorVerdict verify_minor(const Graph& host, const MinorModel& model) {
  auto fail = [](MinorClause c, std::string msg) { return MinorVerdict{false, c, std::move(msg)}; };
  const std::size_t n = host.vertex_count();
  const std::size_t k = model.pattern.vertex_count();
  if (model.branch_sets.size() != k) {
    return fail(MinorClause::shape, "pattern has " + std::to_string(k) + " vertices but model has " +
                                        std::to_string(model.branch_sets.size()) + " branch sets");
  }

  std::vector<std::int64_t> owner(n, -1);
  for (std::size_t h = 0; h < k; ++h) {
    const VertexSet& w = model.branch_sets[h];
    if (w.empty()) return fail(MinorClause::empty_set, "branch set " + std::to_string(h) + " is empty");
    for (Vertex v : w) {
      if (v >= n) {
        return fail(MinorClause::range, "branch set " + std::to_string(h) + " contains vertex " + std::to_string(v) +
                                            " outside the host (n=" + std::to_string(n) + ")");
      }
      if (owner[v] >= 0) {
        return fail(MinorClause::disjointness, "vertex " + std::to_string(v) + " lies in branch sets " +
                                                   std::to_string(owner[v]) + " and " + std::to_string(h));
      }
      owner[v] = static_cast<std::int64_t>(h);
    }
  }

  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack;
  for (std::size_t h = 0; h < k; ++h) {
    const VertexSet& w = model.branch_sets[h];
    std::size_t reached = 0;
    stack.assign(1, w.front());
    seen[w.front()] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      ++reached;
      for (Vertex x : host.neighbors(v)) {
        if (!seen[x] && owner[x] == static_cast<std::int64_t>(h)) {
          seen[x] = 1;
          stack.push_back(x);
        }
      }
    }
    if (reached != w.size()) {
      return fail(MinorClause::connectivity, "branch set " + std::to_string(h) + " induces a disconnected subgraph (" +
                                                 std::to_string(reached) + " of " + std::to_string(w.size()) +
                                                 " vertices reachable from " + std::to_string(w.front()) + ")");
    }
  }

  for (const Edge& e : model.pattern.edges()) {
    const VertexSet& a = model.branch_sets[e.u];
    bool found = false;
    for (Vertex v : a) {
      for (Vertex x : host.neighbors(v)) {
        if (owner[x] == static_cast<std::int64_t>(e.v)) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) {
      return fail(MinorClause::edge, "pattern edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                         "} has no host edge between its branch sets");
    }
  }
  return {true, MinorClause::ok, "valid"};
}

}  // namespace minexp
