#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "minexp/core.hpp"
#include "minexp/expansion.hpp"
#include "minexp/generators.hpp"
#include "minexp/graph.hpp"
#include "minexp/minor_model.hpp"

namespace minexp {

// 3 ln n / (alpha ln t): diameter bound for connected (alpha, t)-expanders.
inline double diameter_bound(double n, double alpha, double t) {
  if (!(t >= 2.0)) throw InputError("diameter_bound: need t >= 2");
  if (!(alpha > 0.0) || !(n >= 1.0)) throw InputError("diameter_bound: need alpha > 0 and n >= 1");
  return 3.0 * std::log(n) / (alpha * std::log(t));
}

// Largest m with 3m * 24 ln n / ln d < alpha^2 n / 512, d = t/4. Zero when no
// positive m qualifies.
inline std::size_t universal_capacity(std::size_t n, double alpha, double t) {
  const double d = t / 4.0;
  if (!(d > 1.0) || n < 2) return 0;
  const double per = 72.0 * std::log(static_cast<double>(n)) / std::log(d);
  const double rhs = alpha * alpha * static_cast<double>(n) / 512.0;
  double m = std::floor(rhs / per);
  if (m < 1.0) return 0;
  while (m >= 1.0 && !(m * per < rhs)) m -= 1.0;
  return static_cast<std::size_t>(m);
}

// ---------------------------------------------------------------------------
// Partition state shared by both engines: V(Gamma) = D + union W_h + U.
// ---------------------------------------------------------------------------

struct PartitionState {
  VertexSet dead;                              // D
  std::vector<std::optional<VertexSet>> placed;  // W_h for placed h, in Gamma ids
  VertexSet free;                              // U
  double beta = 0.0;
  double d = 0.0;
};

struct PartitionRules {
  double branch_bound = 0.0;                 // max |W_h|
  std::optional<std::size_t> exact_branch;   // complete engine: |W_i| == ell
  double dead_cap = 0.0;                     // alpha N / (32 d)
};

// Returns one message per violated property; empty means P1-P3 hold.
inline std::vector<std::string> check_partition_invariants(const Graph& gamma, const Graph& pattern,
                                                           const PartitionState& s, const PartitionRules& rules) {
  std::vector<std::string> bad;
  const std::size_t n = gamma.vertex_count();
  std::vector<int> hits(n, 0);
  for (Vertex v : s.dead) ++hits[v];
  for (Vertex v : s.free) ++hits[v];
  for (const auto& w : s.placed) {
    if (!w) continue;
    for (Vertex v : *w) ++hits[v];
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (hits[v] != 1) {
      bad.push_back("partition: vertex " + std::to_string(v) + " covered " + std::to_string(hits[v]) + " times");
      break;
    }
  }
  for (std::size_t h = 0; h < s.placed.size(); ++h) {
    const auto& w = s.placed[h];
    if (!w) continue;
    if (static_cast<double>(w->size()) > rules.branch_bound + 1e-9) {
      bad.push_back("P1: |W_" + std::to_string(h) + "| = " + std::to_string(w->size()) + " exceeds " +
                    std::to_string(rules.branch_bound));
    }
    if (rules.exact_branch && w->size() != *rules.exact_branch) {
      bad.push_back("P1: |W_" + std::to_string(h) + "| != " + std::to_string(*rules.exact_branch));
    }
    if (!induces_connected(gamma, *w)) bad.push_back("P1: W_" + std::to_string(h) + " is not connected");
  }
  for (const Edge& e : pattern.edges()) {
    if (e.u >= s.placed.size() || e.v >= s.placed.size()) continue;
    const auto& a = s.placed[e.u];
    const auto& b = s.placed[e.v];
    if (!a || !b) continue;
    if (edges_between(gamma, *a, *b) == 0) {
      bad.push_back("P2: no edge between W_" + std::to_string(e.u) + " and W_" + std::to_string(e.v));
    }
  }
  if (static_cast<double>(s.dead.size()) > rules.dead_cap + 1e-9) {
    bad.push_back("P3: |D| = " + std::to_string(s.dead.size()) + " exceeds " + std::to_string(rules.dead_cap));
  }
  if (!s.dead.empty()) {
    VertexSet nd = external_neighborhood(gamma, s.dead).set_intersection(s.free);
    if (!(static_cast<double>(nd.size()) < s.d * static_cast<double>(s.dead.size()) / 2.0)) {
      bad.push_back("P3: |N(D) cap U| = " + std::to_string(nd.size()) + " >= d|D|/2");
    }
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Cover connector.
// ---------------------------------------------------------------------------

struct CoverOptions {
  std::size_t max_retries = 64;
  bool check_preconditions = true;  // s <= n / ln n, qs >= 2n, q < n, t >= 2
};

struct CoverConnector {
  VertexSet t;          // T
  VertexSet sample;     // P
  double p = 0.0;
  double size_bound = 0.0;
  std::size_t retries = 0;  // rejected samples before the accepted one
};

// Connected set T hitting every U_i, built from a random sample P plus shortest
// paths: U_i -> P for every i, then a shortest-path tree from min(P) to P.
// A sample is kept only when |P| <= 2np and the U_i -> P paths add at most 2n/s
// vertices outside P.
inline CoverConnector efficient_cover(const Graph& g, const std::vector<VertexSet>& sets, const ExpansionParams& params,
                                      std::uint64_t seed, const CoverOptions& options = {}) {
  params.validate();
  const std::size_t n = g.vertex_count();
  if (sets.empty()) throw InputError("efficient_cover: need at least one set");
  std::size_t s = n;
  for (const auto& u : sets) {
    if (u.empty()) throw InputError("efficient_cover: empty target set");
    check_in_range(g, u, "efficient_cover");
    s = std::min(s, u.size());
  }
  if (!is_connected(g)) throw InputError("efficient_cover: host is not connected");
  const std::size_t q = sets.size();
  const double nd = static_cast<double>(n);
  const double qs = static_cast<double>(q) * static_cast<double>(s);
  if (!(params.t > 1.0)) throw InputError("efficient_cover: need t > 1");
  if (options.check_preconditions) {
    if (!(params.t >= 2.0)) throw InputError("efficient_cover: need t >= 2");
    if (q >= n) throw InputError("efficient_cover: need q < n");
    if (!(qs >= 2.0 * nd)) throw InputError("efficient_cover: need qs >= 2n");
    if (!(static_cast<double>(s) <= nd / std::log(nd))) throw InputError("efficient_cover: need s <= n / ln n");
  }
  if (!(qs > nd)) throw InputError("efficient_cover: qs <= n leaves the sampling probability non-positive");

  CoverConnector out;
  out.p = std::min(1.0, 4.0 * std::log(qs / nd) / (params.alpha * static_cast<double>(s)));
  out.size_bound = 25.0 / (params.alpha * params.alpha) * (nd / static_cast<double>(s)) * std::log(qs / nd) *
                   (std::log(nd) / std::log(params.t));

  detail::Bfs bfs(n);
  for (std::size_t attempt = 0; attempt < options.max_retries; ++attempt) {
    Rng rng(derive_seed(seed, "cover", attempt));
    VertexMask in_p(n);
    std::vector<Vertex> sample;
    for (std::size_t v = 0; v < n; ++v) {
      if (rng.bernoulli(out.p)) {
        in_p.set(static_cast<Vertex>(v));
        sample.push_back(static_cast<Vertex>(v));
      }
    }
    if (sample.empty() || !at_most(static_cast<double>(sample.size()), 2.0 * nd * out.p, 1.0)) continue;

    VertexMask in_t = in_p;
    std::size_t overhead = 0;
    const VertexSet* prev = nullptr;
    for (const auto& u : sets) {
      if (prev && *prev == u) continue;  // identical sets give identical paths
      prev = &u;
      for (Vertex v : detail::shortest_path_masked(g, bfs, u.ids(), in_p, nullptr)) {
        if (!in_t.test(v)) {
          in_t.set(v);
          ++overhead;
        }
      }
    }
    if (!at_most(static_cast<double>(overhead), 2.0 * nd, static_cast<double>(s))) continue;

    const Vertex root = sample.front();
    std::array<Vertex, 1> src{root};
    bfs.run(g, src);
    for (Vertex w : sample) {
      for (Vertex v : bfs.path_to(g, w)) in_t.set(v);
    }
    out.t = in_t.to_set();
    out.sample = VertexSet::from_sorted(std::move(sample));
    out.retries = attempt;
    return out;
  }
  throw RandomnessFailureError("efficient_cover: no admissible sample in " + std::to_string(options.max_retries) +
                               " attempts");
}

// ---------------------------------------------------------------------------
// Engines.
// ---------------------------------------------------------------------------

struct EmbedConfig {
  // Off: asymptotic hypotheses (t > 2^10/alpha, pattern size <= m, |D| cap,
  // cover preconditions) become warnings so the engines run on desk-scale hosts.
  bool enforce_hypotheses = true;
  ViolationFinder finder = default_finder();
  SparseCutOptions cut;
  std::uint64_t seed = 0;
  bool audit = false;  // check P1-P3 after every step
  std::function<void(const PartitionState&)> observer;
  std::size_t max_iterations = 10'000'000;

  // Complete engine.
  std::optional<double> cover_constant;  // K, default 25 / alpha^2
  std::optional<std::size_t> target;     // q, default alpha N / (target_divisor ell)
  double target_divisor = 64.0;
  bool fill = false;                     // ignore q and grow until a stop condition
  std::optional<double> cover_alpha;     // alpha handed to efficient_cover, default beta / 2
  std::size_t cover_retries = 64;
};

struct EmbeddingStats {
  std::size_t host_n = 0;
  std::size_t gamma_n = 0;  // N = |X|
  std::size_t iterations = 0;
  std::size_t placements = 0;
  std::size_t dead_repairs = 0;       // W moved to D after its free neighbourhood ran dry
  std::size_t component_repairs = 0;  // minor components of Gamma[U] moved to D
  std::size_t expansion_repairs = 0;  // violating subsets of Gamma[U] moved to D
  std::size_t dead_size = 0;
  std::size_t max_branch = 0;  // over the engine's own branch sets
  double beta = 0.0;
  double d = 0.0;
  double branch_bound = 0.0;
  double dead_cap = 0.0;
  std::size_t capacity_m = 0;
  std::size_t reduced_n = 0;
  std::size_t ell = 0;
  std::size_t target_q = 0;
  std::size_t s = 0;
  double cover_constant = 0.0;
};

struct UniversalEmbedding {
  MinorModel model;          // H in G
  MinorModel reduced_model;  // degree-3 reduction H' in G
  EmbeddingStats stats;
  std::vector<std::string> warnings;
};

struct CompleteEmbedding {
  std::size_t k = 0;
  MinorModel model;  // K_k in G
  EmbeddingStats stats;
  std::string stop_reason;
  std::vector<std::string> warnings;
};

namespace detail {

// Owner bookkeeping for V(Gamma) = D + W + U.
class PartitionBook {
 public:
  static constexpr std::int64_t kFree = -1;
  static constexpr std::int64_t kDead = -2;

  explicit PartitionBook(const Graph& gamma)
      : gamma_(gamma), owner_(gamma.vertex_count(), kFree), free_(gamma.vertex_count(), true),
        target_(gamma.vertex_count()), bfs_(gamma.vertex_count()), free_count_(gamma.vertex_count()) {}

  const VertexMask& free_mask() const { return free_; }
  std::size_t free_count() const { return free_count_; }
  std::size_t dead_count() const { return dead_count_; }

  void kill(const std::vector<Vertex>& vs) {
    for (Vertex v : vs) {
      if (owner_[v] == kDead) continue;
      if (owner_[v] == kFree) {
        free_.reset(v);
        --free_count_;
      }
      owner_[v] = kDead;
      ++dead_count_;
    }
  }

  void assign(const std::vector<Vertex>& vs, std::int64_t id) {
    for (Vertex v : vs) {
      if (owner_[v] != kFree) throw InvariantError("assigning a vertex that is not free");
      owner_[v] = id;
      free_.reset(v);
      --free_count_;
    }
  }

  std::vector<Vertex> free_neighbors(const std::vector<Vertex>& w) const {
    std::vector<Vertex> out;
    for (Vertex v : w) {
      for (Vertex x : gamma_.neighbors(v)) {
        if (owner_[x] == kFree) out.push_back(x);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::optional<Vertex> smallest_free_neighbor(const std::vector<Vertex>& w) const {
    std::optional<Vertex> best;
    for (Vertex v : w) {
      for (Vertex x : gamma_.neighbors(v)) {
        if (owner_[x] == kFree && (!best || x < *best)) best = x;
      }
    }
    return best;
  }

  // Shortest a -> b path inside Gamma[U]; empty when none exists.
  std::vector<Vertex> free_path(Vertex a, Vertex b) {
    if (a == b) return {a};
    target_.set(b);
    std::array<Vertex, 1> src{a};
    std::int32_t d = bfs_.run(gamma_, src, &free_, &target_);
    target_.reset(b);
    if (d < 0) return {};
    return bfs_.path_to(gamma_, b, &free_);
  }

  // Vertices of Gamma[U] outside its largest component (ties: the component
  // with the smallest vertex is kept).
  std::vector<Vertex> outside_largest_free_component() const {
    std::vector<VertexSet> comps = connected_components(gamma_, &free_);
    std::size_t keep = 0;
    for (std::size_t i = 1; i < comps.size(); ++i) {
      if (comps[i].size() > comps[keep].size()) keep = i;
    }
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (i != keep) out.insert(out.end(), comps[i].begin(), comps[i].end());
    }
    return out;
  }

  std::size_t free_component_count() const { return connected_components(gamma_, &free_).size(); }

  PartitionState snapshot(const std::vector<std::vector<Vertex>>& branches, const std::vector<char>& placed) const {
    PartitionState s;
    std::vector<Vertex> dead;
    for (std::size_t v = 0; v < owner_.size(); ++v) {
      if (owner_[v] == kDead) dead.push_back(static_cast<Vertex>(v));
    }
    s.dead = VertexSet::from_sorted(std::move(dead));
    s.free = free_.to_set();
    s.placed.resize(branches.size());
    for (std::size_t h = 0; h < branches.size(); ++h) {
      if (placed[h]) s.placed[h] = VertexSet(branches[h]);
    }
    return s;
  }

 private:
  const Graph& gamma_;
  std::vector<std::int64_t> owner_;
  VertexMask free_;
  VertexMask target_;
  Bfs bfs_;
  std::size_t free_count_ = 0;
  std::size_t dead_count_ = 0;
};

class WarningLog {
 public:
  explicit WarningLog(std::vector<std::string>& sink) : sink_(sink) {}
  void once(const std::string& key, const std::string& msg) {
    if (keys_.insert(key).second) sink_.push_back(msg);
  }

 private:
  std::vector<std::string>& sink_;
  std::set<std::string> keys_;
};

// BFS order over all components, each started at its smallest unvisited vertex.
inline std::vector<Vertex> bfs_order(const Graph& h) {
  const std::size_t n = h.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::size_t head = order.size();
    order.push_back(static_cast<Vertex>(s));
    while (head < order.size()) {
      Vertex v = order[head++];
      for (Vertex w : h.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          order.push_back(w);
        }
      }
    }
  }
  return order;
}

struct Prepared {
  RobustSubgraph robust;
  InducedSubgraph gamma;
};

inline Prepared prepare_host(const Graph& g, double alpha, double t, const EmbedConfig& config,
                             std::vector<std::string>& warnings) {
  RobustOptions ro;
  ro.enforce_hypotheses = config.enforce_hypotheses;
  ro.cut = config.cut;
  Prepared p{robust_partition(g, alpha, t, config.finder, ro), {}};
  warnings.insert(warnings.end(), p.robust.warnings.begin(), p.robust.warnings.end());
  p.gamma = induced_subgraph(g, p.robust.x);
  return p;
}

}  // namespace detail

// Embeds H as a minor of G: H is replaced by its degree-3 reduction H', the
// host by the robust subgraph Gamma, and H' is placed vertex by vertex in BFS
// order, each new branch set being the union of shortest paths in Gamma[U]
// between free neighbours of its placed neighbours' branch sets.
inline UniversalEmbedding embed_universal(const Graph& g, double alpha, double t, const Graph& h,
                                          const EmbedConfig& config = {}) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("embed_universal: need 0 < alpha < 1");
  if (!(t > 4.0)) throw InputError("embed_universal: need t > 4 so that d = t/4 > 1");
  UniversalEmbedding out;
  detail::WarningLog warn(out.warnings);
  EmbeddingStats& st = out.stats;
  st.host_n = g.vertex_count();
  st.capacity_m = universal_capacity(g.vertex_count(), alpha, t);
  const std::size_t hsize = std::max(h.vertex_count(), h.edge_count());
  if (hsize > st.capacity_m) {
    const std::string msg = "embed_universal: pattern size " + std::to_string(hsize) + " exceeds capacity m = " +
                            std::to_string(st.capacity_m);
    if (config.enforce_hypotheses) throw PatternTooLargeError(msg);
    warn.once("capacity", msg);
  }

  Degree3Reduction red = degree3_reduce(h);
  const Graph& hp = red.graph;
  st.reduced_n = hp.vertex_count();
  out.model.pattern = h;
  out.reduced_model.pattern = hp;
  if (h.vertex_count() == 0) return out;

  detail::Prepared prep = detail::prepare_host(g, alpha, t, config, out.warnings);
  const Graph& gamma = prep.gamma.graph;
  const std::size_t big_n = gamma.vertex_count();
  st.gamma_n = big_n;
  st.beta = prep.robust.beta;
  st.d = t / 4.0;
  st.branch_bound = 24.0 * std::log(static_cast<double>(g.vertex_count())) / (st.beta * std::log(st.d));
  st.dead_cap = alpha * static_cast<double>(big_n) / (32.0 * st.d);
  const PartitionRules rules{st.branch_bound, std::nullopt, st.dead_cap};

  detail::PartitionBook book(gamma);
  const std::size_t hn = hp.vertex_count();
  std::vector<Vertex> order = detail::bfs_order(hp);
  std::vector<std::size_t> rank(hn);
  for (std::size_t i = 0; i < hn; ++i) rank[order[i]] = i;
  std::set<std::size_t> pending;
  for (std::size_t i = 0; i < hn; ++i) pending.insert(i);
  std::vector<std::vector<Vertex>> branch(hn);
  std::vector<char> placed(hn, 0);

  auto to_dead = [&](const std::vector<Vertex>& vs, const char* why) {
    book.kill(vs);
    if (static_cast<double>(book.dead_count()) > st.dead_cap) {
      const std::string msg = std::string("embed_universal: |D| = ") + std::to_string(book.dead_count()) +
                              " exceeds the cap " + std::to_string(st.dead_cap) + " (" + why + ")";
      if (config.enforce_hypotheses) {
        throw EmbeddingFailedError(msg + "; placed " + std::to_string(hn - pending.size()) + " of " +
                                   std::to_string(hn) + ", |U| = " + std::to_string(book.free_count()));
      }
      warn.once("dead-cap", msg);
    }
  };

  auto audit = [&]() {
    if (!config.audit && !config.observer) return;
    PartitionState s = book.snapshot(branch, placed);
    s.beta = st.beta;
    s.d = st.d;
    if (config.observer) config.observer(s);
    if (!config.audit) return;
    for (const std::string& v : check_partition_invariants(gamma, hp, s, rules)) {
      if (config.enforce_hypotheses) throw InvariantError("embed_universal audit: " + v);
      warn.once(v.substr(0, 2), "embed_universal audit: " + v);
    }
  };

  while (!pending.empty()) {
    if (++st.iterations > config.max_iterations) throw EmbeddingFailedError("embed_universal: iteration limit");
    const Vertex hv = order[*pending.begin()];
    std::vector<Vertex> nbrs;
    for (Vertex x : hp.neighbors(hv)) {
      if (placed[x]) nbrs.push_back(x);
    }

    std::vector<Vertex> w;
    bool repaired = false;
    if (nbrs.empty()) {
      const std::size_t v = book.free_mask().first();
      if (v >= big_n) throw EmbeddingFailedError("embed_universal: free set exhausted");
      w.push_back(static_cast<Vertex>(v));
    } else {
      std::vector<Vertex> anchors;
      for (Vertex x : nbrs) {
        auto v = book.smallest_free_neighbor(branch[x]);
        if (!v) {
          to_dead(branch[x], "dead-end branch set");
          branch[x].clear();
          placed[x] = 0;
          pending.insert(rank[x]);
          ++st.dead_repairs;
          repaired = true;
          break;
        }
        anchors.push_back(*v);
      }
      for (std::size_t i = 1; !repaired && i < anchors.size(); ++i) {
        std::vector<Vertex> path = book.free_path(anchors[i - 1], anchors[i]);
        if (path.empty()) {
          to_dead(book.outside_largest_free_component(), "disconnected free set");
          ++st.component_repairs;
          repaired = true;
          break;
        }
        w.insert(w.end(), path.begin(), path.end());
      }
      if (!repaired) {
        w.push_back(anchors.front());
        std::sort(w.begin(), w.end());
        w.erase(std::unique(w.begin(), w.end()), w.end());
      }
    }
    if (!repaired && static_cast<double>(w.size()) > st.branch_bound) {
      // An over-long path means Gamma[U] stopped expanding; look for the culprit.
      InducedSubgraph fu = induced_subgraph(gamma, book.free_mask());
      std::optional<VertexSet> bad;
      if (st.d / 2.0 >= 1.0 && st.beta / 2.0 < 1.0) {
        bad = config.finder(fu.graph, ExpansionParams{st.beta / 2.0, st.d / 2.0}).witness;
      }
      if (bad) {
        to_dead(fu.lift(*bad).ids(), "non-expanding free set");
        ++st.expansion_repairs;
        repaired = true;
      } else {
        const std::string msg = "embed_universal: branch set of size " + std::to_string(w.size()) +
                                " exceeds the bound " + std::to_string(st.branch_bound);
        if (config.enforce_hypotheses) throw InvariantError(msg);
        warn.once("P1-size", msg);
      }
    }
    if (repaired) {
      audit();
      continue;
    }
    book.assign(w, static_cast<std::int64_t>(hv));
    branch[hv] = std::move(w);
    placed[hv] = 1;
    pending.erase(rank[hv]);
    ++st.placements;
    audit();
  }

  st.dead_size = book.dead_count();
  out.reduced_model.branch_sets.resize(hn);
  for (std::size_t x = 0; x < hn; ++x) {
    out.reduced_model.branch_sets[x] = prep.gamma.lift(VertexSet(branch[x]));
    st.max_branch = std::max(st.max_branch, branch[x].size());
  }
  std::vector<VertexSet> classes = red.classes(h.vertex_count());
  out.model.branch_sets.resize(h.vertex_count());
  for (std::size_t v = 0; v < h.vertex_count(); ++v) {
    VertexSet acc;
    for (Vertex c : classes[v]) acc = acc.set_union(out.reduced_model.branch_sets[c]);
    out.model.branch_sets[v] = std::move(acc);
  }
  MinorVerdict verdict = verify_minor(g, out.model);
  if (!verdict.valid) throw InvariantError("embed_universal produced an invalid model: " + verdict.diagnostic);
  return out;
}

// Grows a complete minor: each new branch set is a cover connector of the free
// neighbourhoods of all previous branch sets inside Gamma[U], padded to exactly
// ell vertices.
inline CompleteEmbedding embed_complete(const Graph& g, double alpha, double t, const EmbedConfig& config = {}) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("embed_complete: need 0 < alpha < 1");
  if (!(t > 4.0)) throw InputError("embed_complete: need t > 4 so that d = t/4 > 1");
  CompleteEmbedding out;
  detail::WarningLog warn(out.warnings);
  EmbeddingStats& st = out.stats;
  st.host_n = g.vertex_count();
  if (t > std::sqrt(static_cast<double>(g.vertex_count()))) {
    warn.once("sqrt", "embed_complete: t exceeds sqrt(n)");
  }

  detail::Prepared prep = detail::prepare_host(g, alpha, t, config, out.warnings);
  const Graph& gamma = prep.gamma.graph;
  const std::size_t big_n = gamma.vertex_count();
  const double nn = static_cast<double>(big_n);
  st.gamma_n = big_n;
  st.beta = prep.robust.beta;
  st.d = t / 4.0;
  st.cover_constant = config.cover_constant.value_or(25.0 / (alpha * alpha));
  st.ell = std::max<std::size_t>(
      1, ceil_ratio(std::sqrt(2.0 * st.cover_constant * nn * std::log(std::max(nn, 2.0)) / st.d), 1.0));
  if (!(config.target_divisor > 0.0)) throw InputError("embed_complete: target_divisor must be positive");
  st.target_q = config.fill ? std::numeric_limits<std::size_t>::max()
                            : config.target.value_or(floor_ratio(alpha * nn, config.target_divisor * static_cast<double>(st.ell)));
  st.s = std::max<std::size_t>(1, floor_ratio(st.d * static_cast<double>(st.ell), 2.0));
  st.branch_bound = static_cast<double>(st.ell);
  st.dead_cap = alpha * nn / (32.0 * st.d);
  const PartitionRules rules{st.branch_bound, st.ell, st.dead_cap};
  const double cover_alpha = config.cover_alpha.value_or(st.beta / 2.0);

  detail::PartitionBook book(gamma);
  std::vector<std::vector<Vertex>> branch;
  std::int64_t next_id = 0;

  auto to_dead = [&](const std::vector<Vertex>& vs, const char* why) {
    book.kill(vs);
    if (static_cast<double>(book.dead_count()) > st.dead_cap) {
      const std::string msg = std::string("embed_complete: |D| = ") + std::to_string(book.dead_count()) +
                              " exceeds the cap " + std::to_string(st.dead_cap) + " (" + why + ")";
      if (config.enforce_hypotheses) throw EmbeddingFailedError(msg + "; k = " + std::to_string(branch.size()));
      warn.once("dead-cap", msg);
    }
  };

  auto audit = [&]() {
    if (!config.audit && !config.observer) return;
    std::vector<char> placed(branch.size(), 1);
    PartitionState s = book.snapshot(branch, placed);
    s.beta = st.beta;
    s.d = st.d;
    if (config.observer) config.observer(s);
    if (!config.audit) return;
    for (const std::string& v : check_partition_invariants(gamma, complete_graph(branch.size()), s, rules)) {
      if (config.enforce_hypotheses) throw InvariantError("embed_complete audit: " + v);
      warn.once(v.substr(0, 2), "embed_complete audit: " + v);
    }
  };

  out.stop_reason = "reached target";
  while (branch.size() < st.target_q) {
    if (++st.iterations > config.max_iterations) throw EmbeddingFailedError("embed_complete: iteration limit");

    std::vector<std::vector<Vertex>> targets;
    bool repaired = false;
    bool exhausted = false;
    for (std::size_t i = 0; i < branch.size(); ++i) {
      std::vector<Vertex> ui = book.free_neighbors(branch[i]);
      if (ui.size() < st.s && config.fill) {
        // Past the target the repair would only trade branch sets for dead vertices.
        exhausted = true;
        break;
      }
      if (ui.size() < st.s) {
        to_dead(branch[i], "branch set with a small free neighbourhood");
        branch.erase(branch.begin() + static_cast<std::ptrdiff_t>(i));
        ++st.dead_repairs;
        repaired = true;
        break;
      }
      targets.push_back(std::move(ui));
    }
    if (exhausted) {
      out.stop_reason = "free neighbourhood of a branch set fell below s";
      break;
    }
    if (repaired) {
      audit();
      continue;
    }
    if (book.free_count() < std::max(st.ell, st.s)) {
      out.stop_reason = "free set smaller than a branch set";
      break;
    }
    if (book.free_component_count() > 1) {
      to_dead(book.outside_largest_free_component(), "disconnected free set");
      ++st.component_repairs;
      audit();
      continue;
    }

    InducedSubgraph fu = induced_subgraph(gamma, book.free_mask());
    const std::size_t un = fu.graph.vertex_count();
    std::vector<VertexSet> sets;
    for (auto& ui : targets) sets.push_back(fu.restrict(VertexSet::from_sorted(std::move(ui))));
    // Padding: copies of the s smallest free vertices, enough of them that
    // qs >= 2|U| as the cover requires.
    std::size_t total = ceil_ratio(2.0 * static_cast<double>(un), static_cast<double>(st.s));
    if (!config.fill) total = std::max(total, st.target_q);
    total = std::max(total, sets.size() + 1);
    total = std::min(total, std::max(un - 1, sets.size() + 1));
    const VertexSet pad = VertexSet::range(st.s);
    while (sets.size() < total) sets.push_back(pad);

    CoverConnector cover;
    try {
      CoverOptions co;
      co.max_retries = config.cover_retries;
      co.check_preconditions = config.enforce_hypotheses;
      cover = efficient_cover(fu.graph, sets, ExpansionParams{std::min(cover_alpha, 0.999999), st.d / 2.0},
                              derive_seed(config.seed, "complete", st.iterations), co);
    } catch (const RandomnessFailureError& e) {
      out.stop_reason = std::string("cover failed: ") + e.what();
      break;
    } catch (const InputError& e) {
      out.stop_reason = std::string("cover preconditions: ") + e.what();
      break;
    }
    if (cover.t.size() > st.ell) {
      out.stop_reason = "cover of size " + std::to_string(cover.t.size()) + " exceeds ell = " + std::to_string(st.ell);
      break;
    }

    // Grow T inside Gamma[U] to exactly ell vertices in BFS order.
    std::vector<Vertex> grown(cover.t.begin(), cover.t.end());
    if (grown.size() < st.ell) {
      detail::Bfs bfs(un);
      bfs.run(fu.graph, cover.t.ids());
      std::vector<Vertex> layer_order = bfs.touched();
      std::stable_sort(layer_order.begin(), layer_order.end(),
                       [&](Vertex a, Vertex b) { return bfs.dist(a) < bfs.dist(b); });
      for (Vertex v : layer_order) {
        if (grown.size() >= st.ell) break;
        if (bfs.dist(v) > 0) grown.push_back(v);
      }
    }
    if (grown.size() != st.ell) {
      out.stop_reason = "free set too small to extend the connector";
      break;
    }
    std::vector<Vertex> w = fu.lift(std::span<const Vertex>(grown));
    std::sort(w.begin(), w.end());
    book.assign(w, next_id++);
    branch.push_back(std::move(w));
    ++st.placements;
    audit();
  }

  st.dead_size = book.dead_count();
  out.k = branch.size();
  out.model.pattern = complete_graph(out.k);
  for (const auto& w : branch) {
    out.model.branch_sets.push_back(prep.gamma.lift(VertexSet(w)));
    st.max_branch = std::max(st.max_branch, w.size());
  }
  MinorVerdict verdict = verify_minor(g, out.model);
  if (!verdict.valid) throw InvariantError("embed_complete produced an invalid model: " + verdict.diagnostic);
  return out;
}

}  // namespace minexp
