#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "minexp/core.hpp"
#include "minexp/counting.hpp"
#include "minexp/expansion.hpp"
#include "minexp/generators.hpp"
#include "minexp/graph.hpp"
#include "minexp/minor_model.hpp"

namespace minexp {

using Json = nlohmann::json;

inline Json to_json(const VertexSet& s) { return Json(s.ids()); }

inline Json to_json(const ExpansionCertificate& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["witness"] = c.witness ? to_json(*c.witness) : Json(nullptr);
  j["alpha"] = c.params.alpha;
  j["t"] = c.params.t;
  j["cap"] = c.checked_size_cap;
  if (c.verdict == Verdict::passed_heuristic) j["note"] = "no violating set found; this is not a certificate";
  return j;
}

// ---------------------------------------------------------------------------
// Generator specs: {"family":"d-out","n":2000,"d":4,"seed":7}. The explicit
// family takes a "name" (complete, cycle, path, grid, petersen).
// ---------------------------------------------------------------------------

struct GenSpec {
  std::string family;
  std::size_t n = 0;
  std::size_t d = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string name;   // explicit family
  std::size_t rows = 0;
  std::size_t cols = 0;
};

inline GenSpec gen_spec_from_json(const Json& j) {
  GenSpec s;
  try {
    s.family = j.at("family").get<std::string>();
    s.n = j.value("n", std::size_t{0});
    s.d = j.value("d", std::size_t{0});
    s.p = j.value("p", 0.0);
    s.seed = j.value("seed", std::uint64_t{0});
    s.name = j.value("name", std::string{});
    s.rows = j.value("rows", std::size_t{0});
    s.cols = j.value("cols", std::size_t{0});
  } catch (const Json::exception& e) {
    throw InputError(std::string("generator spec: ") + e.what());
  }
  return s;
}

inline Json to_json(const GenSpec& s) {
  Json j;
  j["family"] = s.family;
  if (s.family == "explicit") {
    j["name"] = s.name;
    if (s.name == "grid") {
      j["rows"] = s.rows;
      j["cols"] = s.cols;
    } else if (s.name != "petersen") {
      j["n"] = s.n;
    }
    return j;
  }
  j["n"] = s.n;
  if (s.family == "gnp") j["p"] = s.p; else j["d"] = s.d;
  j["seed"] = s.seed;
  return j;
}

inline Graph generate(const GenSpec& s) {
  if (s.family == "random-regular") {
    if (s.n < 3) throw InputError("random-regular: need n >= 3");
    return gen_random_regular(s.n, s.d, s.seed);
  }
  if (s.family == "d-out") {
    if (s.n < 3) throw InputError("d-out: need n >= 3");
    return gen_d_out(s.n, s.d, s.seed);
  }
  if (s.family == "gnp") {
    if (s.n < 3) throw InputError("gnp: need n >= 3");
    return gen_gnp(s.n, s.p, s.seed);
  }
  if (s.family == "explicit") {
    if (s.name == "complete") return complete_graph(s.n);
    if (s.name == "cycle") return cycle_graph(s.n);
    if (s.name == "path") return path_graph(s.n);
    if (s.name == "grid") return grid_graph(s.rows, s.cols);
    if (s.name == "petersen") return petersen_graph();
    throw InputError("explicit family: unknown graph name '" + s.name + "'");
  }
  throw InputError("unknown generator family '" + s.family + "'");
}

// ---------------------------------------------------------------------------
// Minor models: {"pattern_n":k, "pattern_edges":[[u,v],...],
// "branch_sets":{"0":[...], ...}}.
// ---------------------------------------------------------------------------

inline Json to_json(const MinorModel& m) {
  Json j;
  j["pattern_n"] = m.pattern.vertex_count();
  Json edges = Json::array();
  for (const Edge& e : m.pattern.edges()) edges.push_back({e.u, e.v});
  j["pattern_edges"] = std::move(edges);
  Json sets = Json::object();
  for (std::size_t h = 0; h < m.branch_sets.size(); ++h) sets[std::to_string(h)] = to_json(m.branch_sets[h]);
  j["branch_sets"] = std::move(sets);
  return j;
}

// Without "pattern_edges" the pattern must be supplied separately.
inline MinorModel minor_model_from_json(const Json& j, const Graph* pattern = nullptr) {
  MinorModel m;
  try {
    const auto k = j.at("pattern_n").get<std::size_t>();
    if (pattern) {
      if (pattern->vertex_count() != k) throw InputError("model: pattern_n does not match the supplied pattern");
      m.pattern = *pattern;
    } else if (j.contains("pattern_edges")) {
      std::vector<Edge> edges;
      for (const auto& e : j.at("pattern_edges")) edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>()});
      m.pattern = Graph::from_edges(k, edges);
    } else {
      throw InputError("model: no pattern_edges and no pattern supplied");
    }
    m.branch_sets.resize(k);
    for (const auto& [key, value] : j.at("branch_sets").items()) {
      std::size_t h = 0;
      try {
        h = std::stoul(key);
      } catch (const std::exception&) {
        throw InputError("model: branch set key '" + key + "' is not a vertex id");
      }
      if (h >= k) throw InputError("model: branch set key " + key + " outside the pattern");
      m.branch_sets[h] = VertexSet(value.get<std::vector<Vertex>>());
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("model: ") + e.what());
  }
  return m;
}

inline Json to_json(const CountingReport& r) {
  Json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["m"] = r.m;
  j["log_minor_upper"] = r.log_minor_upper;
  j["log_graph_lower"] = r.log_graph_lower;
  j["separation"] = r.separation;
  j["m_exceeds_n"] = r.m_exceeds_n;
  return j;
}

}  // namespace minexp
