// minexp command-line tool: generate, certify, embed, verify, bounds,
// find-non-minor and experiment. Exit codes: 0 success/valid, 1 negative
// result, 2 inconclusive, 3 error.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "minexp/minexp.hpp"
#include "minexp/json_io.hpp"

using namespace minexp;

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitError = 3;

struct Globals {
  std::uint64_t seed = 0;
  double budget = kDefaultCertifyBudget;
  std::string format = "auto";
  bool quiet = false;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph read_graph(const std::string& path) { return parse_edge_list(read_text(path)); }

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

void run_log(const Globals& g, const std::string& sub, const Json& config) {
  if (g.quiet) return;
  std::cerr << "minexp " << kVersion << " " << sub << " seed=" << g.seed << " config=" << hex64(fnv1a(config.dump()))
            << "\n";
}

std::string format_or(const Globals& g, const std::string& fallback) {
  return g.format == "auto" ? fallback : g.format;
}

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return Json{{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

ViolationFinder make_finder(const std::string& mode, double budget) {
  if (mode == "exact") return exact_finder(budget);
  if (mode == "heuristic") return heuristic_finder();
  if (mode == "auto") return default_finder(budget);
  throw InputError("unknown finder '" + mode + "'");
}

void print_warnings(const Globals& g, const std::vector<std::string>& warnings) {
  if (g.quiet) return;
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string spec;
  GenSpec flags;
  std::string output;
};

int cmd_generate(const Globals& g, const GenerateArgs& a) {
  GenSpec s;
  if (!a.spec.empty()) {
    Json j = a.spec.front() == '{' ? Json::parse(a.spec) : read_json(a.spec);
    s = gen_spec_from_json(j);
    if (!j.contains("seed")) s.seed = g.seed;
  } else {
    s = a.flags;
    if (s.family.empty()) throw InputError("generate: give --spec or --family");
    s.seed = g.seed;
  }
  const Json config = to_json(s);
  run_log(g, "generate", config);
  Graph graph = generate(s);
  const std::string fmt = format_or(g, "edge-list");
  if (fmt == "edge-list") {
    write_text(a.output, to_edge_list(graph));
  } else if (fmt == "json") {
    Json out = graph_json(graph);
    out["spec"] = config;
    write_text(a.output, out.dump() + "\n");
  } else if (fmt == "human") {
    write_text(a.output, "generated " + s.family + " graph: " + std::to_string(graph.vertex_count()) + " vertices, " +
                             std::to_string(graph.edge_count()) + " edges\n");
  } else {
    throw InputError("generate: unsupported format '" + fmt + "'");
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct CertifyArgs {
  std::string graph;
  double alpha = 0.5;
  double t = 1.0;
  std::string mode = "auto";
};

int cmd_certify(const Globals& g, const CertifyArgs& a) {
  ExpansionParams p{a.alpha, a.t};
  p.validate();
  Json config{{"graph", a.graph}, {"alpha", a.alpha}, {"t", a.t}, {"mode", a.mode}, {"budget", g.budget}};
  run_log(g, "certify", config);
  Graph graph = read_graph(a.graph);
  ExpansionCertificate cert;
  if (a.mode == "exact") {
    cert = certify_expansion_exact(graph, p, g.budget);
  } else if (a.mode == "heuristic") {
    cert = certify_expansion_heuristic(graph, p);
  } else if (a.mode == "auto") {
    const std::size_t n = graph.vertex_count();
    cert = subset_count(n, p.size_cap(n)) <= g.budget ? certify_expansion_exact(graph, p, g.budget)
                                                      : certify_expansion_heuristic(graph, p);
  } else {
    throw InputError("certify: unknown mode '" + a.mode + "'");
  }
  const std::string fmt = format_or(g, "json");
  if (fmt == "json") {
    std::cout << to_json(cert).dump() << "\n";
  } else if (fmt == "human") {
    std::cout << to_string(cert.verdict) << " (alpha=" << fmt_double(p.alpha) << ", t=" << fmt_double(p.t)
              << ", cap=" << cert.checked_size_cap << ")";
    if (cert.witness) std::cout << " witness size " << cert.witness->size();
    std::cout << "\n";
  } else {
    throw InputError("certify: unsupported format '" + fmt + "'");
  }
  switch (cert.verdict) {
    case Verdict::certified_exact: return 0;
    case Verdict::refuted: return kExitNegative;
    case Verdict::passed_heuristic: return kExitInconclusive;
  }
  return kExitError;
}

// ---------------------------------------------------------------------------

struct EmbedArgs {
  std::string graph;
  std::string pattern;
  bool complete = false;
  double alpha = 0.5;
  double t = 8.0;
  bool relaxed = false;
  bool audit = false;
  std::string finder = "auto";
  std::string output;
  std::optional<double> cover_constant;
  std::optional<double> cover_alpha;
  std::optional<std::size_t> target;
  double target_divisor = 64.0;
  bool fill = false;
};

Json embed_config_json(const Globals& g, const EmbedArgs& a) {
  Json j{{"graph", a.graph},   {"alpha", a.alpha},   {"t", a.t},           {"relaxed", a.relaxed},
         {"finder", a.finder}, {"budget", g.budget}, {"complete", a.complete}};
  if (a.complete) {
    j["cover_constant"] = a.cover_constant ? Json(*a.cover_constant) : Json(nullptr);
    j["cover_alpha"] = a.cover_alpha ? Json(*a.cover_alpha) : Json(nullptr);
    j["target"] = a.target ? Json(*a.target) : Json(nullptr);
    j["target_divisor"] = a.target_divisor;
    j["fill"] = a.fill;
  } else {
    j["pattern"] = a.pattern;
  }
  return j;
}

EmbedConfig make_embed_config(std::uint64_t seed, double budget, const EmbedArgs& a) {
  EmbedConfig c;
  c.enforce_hypotheses = !a.relaxed;
  c.finder = make_finder(a.finder, budget);
  c.seed = derive_seed(seed, "embed");
  c.audit = a.audit;
  c.cover_constant = a.cover_constant;
  c.cover_alpha = a.cover_alpha;
  c.target = a.target;
  c.target_divisor = a.target_divisor;
  c.fill = a.fill;
  return c;
}

std::size_t max_branch(const MinorModel& m) {
  std::size_t best = 0;
  for (const auto& s : m.branch_sets) best = std::max(best, s.size());
  return best;
}

int cmd_embed(const Globals& g, const EmbedArgs& a) {
  if (a.complete == !a.pattern.empty()) throw InputError("embed: give exactly one of --pattern and --complete");
  run_log(g, "embed", embed_config_json(g, a));
  Graph host = read_graph(a.graph);
  const EmbedConfig config = make_embed_config(g.seed, g.budget, a);
  const auto start = std::chrono::steady_clock::now();
  MinorModel model;
  std::string summary;
  if (a.complete) {
    CompleteEmbedding e = embed_complete(host, a.alpha, a.t, config);
    print_warnings(g, e.warnings);
    model = std::move(e.model);
    summary = "K_" + std::to_string(e.k) + " (" + e.stop_reason + ")";
  } else {
    Graph h = read_graph(a.pattern);
    UniversalEmbedding e = embed_universal(host, a.alpha, a.t, h, config);
    print_warnings(g, e.warnings);
    model = std::move(e.model);
    summary = "pattern with " + std::to_string(h.vertex_count()) + " vertices";
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  summary = "embedded " + summary + ", max branch set " + std::to_string(max_branch(model)) + ", wall " +
            fmt_double(wall) + " s";
  const std::string fmt = format_or(g, "json");
  if (fmt == "json") {
    write_text(a.output, to_json(model).dump() + "\n");
    if (!g.quiet) std::cerr << summary << "\n";
  } else if (fmt == "human") {
    if (!a.output.empty()) write_text(a.output, to_json(model).dump() + "\n");
    std::cout << summary << "\n";
  } else {
    throw InputError("embed: unsupported format '" + fmt + "'");
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string graph;
  std::string model;
  std::string pattern;
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  run_log(g, "verify", Json{{"graph", a.graph}, {"model", a.model}, {"pattern", a.pattern}});
  Graph host = read_graph(a.graph);
  std::optional<Graph> pattern;
  if (!a.pattern.empty()) pattern = read_graph(a.pattern);
  MinorModel model = minor_model_from_json(read_json(a.model), pattern ? &*pattern : nullptr);
  MinorVerdict v = verify_minor(host, model);
  const std::string fmt = format_or(g, "human");
  if (fmt == "json") {
    Json out{{"valid", v.valid}, {"clause", to_string(v.clause)}, {"diagnostic", v.diagnostic}};
    std::cout << out.dump() << "\n";
  } else if (fmt == "human") {
    std::cout << (v.valid ? "valid" : "invalid") << "\n";
  } else {
    throw InputError("verify: unsupported format '" + fmt + "'");
  }
  if (!v.valid) {
    std::cerr << "invalid model: " << to_string(v.clause) << ": " << v.diagnostic << "\n";
    return kExitNegative;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
  double n = 0;
  double d = 0;
  std::optional<std::size_t> m;
};

int cmd_bounds(const Globals& g, const BoundsArgs& a) {
  run_log(g, "bounds", Json{{"n", a.n}, {"d", a.d}, {"m", a.m ? Json(*a.m) : Json(nullptr)}});
  Json out;
  if (a.m) {
    out = to_json(count_bounds(a.n, a.d, *a.m));
  } else {
    UniversalityThreshold th = universality_threshold(a.n, a.d);
    out = to_json(count_bounds(a.n, a.d, th.m));
    out["m_real"] = th.m_real;
    out["trivial"] = th.trivial;
  }
  const std::string fmt = format_or(g, "json");
  if (fmt == "json") {
    std::cout << out.dump() << "\n";
  } else if (fmt == "human") {
    std::cout << "n=" << fmt_double(a.n) << " d=" << fmt_double(a.d) << " m=" << out["m"].get<std::size_t>()
              << " separation=" << fmt_double(out["separation"].get<double>()) << "\n";
  } else {
    throw InputError("bounds: unsupported format '" + fmt + "'");
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct NonMinorArgs {
  std::string graph;
  std::size_t k_vertices = 0;
  std::size_t k_edges = 0;
  std::string output;
};

int cmd_find_non_minor(const Globals& g, const NonMinorArgs& a) {
  run_log(g, "find-non-minor", Json{{"graph", a.graph}, {"k_vertices", a.k_vertices}, {"k_edges", a.k_edges}});
  Graph host = read_graph(a.graph);
  std::optional<Graph> h = find_non_minor(host, a.k_vertices, a.k_edges);
  const std::string fmt = format_or(g, "edge-list");
  if (!h) {
    if (fmt == "json") write_text(a.output, Json{{"found", false}}.dump() + "\n");
    if (!g.quiet) std::cerr << "every graph with these sizes is a minor of the host\n";
    return kExitNegative;
  }
  if (fmt == "edge-list") {
    write_text(a.output, to_edge_list(*h));
  } else if (fmt == "json") {
    Json out = graph_json(*h);
    out["found"] = true;
    write_text(a.output, out.dump() + "\n");
  } else if (fmt == "human") {
    write_text(a.output, "non-minor with " + std::to_string(h->vertex_count()) + " vertices and " +
                             std::to_string(h->edge_count()) + " edges\n");
  } else {
    throw InputError("find-non-minor: unsupported format '" + fmt + "'");
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
  std::string config;
  std::string family = "d-out";
  std::size_t d = 32;
  std::vector<std::size_t> ns{1024, 2048, 4096, 8192};
  std::size_t seeds = 5;
  double alpha = 0.5;
  double t = 32.0;
  double cover_constant = 4.0;
  double cover_alpha = 0.5;
  bool no_fill = false;
  std::string finder = "heuristic";
  std::size_t threads = 0;
  std::string output;
};

// Keys in a JSON sweep config mirror the long flag names; flags given on the
// command line win.
void apply_sweep_config(ExperimentArgs& a, const Json& j, const CLI::App& sub) {
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (j.contains(key) && sub.count(flag) == 0) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  try {
    take("family", "--family", a.family);
    take("d", "--d", a.d);
    take("n", "--n", a.ns);
    take("seeds", "--seeds", a.seeds);
    take("alpha", "--alpha", a.alpha);
    take("t", "--t", a.t);
    take("cover_constant", "--cover-constant", a.cover_constant);
    take("cover_alpha", "--cover-alpha", a.cover_alpha);
    take("no_fill", "--no-fill", a.no_fill);
    take("finder", "--finder", a.finder);
  } catch (const Json::exception& e) {
    throw InputError(std::string("sweep config: ") + e.what());
  }
}

struct TrialRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  bool verified = false;
  std::string error;
};

int cmd_experiment(const Globals& g, ExperimentArgs a, const CLI::App& sub) {
  if (!a.config.empty()) apply_sweep_config(a, read_json(a.config), sub);
  if (a.family != "d-out" && a.family != "random-regular") {
    throw InputError("experiment: family must be d-out or random-regular");
  }
  if (a.ns.empty() || a.seeds == 0) throw InputError("experiment: need at least one n and one seed");
  Json config{{"family", a.family}, {"d", a.d},         {"n", a.ns},
              {"seeds", a.seeds},   {"alpha", a.alpha}, {"t", a.t},
              {"cover_constant", a.cover_constant},     {"cover_alpha", a.cover_alpha},
              {"no_fill", a.no_fill},                   {"finder", a.finder},
              {"budget", g.budget}};
  run_log(g, "experiment", config);

  EmbedArgs embed;
  embed.complete = true;
  embed.alpha = a.alpha;
  embed.t = a.t;
  embed.relaxed = true;
  embed.finder = a.finder;
  embed.cover_constant = a.cover_constant;
  embed.cover_alpha = a.cover_alpha;
  embed.fill = !a.no_fill;
  make_finder(a.finder, g.budget);  // validate before spawning workers

  const std::size_t trials = a.ns.size() * a.seeds;
  std::vector<TrialRow> rows(trials);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      TrialRow& row = rows[i];
      row.n = a.ns[i / a.seeds];
      row.seed = derive_seed(g.seed, "trial", i);
      try {
        GenSpec spec;
        spec.family = a.family;
        spec.n = row.n;
        spec.d = a.d;
        spec.seed = row.seed;
        Graph host = generate(spec);
        CompleteEmbedding e = embed_complete(host, a.alpha, a.t, make_embed_config(row.seed, g.budget, embed));
        row.k = e.k;
        row.verified = verify_minor(host, e.model).valid;
      } catch (const Error& e) {
        row.error = e.what();
      }
      if (!g.quiet) {
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "trial " << i << ": n=" << row.n << " k=" << row.k << (row.error.empty() ? "" : " error: ")
                  << row.error << "\n";
      }
    }
  };
  std::size_t threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, trials);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv << "n,t,seed,k_found,bound,ratio,verified\n";
  bool all_ok = true;
  for (const TrialRow& row : rows) {
    const double n = static_cast<double>(row.n);
    const double bound = std::sqrt(n * a.t / std::log(n));
    csv << row.n << "," << fmt_double(a.t) << "," << row.seed << "," << row.k << "," << fmt_double(bound) << ","
        << fmt_double(static_cast<double>(row.k) / bound) << "," << (row.verified ? 1 : 0) << "\n";
    all_ok = all_ok && row.verified && row.error.empty();
  }
  write_text(a.output, csv.str());
  return all_ok ? 0 : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minexp: expansion certificates and minors of expanders"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  if (const char* env = std::getenv("MINEXP_BUDGET")) {
    try {
      g.budget = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "error: MINEXP_BUDGET is not a number\n";
      return kExitError;
    }
  }
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--budget", g.budget, "Subset budget for exact certification (default $MINEXP_BUDGET or 1e8)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"auto", "json", "edge-list", "human"}));
  app.add_flag("-q,--quiet", g.quiet, "No run log or warnings on stderr");

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate a graph as an edge list");
  generate_cmd->add_option("--spec", gen.spec, "GenSpec JSON text or file");
  generate_cmd->add_option("--family", gen.flags.family, "random-regular, d-out, gnp or explicit");
  generate_cmd->add_option("--n", gen.flags.n);
  generate_cmd->add_option("--d", gen.flags.d);
  generate_cmd->add_option("--p", gen.flags.p);
  generate_cmd->add_option("--name", gen.flags.name, "complete, cycle, path, grid or petersen");
  generate_cmd->add_option("--rows", gen.flags.rows);
  generate_cmd->add_option("--cols", gen.flags.cols);
  generate_cmd->add_option("-o,--output", gen.output);

  CertifyArgs cert;
  auto* certify_cmd = app.add_subcommand("certify", "Certify or refute (alpha, t)-expansion");
  certify_cmd->add_option("graph", cert.graph, "Edge list ('-' for stdin)")->required();
  certify_cmd->add_option("--alpha", cert.alpha);
  certify_cmd->add_option("--t", cert.t);
  certify_cmd->add_option("--mode", cert.mode)->check(CLI::IsMember({"auto", "exact", "heuristic"}));

  EmbedArgs emb;
  auto* embed_cmd = app.add_subcommand("embed", "Embed a pattern or a large clique as a minor");
  embed_cmd->add_option("graph", emb.graph, "Host edge list")->required();
  embed_cmd->add_option("--pattern", emb.pattern, "Pattern edge list");
  embed_cmd->add_flag("--complete", emb.complete, "Embed K_k with k as large as the engine manages");
  embed_cmd->add_option("--alpha", emb.alpha);
  embed_cmd->add_option("--t", emb.t);
  embed_cmd->add_flag("--relaxed", emb.relaxed, "Turn asymptotic hypotheses into warnings");
  embed_cmd->add_flag("--audit", emb.audit, "Check partition invariants after every step");
  embed_cmd->add_option("--finder", emb.finder)->check(CLI::IsMember({"auto", "exact", "heuristic"}));
  embed_cmd->add_option("--cover-constant", emb.cover_constant);
  embed_cmd->add_option("--cover-alpha", emb.cover_alpha);
  embed_cmd->add_option("--target", emb.target);
  embed_cmd->add_option("--target-divisor", emb.target_divisor);
  embed_cmd->add_flag("--fill", emb.fill, "Grow the clique until a branch set runs out of room");
  embed_cmd->add_option("-o,--output", emb.output, "Model JSON path");

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Check a minor model against its host");
  verify_cmd->add_option("graph", ver.graph, "Host edge list")->required();
  verify_cmd->add_option("model", ver.model, "Model JSON")->required();
  verify_cmd->add_option("--pattern", ver.pattern, "Pattern edge list when the model omits it");

  BoundsArgs bnd;
  auto* bounds_cmd = app.add_subcommand("bounds", "Counting bounds at the universality threshold");
  bounds_cmd->add_option("--n", bnd.n)->required();
  bounds_cmd->add_option("--d", bnd.d)->required();
  bounds_cmd->add_option("--m", bnd.m, "Override the threshold m");

  NonMinorArgs nm;
  auto* non_minor_cmd = app.add_subcommand("find-non-minor", "Find a small graph that is not a minor of the host");
  non_minor_cmd->add_option("graph", nm.graph, "Host edge list")->required();
  non_minor_cmd->add_option("--k-vertices", nm.k_vertices)->required();
  non_minor_cmd->add_option("--k-edges", nm.k_edges)->required();
  non_minor_cmd->add_option("-o,--output", nm.output);

  ExperimentArgs exp;
  auto* experiment_cmd = app.add_subcommand("experiment", "Clique-minor scaling sweep, CSV on stdout");
  experiment_cmd->add_option("--config", exp.config, "Sweep config JSON");
  experiment_cmd->add_option("--family", exp.family);
  experiment_cmd->add_option("--d", exp.d);
  experiment_cmd->add_option("--n", exp.ns)->delimiter(',');
  experiment_cmd->add_option("--seeds", exp.seeds);
  experiment_cmd->add_option("--alpha", exp.alpha);
  experiment_cmd->add_option("--t", exp.t);
  experiment_cmd->add_option("--cover-constant", exp.cover_constant);
  experiment_cmd->add_option("--cover-alpha", exp.cover_alpha);
  experiment_cmd->add_flag("--no-fill", exp.no_fill);
  experiment_cmd->add_option("--finder", exp.finder)->check(CLI::IsMember({"auto", "exact", "heuristic"}));
  experiment_cmd->add_option("--threads", exp.threads, "Worker threads (default: hardware concurrency)");
  experiment_cmd->add_option("-o,--output", exp.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*generate_cmd) return cmd_generate(g, gen);
    if (*certify_cmd) return cmd_certify(g, cert);
    if (*embed_cmd) return cmd_embed(g, emb);
    if (*verify_cmd) return cmd_verify(g, ver);
    if (*bounds_cmd) return cmd_bounds(g, bnd);
    if (*non_minor_cmd) return cmd_find_non_minor(g, nm);
    if (*experiment_cmd) return cmd_experiment(g, exp, *experiment_cmd);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
