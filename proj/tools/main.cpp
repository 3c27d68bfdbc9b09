// flowpreserve: command-line front end for the preserver library.
//
// Exit codes: 0 success, 1 a violation was found, 2 usage, input or budget
// error. Graph arguments accept "-" for stdin; outputs default to stdout.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "flowpreserve/digraph.hpp"
#include "flowpreserve/edge_list.hpp"
#include "flowpreserve/flow.hpp"
#include "flowpreserve/generators.hpp"
#include "flowpreserve/oracle.hpp"
#include "flowpreserve/preserver.hpp"
#include "flowpreserve/random.hpp"
#include "flowpreserve/transform.hpp"
#include "flowpreserve/verify.hpp"

namespace fp = flowpreserve;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin),
            std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

fp::VertexId vertex_arg(const fp::DiGraph& g, std::size_t v,
                        const char* what) {
  if (v >= g.num_vertices())
    throw UsageError(std::string(what) + " " + std::to_string(v) +
                     " is not a vertex of the graph");
  return fp::vertex_at(v);
}

std::string join_ids(const std::vector<fp::EdgeId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(fp::index_of(ids[i]));
  }
  return out;
}

std::vector<fp::EdgeId> parse_ids(const std::string& text) {
  std::vector<fp::EdgeId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw UsageError("bad edge id '" + item + "'");
    out.push_back(fp::edge_at(v));
  }
  return out;
}

std::uint64_t budget_from(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("FLOWPRESERVE_BUDGET")) {
    try {
      std::size_t used = 0;
      std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("FLOWPRESERVE_BUDGET must be a nonnegative integer");
  }
  return fp::kDefaultVerifyBudget;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  int lambda = 1;
  int k = 1;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::int64_t cmax = 0;
  std::string universe_file;
  std::string out;
  std::string layout;
};

void emit_generated(const GenOptions& o, const std::string& header,
                    const std::string& body, const std::string& layout) {
  write_text(o.out, header + body);
  std::string layout_path = o.layout;
  if (layout_path.empty() && !o.out.empty() && o.out != "-")
    layout_path = o.out + ".layout.json";
  if (!layout_path.empty()) write_text(layout_path, layout + "\n");
}

int gen_lower_bound(const GenOptions& o) {
  auto inst = fp::lower_bound_instance(o.lambda, o.k, o.n);
  std::ostringstream h;
  h << "# lower-bound lambda=" << o.lambda << " k=" << o.k << " n=" << o.n
    << " forced_edges=" << inst.g.num_edges() << '\n';
  emit_generated(o, h.str(), fp::serialize_edge_list(inst.g),
                 fp::layout_json(inst));
  return kOk;
}

int gen_hardness(const GenOptions& o) {
  auto sc = fp::parse_set_cover(read_text(o.universe_file));
  auto hi = fp::hardness_instance(sc, o.lambda);
  std::ostringstream h;
  h << "# hardness lambda=" << o.lambda << " k=" << hi.k
    << " universe=" << hi.original_universe << " padded=" << hi.padded.universe_size
    << " sets=" << hi.padded.sets.size() << '\n';
  emit_generated(o, h.str(), fp::serialize_edge_list(hi.g),
                 fp::layout_json(hi));
  return kOk;
}

int gen_random(const GenOptions& o) {
  std::ostringstream h;
  h << "# random n=" << o.n << " m=" << o.m << " seed=" << o.seed;
  nlohmann::ordered_json layout;
  layout["kind"] = "random";
  layout["n"] = o.n;
  layout["m"] = o.m;
  layout["seed"] = o.seed;
  std::string body;
  if (o.cmax > 0) {
    h << " cmax=" << o.cmax;
    layout["cmax"] = o.cmax;
    body = fp::serialize_edge_list(fp::random_capgraph(o.n, o.m, o.cmax, o.seed));
  } else {
    body = fp::serialize_edge_list(fp::random_digraph(o.n, o.m, o.seed));
  }
  h << " prng=splitmix64\n";
  emit_generated(o, h.str(), body, layout.dump(2));
  return kOk;
}

// ---------------------------------------------------------------------------
// build / select / transform / stats

struct BuildOptions {
  std::string graph = "-";
  std::string out;
  std::string audit;
  std::size_t source = 0;
  int lambda = 1;
  int k = 1;
  bool capacitated = false;
};

int run_build(const BuildOptions& o) {
  const std::string text = read_text(o.graph);
  std::ostringstream header;
  header << "# preserver source=" << o.source << " lambda=" << o.lambda
         << " k=" << o.k << '\n';
  if (o.capacitated) {
    auto g = fp::parse_cap_edge_list(text);
    auto h = fp::capacitated_ftbfp(g, vertex_arg(g.base, o.source, "source"),
                                   o.lambda, o.k);
    write_text(o.out, header.str() + fp::serialize_edge_list(h));
    return kOk;
  }
  auto g = fp::parse_edge_list(text);
  auto r = fp::ftbfp(g, vertex_arg(g, o.source, "source"), o.lambda, o.k);
  write_text(o.out, header.str() + fp::serialize_edge_list(r.h));
  if (!o.audit.empty()) {
    std::string lines;
    for (const auto& a : r.audit) {
      nlohmann::ordered_json j;
      j["vertex"] = fp::index_of(a.vertex);
      j["kept_in_degree"] = a.kept_in_degree;
      j["f_observed"] = a.f_observed ? nlohmann::ordered_json(*a.f_observed)
                                     : nlohmann::ordered_json(nullptr);
      lines += j.dump() + '\n';
    }
    write_text(o.audit, lines);
  }
  return kOk;
}

struct SelectOptions {
  std::string graph = "-";
  std::size_t source = 0;
  std::size_t dest = 0;
  int lambda = 1;
  int k = 1;
  bool ftrs = false;
};

int run_select(const SelectOptions& o) {
  auto g = fp::parse_edge_list(read_text(o.graph));
  auto s = vertex_arg(g, o.source, "source");
  auto t = vertex_arg(g, o.dest, "destination");
  if (s == t) throw UsageError("source and destination must differ");
  if (o.ftrs) {
    auto sel = fp::ftrs_single_dest(g, s, t, o.k);
    std::cout << "kept=[" << join_ids(sel.kept) << "]\n";
    std::cout << "cut_trace=";
    for (std::size_t i = 0; i < sel.cut_trace.size(); ++i)
      std::cout << (i ? "," : "") << sel.cut_trace[i];
    std::cout << "\nsource_set_sizes=";
    for (std::size_t i = 0; i < sel.source_set_sizes.size(); ++i)
      std::cout << (i ? "," : "") << sel.source_set_sizes[i];
    std::cout << '\n';
    return kOk;
  }
  auto kept = fp::ftbfp_single_dest(g, s, t, o.lambda, o.k);
  std::cout << "kept=[" << join_ids(kept) << "]\n";
  return kOk;
}

struct TransformOptions {
  std::string graph = "-";
  std::string out;
  std::string map;
  std::size_t source = 0;
  std::size_t dest = 1;
};

int run_transform(const TransformOptions& o) {
  auto g = fp::parse_edge_list(read_text(o.graph));
  auto s = vertex_arg(g, o.source, "source");
  auto t = vertex_arg(g, o.dest, "destination");
  if (s == t) throw UsageError("source and destination must differ");
  auto tg = fp::bounded_outdegree_transform(g, s, t);
  std::ostringstream header;
  header << "# transformed source=" << o.source << " dest=" << o.dest
         << " (source is vertex " << fp::index_of(tg.source) << ", dest is vertex "
         << fp::index_of(tg.sink) << ")\n";
  write_text(o.out, header.str() + fp::serialize_edge_list(tg.h));
  if (!o.map.empty()) {
    std::ostringstream m;
    for (fp::EdgeId e : g.edges()) {
      const auto i = fp::index_of(e);
      m << i << ' ' << fp::index_of(tg.left[i]) << ' '
        << fp::index_of(tg.right[i]) << ' ' << fp::index_of(tg.splitter[i])
        << '\n';
    }
    write_text(o.map, m.str());
  }
  return kOk;
}

struct StatsOptions {
  std::string graph = "-";
  std::optional<int> lambda;
  std::optional<int> k;
};

int run_stats(const StatsOptions& o) {
  if (o.lambda.has_value() != o.k.has_value())
    throw UsageError("--lambda and --k go together");
  auto g = fp::parse_edge_list(read_text(o.graph));
  std::cout << "n=" << g.num_vertices() << '\n'
            << "m=" << g.num_edges() << '\n'
            << "max_in_degree=" << g.max_in_degree() << '\n'
            << "max_out_degree=" << g.max_out_degree() << '\n';
  if (o.lambda) {
    auto rep = fp::audit_bounds(g, *o.lambda, *o.k);
    std::cout << "in_degree_bound=" << rep.in_degree_bound << '\n'
              << "edge_bound=" << rep.edge_bound << '\n'
              << "slack=" << rep.slack() << '\n'
              << "vertices_over_bound=" << rep.vertices_over_bound << '\n'
              << "bounds=" << (rep.passed ? "ok" : "violated") << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyCliOptions {
  std::string graph;
  std::string sub;
  std::size_t source = 0;
  int lambda = 1;
  int k = 1;
  bool capacitated = false;
  std::optional<std::uint64_t> budget;
  unsigned workers = 1;
};

int run_verify(const VerifyCliOptions& o) {
  fp::VerifyOptions vo{budget_from(o.budget), std::max(1U, o.workers)};
  if (o.capacitated) {
    auto g = fp::parse_cap_edge_list(read_text(o.graph));
    auto sub = fp::parse_cap_edge_list(read_text(o.sub));
    fp::CapGraph h;
    h.base = fp::embed_subgraph(g.base, sub.base);
    h.cap.assign(g.base.edge_id_bound(), 0);
    // Kept edges carry their capacity in g.
    for (fp::EdgeId e : h.base.edges()) h.cap[fp::index_of(e)] = g.capacity(e);
    auto v = fp::verify_capacitated_ftbfp(
        g, h, vertex_arg(g.base, o.source, "source"), o.lambda, o.k, vo);
    if (!v) {
      std::cout << "ok\n";
      return kOk;
    }
    std::cout << "I=[";
    for (std::size_t j = 0; j < v->decrement.size(); ++j)
      std::cout << (j ? "," : "") << fp::index_of(v->decrement[j].first) << ':'
                << v->decrement[j].second;
    std::cout << "] t=" << fp::index_of(v->dest) << " g=" << v->flow_in_g
              << " h=" << v->flow_in_h << '\n';
    return kViolation;
  }
  auto g = fp::parse_edge_list(read_text(o.graph));
  auto h = fp::embed_subgraph(g, fp::parse_edge_list(read_text(o.sub)));
  auto v = fp::verify_ftbfp(g, h, vertex_arg(g, o.source, "source"), o.lambda,
                            o.k, vo);
  if (!v) {
    std::cout << "ok\n";
    return kOk;
  }
  std::cout << "F=[" << join_ids(v->faults) << "] t=" << fp::index_of(v->dest)
            << " g=" << v->flow_in_g << " h=" << v->flow_in_h << '\n';
  return kViolation;
}

// ---------------------------------------------------------------------------
// suite: seeded random preservers, one table row per instance

struct SuiteOptions {
  std::size_t count = 20;
  std::size_t n = 8;
  std::size_t m = 20;
  int lambda = 2;
  int k = 1;
  std::uint64_t seed = 1;
  bool verify = false;
  std::optional<std::uint64_t> budget;
  unsigned workers = 1;
};

int run_suite(const SuiteOptions& o) {
  fp::VerifyOptions vo{budget_from(o.budget), std::max(1U, o.workers)};
  std::cout << "# suite count=" << o.count << " n=" << o.n << " m=" << o.m
            << " lambda=" << o.lambda << " k=" << o.k << " seed=" << o.seed
            << " prng=splitmix64\n";
  std::cout << "seed\tn\tm\tedges\tbound\tmax_in\tin_bound\tbounds\tverified\n";
  int status = kOk;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < o.count; ++i) {
    const std::uint64_t seed = o.seed + i;
    auto g = fp::random_digraph(o.n, o.m, seed);
    auto r = fp::ftbfp(g, fp::vertex_at(0), o.lambda, o.k);
    auto rep = fp::audit_bounds(r);
    std::string verified = "-";
    if (o.verify) {
      verified = fp::verify_ftbfp(g, r.h, fp::vertex_at(0), o.lambda, o.k, vo)
                     ? "violation"
                     : "ok";
    }
    if (!rep.passed || verified == "violation") {
      ++violations;
      status = kViolation;
    }
    std::cout << seed << '\t' << o.n << '\t' << g.num_edges() << '\t'
              << rep.total_edges << '\t' << rep.edge_bound << '\t'
              << rep.max_in_degree << '\t' << rep.in_degree_bound << '\t'
              << (rep.passed ? "ok" : "violated") << '\t' << verified << '\n';
  }
  std::cout << "# violations=" << violations << '\n';
  return status;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleBuildOptions {
  std::string graph = "-";
  std::string out;
  int lambda = 1;
  int k = 1;
  unsigned workers = 1;
};

int run_oracle_build(const OracleBuildOptions& o) {
  auto g = fp::parse_edge_list(read_text(o.graph));
  auto oracle = fp::build_oracle(g, o.lambda, o.k, std::max(1U, o.workers));
  std::ostringstream out;
  fp::save_oracle(oracle, out);
  write_text(o.out, out.str());
  return kOk;
}

struct OracleQueryOptions {
  std::string oracle;
  std::size_t x = 0;
  std::size_t y = 0;
  std::string fail;
};

int run_oracle_query(const OracleQueryOptions& o) {
  std::ifstream in(o.oracle);
  if (!in) throw UsageError("cannot open " + o.oracle);
  auto oracle = fp::load_oracle(in);
  auto x = vertex_arg(oracle.graph(), o.x, "x");
  auto y = vertex_arg(oracle.graph(), o.y, "y");
  auto a = oracle.query(x, y, parse_ids(o.fail));
  std::cout << "value=" << a.value << " tag=" << fp::tag_name(a.tag) << '\n';
  return kOk;
}

void add_query_flags(CLI::App* cmd, OracleQueryOptions& o) {
  cmd->add_option("--oracle", o.oracle, "Oracle file from 'oracle build'")
      ->required();
  cmd->add_option("--x", o.x, "Query source")->required();
  cmd->add_option("--y", o.y, "Query target")->required();
  cmd->add_option("--fail", o.fail, "Failed edge ids, comma separated");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault-tolerant bounded-flow preservers for directed graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "flowpreserve 0.1.0");

  // gen
  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->require_subcommand(1);
  auto gen_common = [&](CLI::App* c) {
    c->add_option("--out", gen.out, "Edge-list output (default stdout)");
    c->add_option("--layout", gen.layout,
                  "Layout JSON output (default <out>.layout.json)");
  };
  auto* gen_lb = gen_cmd->add_subcommand("lower-bound",
                                         "Trees feeding a complete bipartite layer");
  gen_lb->add_option("--lambda", gen.lambda)->required()->check(CLI::PositiveNumber);
  gen_lb->add_option("--k", gen.k)->required()->check(CLI::NonNegativeNumber);
  gen_lb->add_option("--n", gen.n, "Total vertex count")->required();
  gen_common(gen_lb);
  auto* gen_hard = gen_cmd->add_subcommand("hardness",
                                           "Set cover reduction instance");
  gen_hard->add_option("--universe-file", gen.universe_file,
                       "Set cover file: '|U| |F|' then one set per line")
      ->required();
  gen_hard->add_option("--lambda", gen.lambda)->required()->check(CLI::PositiveNumber);
  gen_common(gen_hard);
  auto* gen_rand = gen_cmd->add_subcommand("random", "Seeded simple digraph");
  gen_rand->add_option("--n", gen.n)->required();
  gen_rand->add_option("--m", gen.m)->required();
  gen_rand->add_option("--seed", gen.seed)->required();
  gen_rand->add_option("--cmax", gen.cmax,
                       "Emit capacities drawn from 1..cmax");
  gen_common(gen_rand);

  // build
  BuildOptions build;
  auto* build_cmd = app.add_subcommand("build", "Build a preserver");
  build_cmd->add_option("--graph", build.graph, "Edge list (default stdin)");
  build_cmd->add_option("--source", build.source)->required();
  build_cmd->add_option("--lambda", build.lambda)->required()->check(CLI::PositiveNumber);
  build_cmd->add_option("--k", build.k)->required()->check(CLI::NonNegativeNumber);
  build_cmd->add_option("--out", build.out, "Preserver output (default stdout)");
  build_cmd->add_option("--audit", build.audit, "Per-vertex audit, JSON lines");
  build_cmd->add_flag("--capacitated", build.capacitated,
                      "Input lines carry capacities");
  unsigned unused_workers = 1;
  build_cmd->add_option("--workers", unused_workers, "Accepted for symmetry");

  // select
  SelectOptions select;
  auto* select_cmd =
      app.add_subcommand("select", "In-edges kept at one destination");
  select_cmd->add_option("--graph", select.graph);
  select_cmd->add_option("--source", select.source)->required();
  select_cmd->add_option("--dest", select.dest)->required();
  select_cmd->add_option("--lambda", select.lambda)->check(CLI::PositiveNumber);
  select_cmd->add_option("--k", select.k)->required()->check(CLI::NonNegativeNumber);
  select_cmd->add_flag("--ftrs", select.ftrs,
                       "Run k cut iterations and print the trace");

  // transform
  TransformOptions transform;
  auto* transform_cmd =
      app.add_subcommand("transform", "Out-degree bounded image for one pair");
  transform_cmd->add_option("--graph", transform.graph);
  transform_cmd->add_option("--source", transform.source)->required();
  transform_cmd->add_option("--dest", transform.dest)->required();
  transform_cmd->add_option("--out", transform.out);
  transform_cmd->add_option("--map", transform.map,
                            "Lines 'orig_eid l_vid r_vid splitter_eid'");

  // stats
  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Degree and size report");
  stats_cmd->add_option("--graph", stats.graph);
  stats_cmd->add_option("--lambda", stats.lambda)->check(CLI::PositiveNumber);
  stats_cmd->add_option("--k", stats.k)->check(CLI::NonNegativeNumber);

  // verify
  VerifyCliOptions verify;
  auto* verify_cmd =
      app.add_subcommand("verify", "Exhaustive check of a candidate preserver");
  verify_cmd->add_option("--graph", verify.graph)->required();
  verify_cmd->add_option("--sub", verify.sub, "Candidate subgraph")->required();
  verify_cmd->add_option("--source", verify.source)->required();
  verify_cmd->add_option("--lambda", verify.lambda)->required()->check(CLI::PositiveNumber);
  verify_cmd->add_option("--k", verify.k)->required()->check(CLI::NonNegativeNumber);
  verify_cmd->add_flag("--capacitated", verify.capacitated);
  verify_cmd->add_option("--budget", verify.budget,
                         "Max (fault set, destination) pairs; "
                         "env FLOWPRESERVE_BUDGET");
  verify_cmd->add_option("--workers", verify.workers);

  // suite
  SuiteOptions suite;
  auto* suite_cmd =
      app.add_subcommand("suite", "Preservers over seeded random graphs");
  suite_cmd->add_option("--count", suite.count);
  suite_cmd->add_option("--n", suite.n);
  suite_cmd->add_option("--m", suite.m);
  suite_cmd->add_option("--lambda", suite.lambda)->check(CLI::PositiveNumber);
  suite_cmd->add_option("--k", suite.k)->check(CLI::NonNegativeNumber);
  suite_cmd->add_option("--seed", suite.seed, "First seed");
  suite_cmd->add_flag("--verify", suite.verify, "Also run the exhaustive check");
  suite_cmd->add_option("--budget", suite.budget);
  suite_cmd->add_option("--workers", suite.workers);

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Reachability oracle");
  oracle_cmd->require_subcommand(1);
  OracleBuildOptions oracle_build;
  auto* ob = oracle_cmd->add_subcommand("build", "Preprocess every source");
  ob->add_option("--graph", oracle_build.graph);
  ob->add_option("--lambda", oracle_build.lambda)->required()->check(CLI::PositiveNumber);
  ob->add_option("--k", oracle_build.k)->required()->check(CLI::NonNegativeNumber);
  ob->add_option("--out", oracle_build.out);
  ob->add_option("--workers", oracle_build.workers);
  OracleQueryOptions oracle_query;
  auto* oq = oracle_cmd->add_subcommand("query", "Answer one query");
  add_query_flags(oq, oracle_query);
  auto* query_cmd = app.add_subcommand("query", "Same as 'oracle query'");
  add_query_flags(query_cmd, oracle_query);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen_lb) return gen_lower_bound(gen);
    if (*gen_hard) return gen_hardness(gen);
    if (*gen_rand) return gen_random(gen);
    if (*build_cmd) return run_build(build);
    if (*select_cmd) return run_select(select);
    if (*transform_cmd) return run_transform(transform);
    if (*stats_cmd) return run_stats(stats);
    if (*verify_cmd) return run_verify(verify);
    if (*suite_cmd) return run_suite(suite);
    if (*ob) return run_oracle_build(oracle_build);
    if (*oq || *query_cmd) return run_oracle_query(oracle_query);
  } catch (const fp::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
