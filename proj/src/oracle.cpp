#include "flowpreserve/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "flowpreserve/flow.hpp"
#include "flowpreserve/preserver.hpp"

namespace flowpreserve {
namespace {

constexpr const char* kMagic = "FLOWPRESERVE-ORACLE";
constexpr int kFormatVersion = 1;

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void word(std::uint32_t w) {
    for (int i = 0; i < 4; ++i) {
      h ^= (w >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
};

void validate_params(int lambda, int k) {
  if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
}

[[noreturn]] void corrupt(const std::string& what) {
  throw OracleLoadError("corrupt oracle file: " + what);
}

// Next meaningful line split into tokens; throws on EOF.
std::istringstream next_line(std::istream& in, const char* expecting) {
  std::string line;
  if (!std::getline(in, line))
    corrupt(std::string("truncated before ") + expecting);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return std::istringstream(line);
}

void expect_word(std::istringstream& ls, const char* word) {
  std::string w;
  if (!(ls >> w) || w != word) corrupt(std::string("expected '") + word + "'");
}

template <typename T>
T read_number(std::istringstream& ls, const char* what) {
  T v{};
  if (!(ls >> v)) corrupt(std::string("bad ") + what);
  return v;
}

}  // namespace

const char* tag_name(ReachTag tag) noexcept {
  return tag == ReachTag::exact ? "exact" : "atleast";
}

std::uint64_t graph_hash(const DiGraph& g) {
  Fnv1a f;
  f.word(static_cast<std::uint32_t>(g.num_vertices()));
  for (EdgeId e : g.edges()) {
    f.word(static_cast<std::uint32_t>(index_of(e)));
    f.word(static_cast<std::uint32_t>(index_of(g.tail(e))));
    f.word(static_cast<std::uint32_t>(index_of(g.head(e))));
  }
  return f.h;
}

ReachabilityOracle::ReachabilityOracle(DiGraph g, int lambda, int k,
                                       std::vector<DiGraph> preservers)
    : g_(std::move(g)),
      lambda_(lambda),
      k_(k),
      hash_(flowpreserve::graph_hash(g_)),
      family_(std::move(preservers)) {
  validate_params(lambda, k);
  if (family_.size() != g_.num_vertices())
    throw std::invalid_argument("need exactly one preserver per vertex");
  for (const DiGraph& h : family_)
    if (!is_subgraph_of(h, g_) || h.edge_id_bound() != g_.edge_id_bound())
      throw std::invalid_argument("preserver is not a subgraph of the graph");
}

const DiGraph& ReachabilityOracle::preserver(VertexId x) const {
  if (!g_.has_vertex(x)) throw std::invalid_argument("vertex out of range");
  return family_[index_of(x)];
}

std::size_t ReachabilityOracle::stored_edges() const noexcept {
  std::size_t total = 0;
  for (const DiGraph& h : family_) total += h.num_edges();
  return total;
}

ReachAnswer ReachabilityOracle::query(VertexId x, VertexId y,
                                      std::span<const EdgeId> faults) const {
  if (!g_.has_vertex(x) || !g_.has_vertex(y))
    throw std::invalid_argument("query vertex out of range");
  std::vector<std::uint8_t> blocked(g_.edge_id_bound(), 0);
  std::size_t distinct = 0;
  for (EdgeId e : faults) {
    if (!g_.has_edge(e))
      throw std::invalid_argument("unknown edge id " +
                                  std::to_string(index_of(e)));
    if (!blocked[index_of(e)]) {
      blocked[index_of(e)] = 1;
      ++distinct;
    }
  }
  if (distinct > static_cast<std::size_t>(k_))
    throw std::invalid_argument("more than k faults");
  if (x == y) return {lambda_, ReachTag::at_least};

  const VertexId src[] = {x};
  int v = max_flow_avoiding(family_[index_of(x)], src, y, blocked, lambda_)
              .value;
  if (v < lambda_) return {v, ReachTag::exact};
  return {lambda_, ReachTag::at_least};
}

ReachabilityOracle build_oracle(const DiGraph& g, int lambda, int k,
                                unsigned workers) {
  validate_params(lambda, k);
  const std::size_t n = g.num_vertices();
  std::vector<DiGraph> family(n);
  workers = std::max(1U, std::min<unsigned>(workers, n ? n : 1));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto run = [&] {
    for (std::size_t x; (x = next.fetch_add(1)) < n && !failed;) {
      try {
        family[x] = ftbfp(g, vertex_at(x), lambda, k).h;
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return ReachabilityOracle(g, lambda, k, std::move(family));
}

void save_oracle(const ReachabilityOracle& o, std::ostream& out) {
  const DiGraph& g = o.graph();
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, o.graph_hash());
  out << kMagic << ' ' << kFormatVersion << '\n'
      << "lambda " << o.lambda() << " k " << o.k() << '\n'
      << "graph-hash " << hash << '\n'
      << "graph " << g.num_vertices() << ' ' << g.edge_id_bound() << ' '
      << g.num_edges() << '\n';
  for (EdgeId e : g.edges())
    out << index_of(e) << ' ' << index_of(g.tail(e)) << ' '
        << index_of(g.head(e)) << '\n';
  for (std::size_t x = 0; x < g.num_vertices(); ++x) {
    const DiGraph& h = o.preserver(vertex_at(x));
    out << "source " << x << ' ' << h.num_edges();
    for (EdgeId e : h.edges()) out << ' ' << index_of(e);
    out << '\n';
  }
  out << "end\n";
}

void save_oracle(const ReachabilityOracle& o,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  save_oracle(o, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

ReachabilityOracle load_oracle(std::istream& in) {
  {
    auto ls = next_line(in, "header");
    std::string magic;
    int version = 0;
    if (!(ls >> magic) || magic != kMagic)
      throw OracleLoadError("not an oracle file");
    if (!(ls >> version) || version != kFormatVersion)
      throw OracleLoadError("unsupported oracle format version");
  }
  int lambda = 0, k = 0;
  {
    auto ls = next_line(in, "parameters");
    expect_word(ls, "lambda");
    lambda = read_number<int>(ls, "lambda");
    expect_word(ls, "k");
    k = read_number<int>(ls, "k");
    if (lambda < 1 || k < 0) corrupt("parameters out of range");
  }
  std::uint64_t stored_hash = 0;
  {
    auto ls = next_line(in, "graph hash");
    expect_word(ls, "graph-hash");
    std::string hex;
    if (!(ls >> hex) || hex.size() != 16) corrupt("bad graph hash");
    try {
      std::size_t used = 0;
      stored_hash = std::stoull(hex, &used, 16);
      if (used != hex.size()) corrupt("bad graph hash");
    } catch (const std::logic_error&) {
      corrupt("bad graph hash");
    }
  }
  std::size_t n = 0, bound = 0, m = 0;
  {
    auto ls = next_line(in, "graph");
    expect_word(ls, "graph");
    n = read_number<std::size_t>(ls, "vertex count");
    bound = read_number<std::size_t>(ls, "edge id bound");
    m = read_number<std::size_t>(ls, "edge count");
    if (m > bound || (bound > 0 && n == 0)) corrupt("inconsistent graph size");
  }

  DiGraphBuilder b(n);
  std::vector<EdgeId> vacant;
  for (std::size_t i = 0; i < m; ++i) {
    auto ls = next_line(in, "edge list end");
    auto id = read_number<std::size_t>(ls, "edge id");
    auto tail = read_number<std::size_t>(ls, "tail");
    auto head = read_number<std::size_t>(ls, "head");
    if (id >= bound || tail >= n || head >= n) corrupt("edge out of range");
    // Placeholders keep ids aligned across gaps; removed below.
    while (vacant.size() + i < id)
      vacant.push_back(b.add_edge(vertex_at(0), vertex_at(0)));
    if (vacant.size() + i != id) corrupt("edge ids not ascending");
    b.add_edge(vertex_at(tail), vertex_at(head));
  }
  while (vacant.size() + m < bound)
    vacant.push_back(b.add_edge(vertex_at(0), vertex_at(0)));
  for (EdgeId e : vacant) b.remove_edge(e);
  DiGraph g = std::move(b).build();
  if (graph_hash(g) != stored_hash)
    throw OracleLoadError("graph hash mismatch");

  std::vector<DiGraph> family;
  family.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto ls = next_line(in, "source lines end");
    expect_word(ls, "source");
    if (read_number<std::size_t>(ls, "source") != x)
      corrupt("sources out of order");
    auto count = read_number<std::size_t>(ls, "edge count");
    std::vector<std::uint8_t> keep(bound, 0);
    for (std::size_t i = 0; i < count; ++i) {
      auto id = read_number<std::size_t>(ls, "edge id");
      if (id >= bound || !g.has_edge(edge_at(id)))
        corrupt("preserver edge not in the graph");
      keep[id] = 1;
    }
    std::string extra;
    if (ls >> extra) corrupt("trailing data on source line");
    DiGraphBuilder hb(g);
    for (EdgeId e : g.edges())
      if (!keep[index_of(e)]) hb.remove_edge(e);
    family.push_back(std::move(hb).build());
  }
  {
    auto ls = next_line(in, "end marker");
    expect_word(ls, "end");
  }
  return ReachabilityOracle(std::move(g), lambda, k, std::move(family));
}

ReachabilityOracle load_oracle(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw OracleLoadError("cannot open " + path.string());
  return load_oracle(in);
}

}  // namespace flowpreserve
