#include "flowpreserve/verify.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>
#include <thread>

#include "flowpreserve/flow.hpp"

namespace flowpreserve {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return b > kSaturated - a ? kSaturated : a + b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // out * (n - r + i) / i stays integral at every step.
    const std::uint64_t num = n - r + i;
    if (out > kSaturated / num) return kSaturated;
    out = out * num / i;
  }
  return out;
}

void check_common(const DiGraph& g, VertexId s, int lambda, int k) {
  if (!g.has_vertex(s)) throw std::invalid_argument("source out of range");
  if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
}

// The fault sets of one exhaustive run in enumeration order, flattened with
// stride max(k, 1).
struct Enumeration {
  std::size_t count = 0;
  std::vector<std::uint32_t> sizes;
  std::vector<EdgeId> flat;
  std::size_t stride = 0;

  std::span<const EdgeId> at(std::size_t i) const {
    return {flat.data() + i * stride, sizes[i]};
  }
};

Enumeration enumerate_fault_sets(std::span<const EdgeId> edges, int k) {
  Enumeration en;
  en.stride = static_cast<std::size_t>(std::max(k, 1));
  const std::size_t m = edges.size();
  for (int size = 0; size <= k && static_cast<std::size_t>(size) <= m;
       ++size) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(size));
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    while (true) {
      en.sizes.push_back(static_cast<std::uint32_t>(size));
      for (std::size_t i = 0; i < en.stride; ++i) {
        en.flat.push_back(i < pick.size() ? edges[pick[i]] : kNoEdge);
      }
      ++en.count;
      // Advance to the next combination in lexicographic order.
      std::size_t i = pick.size();
      while (i > 0 && pick[i - 1] == m - pick.size() + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return en;
}

std::optional<Violation> check_with_mask(const DiGraph& g, const DiGraph& h,
                                         VertexId s, int lambda,
                                         std::span<const EdgeId> faults,
                                         std::vector<std::uint8_t>& mask) {
  for (EdgeId e : faults) mask[index_of(e)] = 1;
  std::optional<Violation> found;
  for (std::size_t ti = 0; ti < g.num_vertices() && !found; ++ti) {
    const VertexId t = vertex_at(ti);
    if (t == s) continue;
    const std::span<const VertexId> src(&s, 1);
    const int in_h = max_flow_avoiding(h, src, t, mask, lambda).value;
    // h is a subgraph of g, so reaching lambda in h settles this target.
    if (in_h == lambda) continue;
    const int in_g = max_flow_avoiding(g, src, t, mask, lambda).value;
    if (in_g != in_h) {
      found = Violation{{faults.begin(), faults.end()}, t, in_g, in_h};
    }
  }
  for (EdgeId e : faults) mask[index_of(e)] = 0;
  return found;
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::uint64_t pairs)
    : std::runtime_error(
          "instance too large for exhaustive verification (" +
          std::to_string(pairs) + " fault-set/destination pairs)"),
      pairs_(pairs) {}

std::uint64_t verification_pairs(std::size_t num_edges,
                                 std::size_t num_vertices, int k) {
  std::uint64_t sets = 0;
  for (int j = 0; j <= k; ++j) {
    sets = saturating_add(sets, binomial(num_edges, static_cast<unsigned>(j)));
  }
  const std::uint64_t targets = num_vertices > 0 ? num_vertices - 1 : 0;
  return saturating_mul(sets, targets);
}

std::optional<Violation> check_fault_set(const DiGraph& g, const DiGraph& h,
                                         VertexId s, int lambda,
                                         std::span<const EdgeId> faults) {
  if (!g.has_vertex(s)) throw std::invalid_argument("source out of range");
  if (!is_subgraph_of(h, g)) {
    throw std::invalid_argument("candidate is not a subgraph of the graph");
  }
  std::vector<EdgeId> sorted(faults.begin(), faults.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (EdgeId e : sorted) {
    if (!g.has_edge(e)) {
      throw std::invalid_argument("fault set names an unknown edge");
    }
  }
  std::vector<std::uint8_t> mask(g.edge_id_bound(), 0);
  return check_with_mask(g, h, s, lambda, sorted, mask);
}

std::optional<Violation> verify_ftbfp(const DiGraph& g, const DiGraph& h,
                                      VertexId s, int lambda, int k,
                                      const VerifyOptions& options) {
  check_common(g, s, lambda, k);
  if (!is_subgraph_of(h, g)) {
    throw std::invalid_argument("candidate is not a subgraph of the graph");
  }
  const std::uint64_t pairs =
      verification_pairs(g.num_edges(), g.num_vertices(), k);
  if (pairs > options.budget) throw BudgetExceeded(pairs);

  const Enumeration en = enumerate_fault_sets(g.edges(), k);
  const unsigned workers = std::max(1u, options.workers);
  constexpr std::size_t kChunk = 64;
  std::atomic<std::size_t> next_chunk{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  // Per worker: the enumeration index of its first hit and the witness.
  std::vector<std::optional<std::pair<std::size_t, Violation>>> hits(workers);

  auto run = [&](unsigned w) {
    std::vector<std::uint8_t> mask(g.edge_id_bound(), 0);
    while (true) {
      const std::size_t begin = next_chunk.fetch_add(1) * kChunk;
      if (begin >= en.count || begin > best.load()) return;
      const std::size_t end = std::min(en.count, begin + kChunk);
      for (std::size_t i = begin; i < end; ++i) {
        auto v = check_with_mask(g, h, s, lambda, en.at(i), mask);
        if (!v) continue;
        // Chunks are claimed in increasing order, so a worker's first hit is
        // its smallest one.
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        hits[w].emplace(i, std::move(*v));
        return;
      }
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

  std::optional<Violation> first;
  std::size_t first_index = std::numeric_limits<std::size_t>::max();
  for (auto& hit : hits) {
    if (hit && hit->first < first_index) {
      first_index = hit->first;
      first = std::move(hit->second);
    }
  }
  return first;
}

BoundsReport audit_bounds(const DiGraph& h, int lambda, int k) {
  if (lambda < 1 || k < 0 || k > 40) {
    throw std::invalid_argument("audit_bounds: invalid parameters");
  }
  BoundsReport r;
  r.in_degree_bound = (std::size_t{1} << k) * static_cast<std::size_t>(lambda);
  r.edge_bound = r.in_degree_bound * h.num_vertices();
  r.total_edges = h.num_edges();
  r.max_in_degree = h.max_in_degree();
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    if (h.in_degree(vertex_at(v)) > r.in_degree_bound) ++r.vertices_over_bound;
  }
  r.passed = r.vertices_over_bound == 0 && r.total_edges <= r.edge_bound;
  return r;
}

BoundsReport audit_bounds(const PreserverResult& r) {
  return audit_bounds(r.h, r.params.lambda, r.params.k);
}

Criticality edge_criticality(const DiGraph& g, VertexId s, int lambda, int k,
                             const DiGraph& h, EdgeId e,
                             std::span<const std::vector<EdgeId>> hints,
                             const VerifyOptions& options) {
  check_common(g, s, lambda, k);
  if (!h.has_edge(e)) {
    throw std::invalid_argument("edge_criticality: edge not in the subgraph");
  }
  const EdgeId gone[] = {e};
  const DiGraph without = remove_edges(h, gone);
  for (const auto& faults : hints) {
    if (faults.size() > static_cast<std::size_t>(k)) {
      throw std::invalid_argument("hint fault set larger than k");
    }
    if (auto v = check_fault_set(g, without, s, lambda, faults)) {
      return {true, std::move(v)};
    }
  }
  auto v = verify_ftbfp(g, without, s, lambda, k, options);
  return {v.has_value(), std::move(v)};
}

std::uint64_t decrement_pairs(const CapGraph& g, int k) {
  // ways[j] = number of decrements over the edges seen so far with total j.
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(k) + 1, 0);
  ways[0] = 1;
  for (EdgeId e : g.base.edges()) {
    std::vector<std::uint64_t> next(ways.size(), 0);
    for (std::size_t j = 0; j < ways.size(); ++j) {
      for (std::int64_t d = 0;
           d <= g.capacity(e) && j + static_cast<std::size_t>(d) < ways.size();
           ++d) {
        auto& slot = next[j + static_cast<std::size_t>(d)];
        slot = saturating_add(slot, ways[j]);
      }
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total = saturating_add(total, w);
  const std::size_t n = g.base.num_vertices();
  return saturating_mul(total, n > 0 ? n - 1 : 0);
}

std::optional<CapViolation> verify_capacitated_ftbfp(
    const CapGraph& g, const CapGraph& h, VertexId s, int lambda, int k,
    const VerifyOptions& options) {
  validate(g);
  check_common(g.base, s, lambda, k);
  if (!is_subgraph_of(h.base, g.base)) {
    throw std::invalid_argument("candidate is not a subgraph of the graph");
  }
  for (EdgeId e : h.base.edges()) {
    if (h.capacity(e) != g.capacity(e)) {
      throw std::invalid_argument("candidate changes an edge capacity");
    }
  }
  const std::uint64_t pairs = decrement_pairs(g, k);
  if (pairs > options.budget) throw BudgetExceeded(pairs);

  const auto edges = g.base.edges();
  CapGraph gd = g;
  CapGraph hd = h;
  std::vector<std::pair<EdgeId, int>> current;
  std::optional<CapViolation> found;

  auto check = [&]() {
    for (std::size_t ti = 0; ti < g.base.num_vertices(); ++ti) {
      const VertexId t = vertex_at(ti);
      if (t == s) continue;
      const int in_h = capacitated_flow_value(hd, s, t, lambda);
      if (in_h == lambda) continue;
      const int in_g = capacitated_flow_value(gd, s, t, lambda);
      if (in_g != in_h) {
        found = CapViolation{current, t, in_g, in_h};
        return;
      }
    }
  };
  // Depth-first over edges in ascending id; each edge takes a decrement
  // between 0 and min(cap, remaining budget).
  auto recurse = [&](auto&& self, std::size_t pos, int left) -> void {
    if (found) return;
    if (pos == edges.size()) {
      check();
      return;
    }
    const EdgeId e = edges[pos];
    self(self, pos + 1, left);
    const std::int64_t top = std::min<std::int64_t>(left, g.capacity(e));
    for (int d = 1; d <= top && !found; ++d) {
      gd.cap[index_of(e)] = g.capacity(e) - d;
      if (h.base.has_edge(e)) hd.cap[index_of(e)] = h.capacity(e) - d;
      current.emplace_back(e, d);
      self(self, pos + 1, left - d);
      current.pop_back();
    }
    gd.cap[index_of(e)] = g.capacity(e);
    if (h.base.has_edge(e)) hd.cap[index_of(e)] = h.capacity(e);
  };
  recurse(recurse, 0, k);
  return found;
}

}  // namespace flowpreserve
