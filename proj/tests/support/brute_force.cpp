#include "brute_force.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace brute {
namespace {

using flowpreserve::edge_at;
using flowpreserve::index_of;
using flowpreserve::vertex_at;

bool blocked(std::span<const std::uint8_t> removed, EdgeId e) {
  return !removed.empty() && removed[index_of(e)];
}

template <typename Weight>
Weight min_cut_impl(const DiGraph& g, std::uint32_t must_in, VertexId t,
                    Weight (*weight)(const void*, EdgeId), const void* ctx,
                    std::vector<std::uint32_t>* all_min) {
  const std::size_t n = g.num_vertices();
  if (n > 20) throw std::invalid_argument("brute min cut: graph too large");
  const std::uint32_t tbit = 1U << index_of(t);
  Weight best = std::numeric_limits<Weight>::max();
  for (std::uint32_t a = 0; a < (1U << n); ++a) {
    if ((a & must_in) != must_in || (a & tbit)) continue;
    Weight w = 0;
    for (EdgeId e : g.edges()) {
      bool tail_in = a >> index_of(g.tail(e)) & 1U;
      bool head_in = a >> index_of(g.head(e)) & 1U;
      if (tail_in && !head_in) w += weight(ctx, e);
    }
    if (w < best) {
      best = w;
      if (all_min) all_min->clear();
    }
    if (all_min && w == best) all_min->push_back(a);
  }
  return best;
}

std::uint32_t mask_of(std::span<const VertexId> vs) {
  std::uint32_t m = 0;
  for (VertexId v : vs) m |= 1U << index_of(v);
  return m;
}

}  // namespace

int min_cut_value(const DiGraph& g, std::span<const VertexId> sources,
                  VertexId t, std::span<const std::uint8_t> removed) {
  auto w = [](const void* ctx, EdgeId e) -> int {
    auto r = *static_cast<const std::span<const std::uint8_t>*>(ctx);
    return blocked(r, e) ? 0 : 1;
  };
  return min_cut_impl<int>(g, mask_of(sources), t, w, &removed, nullptr);
}

int min_cut_value(const DiGraph& g, VertexId s, VertexId t,
                  std::span<const std::uint8_t> removed) {
  const VertexId src[] = {s};
  return min_cut_value(g, src, t, removed);
}

std::int64_t min_cut_value(const CapGraph& g, VertexId s, VertexId t,
                           std::span<const std::int64_t> decrement) {
  struct Ctx {
    const CapGraph* g;
    std::span<const std::int64_t> dec;
  } ctx{&g, decrement};
  auto w = [](const void* c, EdgeId e) -> std::int64_t {
    auto* x = static_cast<const Ctx*>(c);
    std::int64_t cap = x->g->cap[index_of(e)];
    if (!x->dec.empty()) cap -= x->dec[index_of(e)];
    return std::max<std::int64_t>(cap, 0);
  };
  return min_cut_impl<std::int64_t>(g.base, 1U << index_of(s), t, w, &ctx,
                                    nullptr);
}

std::vector<std::uint32_t> min_cut_sides(const DiGraph& g,
                                         std::span<const VertexId> sources,
                                         VertexId t) {
  std::vector<std::uint32_t> sides;
  auto w = [](const void*, EdgeId) -> int { return 1; };
  min_cut_impl<int>(g, mask_of(sources), t, w, nullptr, &sides);
  return sides;
}

int disjoint_path_packing(const DiGraph& g, VertexId s, VertexId t) {
  // Enumerate simple paths as edge bitmasks.
  if (g.edge_id_bound() > 64)
    throw std::invalid_argument("path packing: too many edges");
  std::vector<std::uint64_t> paths;
  std::vector<std::uint8_t> on_path(g.num_vertices(), 0);
  std::function<void(VertexId, std::uint64_t)> walk = [&](VertexId v,
                                                          std::uint64_t used) {
    if (v == t) {
      paths.push_back(used);
      return;
    }
    on_path[index_of(v)] = 1;
    for (EdgeId e : g.out_edges(v)) {
      VertexId w = g.head(e);
      if (!on_path[index_of(w)]) walk(w, used | (1ULL << index_of(e)));
    }
    on_path[index_of(v)] = 0;
  };
  if (s == t) return 0;
  walk(s, 0);

  int best = 0;
  std::function<void(std::size_t, std::uint64_t, int)> pack =
      [&](std::size_t from, std::uint64_t taken, int count) {
        best = std::max(best, count);
        for (std::size_t i = from; i < paths.size(); ++i)
          if ((paths[i] & taken) == 0) pack(i + 1, taken | paths[i], count + 1);
      };
  pack(0, 0, 0);
  return best;
}

std::vector<std::uint8_t> reachable(const DiGraph& g, VertexId s,
                                    std::span<const std::uint8_t> removed) {
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  std::vector<VertexId> stack{s};
  seen[index_of(s)] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.out_edges(v)) {
      if (blocked(removed, e)) continue;
      VertexId w = g.head(e);
      if (!seen[index_of(w)]) {
        seen[index_of(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<std::vector<EdgeId>> fault_sets(const DiGraph& g, int k) {
  std::vector<EdgeId> edges(g.edges().begin(), g.edges().end());
  std::vector<std::vector<EdgeId>> out;
  std::vector<EdgeId> cur;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == k) return;
    for (std::size_t i = from; i < edges.size(); ++i) {
      cur.push_back(edges[i]);
      grow(i + 1);
      cur.pop_back();
    }
  };
  grow(0);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::optional<Mismatch> check_preserver(const DiGraph& g, const DiGraph& h,
                                        VertexId s, int lambda, int k) {
  for (const auto& f : fault_sets(g, k)) {
    std::vector<std::uint8_t> removed(g.edge_id_bound(), 0);
    for (EdgeId e : f) removed[index_of(e)] = 1;
    for (std::size_t t = 0; t < g.num_vertices(); ++t) {
      if (vertex_at(t) == s) continue;
      int in_g = std::min(lambda, min_cut_value(g, s, vertex_at(t), removed));
      int in_h = std::min(lambda, min_cut_value(h, s, vertex_at(t), removed));
      if (in_g != in_h) return Mismatch{f, vertex_at(t)};
    }
  }
  return std::nullopt;
}

bool check_capacitated_preserver(const CapGraph& g, const CapGraph& h,
                                 VertexId s, int lambda, int k) {
  const std::size_t bound = g.base.edge_id_bound();
  std::vector<EdgeId> edges(g.base.edges().begin(), g.base.edges().end());
  std::vector<std::int64_t> dec(bound, 0);
  bool ok = true;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (!ok) return;
    if (i == edges.size()) {
      for (std::size_t t = 0; t < g.base.num_vertices() && ok; ++t) {
        if (vertex_at(t) == s) continue;
        auto in_g = std::min<std::int64_t>(
            lambda, min_cut_value(g, s, vertex_at(t), dec));
        auto in_h = std::min<std::int64_t>(
            lambda, min_cut_value(h, s, vertex_at(t), dec));
        if (in_g != in_h) ok = false;
      }
      return;
    }
    const std::int64_t cap = g.cap[index_of(edges[i])];
    for (std::int64_t d = 0; d <= std::min<std::int64_t>(left, cap); ++d) {
      dec[index_of(edges[i])] = d;
      rec(i + 1, left - static_cast<int>(d));
    }
    dec[index_of(edges[i])] = 0;
  };
  rec(0, k);
  return ok;
}

std::vector<DiGraph> all_simple_digraphs(std::size_t n) {
  if (n > 4) throw std::invalid_argument("all_simple_digraphs: n too large");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) pairs.emplace_back(u, v);
  std::vector<DiGraph> out;
  for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
    flowpreserve::DiGraphBuilder b(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1U)
        b.add_edge(vertex_at(pairs[i].first), vertex_at(pairs[i].second));
    out.push_back(std::move(b).build());
  }
  return out;
}

}  // namespace brute
