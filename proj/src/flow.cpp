#include "flowpreserve/flow.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace flowpreserve {
namespace {

std::vector<VertexId> normalized_sources(const DiGraph& g,
                                         std::span<const VertexId> sources,
                                         VertexId t) {
  if (!g.has_vertex(t)) throw std::invalid_argument("sink out of range");
  std::vector<VertexId> out(sources.begin(), sources.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (VertexId s : out) {
    if (!g.has_vertex(s)) throw std::invalid_argument("source out of range");
    if (s == t) throw std::invalid_argument("sink is one of the sources");
  }
  return out;
}

constexpr std::size_t kNoSlot = static_cast<std::size_t>(-1);

// One BFS over the residual graph from all sources. On success flips the
// arcs of the shortest augmenting path found and returns true.
bool augment_once(const DiGraph& g, std::span<const VertexId> sources,
                  VertexId t, std::span<const std::uint8_t> blocked,
                  std::vector<std::uint8_t>& used,
                  std::vector<std::size_t>& via,
                  std::vector<std::uint8_t>& seen,
                  std::deque<VertexId>& queue) {
  std::fill(seen.begin(), seen.end(), 0);
  std::fill(via.begin(), via.end(), kNoSlot);
  queue.clear();
  for (VertexId s : sources) {
    seen[index_of(s)] = 1;
    queue.push_back(s);
  }
  const std::size_t ti = index_of(t);
  while (!queue.empty() && !seen[ti]) {
    const VertexId u = queue.front();
    queue.pop_front();
    for (EdgeId e : g.out_edges(u)) {
      const std::size_t w = index_of(g.head(e));
      if (used[index_of(e)] || seen[w]) continue;
      if (!blocked.empty() && blocked[index_of(e)]) continue;
      seen[w] = 1;
      via[w] = index_of(e);
      if (w == ti) break;
      queue.push_back(g.head(e));
    }
    if (seen[ti]) break;
    for (EdgeId e : g.in_edges(u)) {
      const std::size_t w = index_of(g.tail(e));
      if (!used[index_of(e)] || seen[w]) continue;
      seen[w] = 1;
      via[w] = index_of(e);
      queue.push_back(g.tail(e));
    }
  }
  if (!seen[ti]) return false;
  std::size_t v = ti;
  while (via[v] != kNoSlot) {
    const std::size_t e = via[v];
    const EdgeId id = edge_at(e);
    if (used[e]) {
      // Backward arc: we arrived at tail(e) from head(e).
      used[e] = 0;
      v = index_of(g.head(id));
    } else {
      used[e] = 1;
      v = index_of(g.tail(id));
    }
  }
  return true;
}

std::vector<EdgeId> collect(const std::vector<std::uint8_t>& flags) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) out.push_back(edge_at(i));
  }
  return out;
}

}  // namespace

ResidualGraph::ResidualGraph(const DiGraph& g, const FlowAssignment& flow)
    : g_(&g), used_(g.edge_id_bound(), 0) {
  for (EdgeId e : flow.used) {
    if (!g.has_edge(e)) {
      throw std::invalid_argument("flow uses an edge not in the graph");
    }
    used_[index_of(e)] = 1;
  }
}

std::vector<std::uint8_t> ResidualGraph::reachable_from(
    std::span<const VertexId> from) const {
  const DiGraph& g = *g_;
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  std::vector<VertexId> stack;
  for (VertexId v : from) {
    if (!seen[index_of(v)]) {
      seen[index_of(v)] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (EdgeId e : g.out_edges(u)) {
      if (used_[index_of(e)] || seen[index_of(g.head(e))]) continue;
      seen[index_of(g.head(e))] = 1;
      stack.push_back(g.head(e));
    }
    for (EdgeId e : g.in_edges(u)) {
      if (!used_[index_of(e)] || seen[index_of(g.tail(e))]) continue;
      seen[index_of(g.tail(e))] = 1;
      stack.push_back(g.tail(e));
    }
  }
  return seen;
}

std::vector<std::uint8_t> ResidualGraph::reaching(VertexId to) const {
  const DiGraph& g = *g_;
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  std::vector<VertexId> stack{to};
  seen[index_of(to)] = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    // Residual arc u->v: an unused edge (u,v) or a used edge (v,u).
    for (EdgeId e : g.in_edges(v)) {
      if (used_[index_of(e)] || seen[index_of(g.tail(e))]) continue;
      seen[index_of(g.tail(e))] = 1;
      stack.push_back(g.tail(e));
    }
    for (EdgeId e : g.out_edges(v)) {
      if (!used_[index_of(e)] || seen[index_of(g.head(e))]) continue;
      seen[index_of(g.head(e))] = 1;
      stack.push_back(g.head(e));
    }
  }
  return seen;
}

bool ResidualGraph::has_augmenting_path(std::span<const VertexId> sources,
                                        VertexId t) const {
  return reachable_from(sources)[index_of(t)] != 0;
}

FlowAssignment max_flow(const DiGraph& g, std::span<const VertexId> sources,
                        VertexId t, std::optional<int> cap) {
  return max_flow_avoiding(g, sources, t, {}, cap);
}

FlowAssignment max_flow_avoiding(const DiGraph& g,
                                 std::span<const VertexId> sources, VertexId t,
                                 std::span<const std::uint8_t> blocked,
                                 std::optional<int> cap) {
  const auto srcs = normalized_sources(g, sources, t);
  if (cap && *cap < 0) throw std::invalid_argument("negative flow cap");
  if (!blocked.empty() && blocked.size() < g.edge_id_bound()) {
    throw std::invalid_argument("blocked mask does not cover every edge id");
  }

  std::vector<std::uint8_t> used(g.edge_id_bound(), 0);
  std::vector<std::size_t> via(g.num_vertices(), kNoSlot);
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  std::deque<VertexId> queue;
  FlowAssignment flow;
  while ((!cap || flow.value < *cap) && !srcs.empty() &&
         augment_once(g, srcs, t, blocked, used, via, seen, queue)) {
    ++flow.value;
  }
  flow.used = collect(used);
  return flow;
}

FlowAssignment max_flow(const DiGraph& g, VertexId s, VertexId t,
                        std::optional<int> cap) {
  return max_flow(g, std::span<const VertexId>(&s, 1), t, cap);
}

Cut cut_of(const DiGraph& g, const std::vector<std::uint8_t>& a_side) {
  Cut cut;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (a_side[v]) cut.a_side.push_back(vertex_at(v));
  }
  for (EdgeId e : g.edges()) {
    if (a_side[index_of(g.tail(e))] && !a_side[index_of(g.head(e))]) {
      cut.crossing.push_back(e);
    }
  }
  cut.value = static_cast<int>(cut.crossing.size());
  return cut;
}

Cut nearest_min_cut(const DiGraph& g, std::span<const VertexId> sources,
                    VertexId t) {
  const auto srcs = normalized_sources(g, sources, t);
  const FlowAssignment flow = max_flow(g, srcs, t);
  return cut_of(g, ResidualGraph(g, flow).reachable_from(srcs));
}

Cut nearest_min_cut(const DiGraph& g, VertexId s, VertexId t) {
  return nearest_min_cut(g, std::span<const VertexId>(&s, 1), t);
}

Cut farthest_min_cut(const DiGraph& g, std::span<const VertexId> sources,
                     VertexId t) {
  const auto srcs = normalized_sources(g, sources, t);
  const FlowAssignment flow = max_flow(g, srcs, t);
  std::vector<std::uint8_t> side = ResidualGraph(g, flow).reaching(t);
  for (auto& x : side) x = !x;
  return cut_of(g, side);
}

Cut farthest_min_cut(const DiGraph& g, VertexId s, VertexId t) {
  return farthest_min_cut(g, std::span<const VertexId>(&s, 1), t);
}

std::vector<Path> decompose_paths(const DiGraph& g,
                                  std::span<const VertexId> sources,
                                  VertexId t, const FlowAssignment& flow) {
  const auto srcs = normalized_sources(g, sources, t);
  const std::size_t n = g.num_vertices();
  std::vector<std::uint8_t> used(g.edge_id_bound(), 0);
  std::vector<int> balance(n, 0);  // out-flow minus in-flow
  for (EdgeId e : flow.used) {
    if (!g.has_edge(e) || used[index_of(e)]) {
      throw std::logic_error("flow lists an unknown or repeated edge");
    }
    used[index_of(e)] = 1;
    ++balance[index_of(g.tail(e))];
    --balance[index_of(g.head(e))];
  }
  std::vector<std::uint8_t> is_source(n, 0);
  for (VertexId s : srcs) is_source[index_of(s)] = 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (vertex_at(v) == t || is_source[v]) continue;
    if (balance[v] != 0) {
      throw std::logic_error("flow violates conservation at vertex " +
                             std::to_string(v));
    }
  }
  if (-balance[index_of(t)] != flow.value) {
    throw std::logic_error("flow value does not match the in-flow at t");
  }

  std::vector<std::size_t> cursor(n, 0);  // next out-edge slot to try
  std::vector<std::size_t> position(n, kNoSlot);
  std::vector<Path> paths;
  for (VertexId s : srcs) {
    for (int excess = balance[index_of(s)]; excess > 0; --excess) {
      Path path;
      std::vector<VertexId> visited{s};
      position[index_of(s)] = 0;
      VertexId cur = s;
      while (cur != t) {
        const auto outs = g.out_edges(cur);
        std::size_t& c = cursor[index_of(cur)];
        while (c < outs.size() && !used[index_of(outs[c])]) ++c;
        if (c == outs.size()) {
          throw std::logic_error("flow path ends before reaching t");
        }
        const EdgeId e = outs[c];
        used[index_of(e)] = 0;
        const VertexId next = g.head(e);
        const std::size_t at = position[index_of(next)];
        if (at != kNoSlot) {
          // Closed a cycle: drop it and resume from `next`.
          for (std::size_t i = at + 1; i < visited.size(); ++i) {
            position[index_of(visited[i])] = kNoSlot;
          }
          visited.resize(at + 1);
          path.resize(at);
        } else {
          position[index_of(next)] = visited.size();
          visited.push_back(next);
          path.push_back(e);
        }
        cur = next;
      }
      for (VertexId v : visited) position[index_of(v)] = kNoSlot;
      paths.push_back(std::move(path));
    }
  }
  if (static_cast<int>(paths.size()) != flow.value) {
    throw std::logic_error("flow value does not match the source out-flow");
  }
  return paths;
}

int capacitated_flow_value(const CapGraph& g, VertexId s, VertexId t,
                           std::optional<int> cap) {
  const Multigraph m = expand_to_multigraph(g);
  return max_flow(m.graph, s, t, cap).value;
}

}  // namespace flowpreserve
