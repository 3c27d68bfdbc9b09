#include "flowpreserve/digraph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace flowpreserve {
namespace {

std::vector<VertexId> distinct_ends(const DiGraph& g,
                                    std::span<const EdgeId> edges,
                                    bool take_tail) {
  std::vector<VertexId> out;
  out.reserve(edges.size());
  for (EdgeId e : edges) out.push_back(take_tail ? g.tail(e) : g.head(e));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void erase_sorted(std::vector<EdgeId>& list, EdgeId e) {
  auto it = std::lower_bound(list.begin(), list.end(), e);
  if (it != list.end() && *it == e) list.erase(it);
}

std::string id_text(EdgeId e) { return std::to_string(index_of(e)); }

}  // namespace

DiGraph::DiGraph(std::size_t num_vertices)
    : in_(num_vertices), out_(num_vertices) {}

std::vector<VertexId> DiGraph::in_neighbors(VertexId v) const {
  return distinct_ends(*this, in_edges(v), /*take_tail=*/true);
}

std::vector<VertexId> DiGraph::out_neighbors(VertexId v) const {
  return distinct_ends(*this, out_edges(v), /*take_tail=*/false);
}

std::size_t DiGraph::max_in_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& list : in_) best = std::max(best, list.size());
  return best;
}

std::size_t DiGraph::max_out_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& list : out_) best = std::max(best, list.size());
  return best;
}

bool operator==(const DiGraph& a, const DiGraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.ids_ != b.ids_ ||
      a.edge_id_bound() != b.edge_id_bound()) {
    return false;
  }
  for (EdgeId e : a.ids_) {
    if (a.ends(e) != b.ends(e)) return false;
  }
  return true;
}

DiGraphBuilder::DiGraphBuilder(std::size_t num_vertices)
    : graph_(num_vertices) {}

DiGraphBuilder::DiGraphBuilder(DiGraph base) : graph_(std::move(base)) {}

VertexId DiGraphBuilder::add_vertex() {
  graph_.in_.emplace_back();
  graph_.out_.emplace_back();
  return vertex_at(graph_.in_.size() - 1);
}

EdgeId DiGraphBuilder::add_edge(VertexId tail, VertexId head) {
  if (!graph_.has_vertex(tail) || !graph_.has_vertex(head)) {
    throw std::invalid_argument("add_edge: vertex out of range");
  }
  const EdgeId id = edge_at(graph_.ends_.size());
  graph_.ends_.push_back({tail, head});
  graph_.present_.push_back(1);
  // Fresh ids are the largest so far; appending keeps every list sorted.
  graph_.ids_.push_back(id);
  graph_.out_[index_of(tail)].push_back(id);
  graph_.in_[index_of(head)].push_back(id);
  return id;
}

void DiGraphBuilder::remove_edge(EdgeId e) {
  if (!graph_.has_edge(e)) {
    throw std::invalid_argument("remove_edge: unknown edge id " + id_text(e));
  }
  graph_.present_[index_of(e)] = 0;
  erase_sorted(graph_.ids_, e);
  erase_sorted(graph_.out_[index_of(graph_.tail(e))], e);
  erase_sorted(graph_.in_[index_of(graph_.head(e))], e);
}

DiGraph DiGraphBuilder::build() && { return std::move(graph_); }

DiGraph restrict_in_edges(const DiGraph& g, VertexId v,
                          std::span<const EdgeId> keep) {
  if (!g.has_vertex(v)) {
    throw std::invalid_argument("restrict_in_edges: vertex out of range");
  }
  std::vector<EdgeId> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (EdgeId e : kept) {
    if (!g.has_edge(e) || g.head(e) != v) {
      throw std::invalid_argument("restrict_in_edges: edge " + id_text(e) +
                                  " is not an in-edge of the vertex");
    }
  }
  DiGraphBuilder b(g);
  for (EdgeId e : g.in_edges(v)) {
    if (!std::binary_search(kept.begin(), kept.end(), e)) b.remove_edge(e);
  }
  return std::move(b).build();
}

DiGraph remove_edges(const DiGraph& g, std::span<const EdgeId> f) {
  for (EdgeId e : f) {
    if (!g.has_edge(e)) {
      throw std::invalid_argument("remove_edges: unknown edge id " +
                                  id_text(e));
    }
  }
  DiGraphBuilder b(g);
  std::vector<EdgeId> doomed(f.begin(), f.end());
  std::sort(doomed.begin(), doomed.end());
  doomed.erase(std::unique(doomed.begin(), doomed.end()), doomed.end());
  for (EdgeId e : doomed) b.remove_edge(e);
  return std::move(b).build();
}

std::pair<DiGraph, EdgeId> add_edge(const DiGraph& g, VertexId u, VertexId v) {
  DiGraphBuilder b(g);
  const EdgeId id = b.add_edge(u, v);
  return {std::move(b).build(), id};
}

bool is_subgraph_of(const DiGraph& sub, const DiGraph& g) {
  if (sub.num_vertices() != g.num_vertices()) return false;
  for (EdgeId e : sub.edges()) {
    if (!g.has_edge(e) || g.ends(e) != sub.ends(e)) return false;
  }
  return true;
}

DiGraph embed_subgraph(const DiGraph& g, const DiGraph& sub) {
  if (sub.num_vertices() != g.num_vertices()) {
    throw std::invalid_argument("embed_subgraph: vertex counts differ");
  }
  // Unused copies of each (tail, head) pair, in ascending id order.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<EdgeId>>
      pool;
  for (auto it = g.edges().rbegin(); it != g.edges().rend(); ++it) {
    pool[{static_cast<std::uint32_t>(g.tail(*it)),
          static_cast<std::uint32_t>(g.head(*it))}]
        .push_back(*it);
  }
  std::vector<std::uint8_t> keep(g.edge_id_bound(), 0);
  for (EdgeId e : sub.edges()) {
    auto& copies = pool[{static_cast<std::uint32_t>(sub.tail(e)),
                         static_cast<std::uint32_t>(sub.head(e))}];
    if (copies.empty()) {
      throw std::invalid_argument(
          "embed_subgraph: edge " + std::to_string(index_of(sub.tail(e))) +
          "->" + std::to_string(index_of(sub.head(e))) +
          " has no unused counterpart in the base graph");
    }
    keep[index_of(copies.back())] = 1;
    copies.pop_back();
  }
  DiGraphBuilder b(g);
  for (EdgeId e : g.edges()) {
    if (!keep[index_of(e)]) b.remove_edge(e);
  }
  return std::move(b).build();
}

void validate(const CapGraph& g) {
  if (g.cap.size() < g.base.edge_id_bound()) {
    throw std::invalid_argument("capacity table does not cover every edge");
  }
  for (EdgeId e : g.base.edges()) {
    if (g.capacity(e) < 1) {
      throw std::invalid_argument("edge " + id_text(e) +
                                  " has nonpositive capacity");
    }
  }
}

Multigraph expand_to_multigraph(const CapGraph& g) {
  DiGraphBuilder b(g.base.num_vertices());
  std::vector<EdgeId> origin;
  for (EdgeId e : g.base.edges()) {
    for (std::int64_t c = 0; c < g.capacity(e); ++c) {
      b.add_edge(g.base.tail(e), g.base.head(e));
      origin.push_back(e);
    }
  }
  return {std::move(b).build(), std::move(origin)};
}

}  // namespace flowpreserve
