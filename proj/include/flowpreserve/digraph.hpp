#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "flowpreserve/ids.hpp"

namespace flowpreserve {

struct EdgeEnds {
  VertexId tail;
  VertexId head;

  friend bool operator==(const EdgeEnds&, const EdgeEnds&) = default;
};

class DiGraphBuilder;

/// Immutable directed multigraph with stable edge identifiers.
///
/// Edge ids live in [0, edge_id_bound()). Ids of deleted edges stay vacant, so
/// a subgraph shares the id space of the graph it was cut from. Adjacency
/// lists are kept in ascending EdgeId order; every algorithm in the library
/// relies on that for determinism.
class DiGraph {
 public:
  DiGraph() = default;
  explicit DiGraph(std::size_t num_vertices);

  std::size_t num_vertices() const noexcept { return in_.size(); }
  std::size_t num_edges() const noexcept { return ids_.size(); }
  std::size_t edge_id_bound() const noexcept { return ends_.size(); }

  bool has_vertex(VertexId v) const noexcept {
    return index_of(v) < num_vertices();
  }
  bool has_edge(EdgeId e) const noexcept {
    return index_of(e) < present_.size() && present_[index_of(e)] != 0;
  }

  // Endpoints of a present edge. Undefined for vacant ids.
  VertexId tail(EdgeId e) const noexcept { return ends_[index_of(e)].tail; }
  VertexId head(EdgeId e) const noexcept { return ends_[index_of(e)].head; }
  EdgeEnds ends(EdgeId e) const noexcept { return ends_[index_of(e)]; }

  // Present edge ids in ascending order.
  std::span<const EdgeId> edges() const noexcept { return ids_; }

  std::span<const EdgeId> in_edges(VertexId v) const noexcept {
    return in_[index_of(v)];
  }
  std::span<const EdgeId> out_edges(VertexId v) const noexcept {
    return out_[index_of(v)];
  }
  std::size_t in_degree(VertexId v) const noexcept {
    return in_[index_of(v)].size();
  }
  std::size_t out_degree(VertexId v) const noexcept {
    return out_[index_of(v)].size();
  }

  // Distinct neighbours, ascending.
  std::vector<VertexId> in_neighbors(VertexId v) const;
  std::vector<VertexId> out_neighbors(VertexId v) const;

  std::size_t max_in_degree() const noexcept;
  std::size_t max_out_degree() const noexcept;

  friend bool operator==(const DiGraph& a, const DiGraph& b);

 private:
  friend class DiGraphBuilder;

  std::vector<EdgeEnds> ends_;
  std::vector<std::uint8_t> present_;
  std::vector<EdgeId> ids_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::vector<EdgeId>> out_;
};

/// Mutable staging area for building a DiGraph edge by edge.
class DiGraphBuilder {
 public:
  explicit DiGraphBuilder(std::size_t num_vertices);
  // Starts from an existing graph, keeping its ids and vacancies.
  explicit DiGraphBuilder(DiGraph base);

  std::size_t num_vertices() const noexcept { return graph_.num_vertices(); }
  VertexId add_vertex();
  // Returns the next fresh id. Throws std::invalid_argument on a bad endpoint.
  EdgeId add_edge(VertexId tail, VertexId head);
  // Marks a present edge vacant.
  void remove_edge(EdgeId e);

  DiGraph build() &&;

 private:
  DiGraph graph_;
};

// Graph surgery. All of these return new values and leave ids untouched.

/// Replaces In-Edges(v) by `keep`. Every id in `keep` must be an in-edge of v.
DiGraph restrict_in_edges(const DiGraph& g, VertexId v,
                          std::span<const EdgeId> keep);

/// g \ f. Throws std::invalid_argument for ids not present in g.
DiGraph remove_edges(const DiGraph& g, std::span<const EdgeId> f);

/// g + (u, v); the new edge receives id g.edge_id_bound().
std::pair<DiGraph, EdgeId> add_edge(const DiGraph& g, VertexId u, VertexId v);

/// True if every present edge of `sub` is present in `g` with the same ends
/// and both have the same vertex count.
bool is_subgraph_of(const DiGraph& sub, const DiGraph& g);

/// Maps a graph whose ids were renumbered (e.g. after a trip through the
/// edge-list format) onto the ids of `g`. Edges are matched by endpoints,
/// consuming g's parallel copies in ascending id order. Throws
/// std::invalid_argument if `sub` is not a sub-multigraph of g.
DiGraph embed_subgraph(const DiGraph& g, const DiGraph& sub);

/// Unit topology plus a positive integer capacity per edge.
struct CapGraph {
  DiGraph base;
  std::vector<std::int64_t> cap;  // indexed by EdgeId; 0 at vacant ids

  std::int64_t capacity(EdgeId e) const { return cap[index_of(e)]; }
  friend bool operator==(const CapGraph&, const CapGraph&) = default;
};

/// Throws std::invalid_argument if a present edge has capacity < 1 or the
/// capacity vector does not cover the id space.
void validate(const CapGraph& g);

struct Multigraph {
  DiGraph graph;
  std::vector<EdgeId> origin;  // expanded edge id -> CapGraph edge id
};

/// Replaces every edge e by cap(e) parallel unit edges. Copies of one edge
/// receive consecutive ids, edges taken in ascending id order. A capacity of
/// zero (a fully decremented edge) contributes no copies.
Multigraph expand_to_multigraph(const CapGraph& g);

}  // namespace flowpreserve
