#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flowpreserve/digraph.hpp"

namespace flowpreserve {

/// An integral unit-capacity flow: each edge in `used` carries one unit.
struct FlowAssignment {
  int value = 0;
  std::vector<EdgeId> used;  // ascending

  friend bool operator==(const FlowAssignment&, const FlowAssignment&) =
      default;
};

/// An (S, t)-cut. `a_side` holds every source and excludes t; `crossing` is
/// exactly the set of edges leaving a_side.
struct Cut {
  std::vector<VertexId> a_side;   // ascending
  std::vector<EdgeId> crossing;   // ascending
  int value = 0;

  friend bool operator==(const Cut&, const Cut&) = default;
};

/// Residual view of a flow: unused edges are forward arcs, used edges are
/// backward arcs. The view borrows the graph, which must outlive it.
class ResidualGraph {
 public:
  ResidualGraph(const DiGraph& g, const FlowAssignment& flow);

  // Vertices reachable from any of `from` along residual arcs.
  std::vector<std::uint8_t> reachable_from(
      std::span<const VertexId> from) const;
  // Vertices with a residual path into `to`.
  std::vector<std::uint8_t> reaching(VertexId to) const;

  bool has_augmenting_path(std::span<const VertexId> sources,
                           VertexId t) const;

 private:
  const DiGraph* g_;
  std::vector<std::uint8_t> used_;
};

/// Maximum flow from a source set to t by BFS augmenting paths. Sources are
/// fed by an implicit super-source of unbounded capacity. With `cap` set the
/// search stops once the value reaches it, so the result is
/// min(cap, max-flow). Adjacency is scanned in ascending EdgeId, which makes
/// the result a deterministic function of the input.
///
/// Throws std::invalid_argument if t is a source or any vertex is out of
/// range, or if cap is negative.
FlowAssignment max_flow(const DiGraph& g, std::span<const VertexId> sources,
                        VertexId t, std::optional<int> cap = std::nullopt);
FlowAssignment max_flow(const DiGraph& g, VertexId s, VertexId t,
                        std::optional<int> cap = std::nullopt);

/// max_flow on g minus every edge e with blocked[e] != 0. An empty mask
/// blocks nothing; otherwise it must cover the whole id space.
FlowAssignment max_flow_avoiding(const DiGraph& g,
                                 std::span<const VertexId> sources, VertexId t,
                                 std::span<const std::uint8_t> blocked,
                                 std::optional<int> cap = std::nullopt);

/// Minimum cut whose source side is the residual-reachable set of the sources.
Cut nearest_min_cut(const DiGraph& g, std::span<const VertexId> sources,
                    VertexId t);
Cut nearest_min_cut(const DiGraph& g, VertexId s, VertexId t);

/// Minimum cut whose sink side is the set of vertices residually reaching t.
Cut farthest_min_cut(const DiGraph& g, std::span<const VertexId> sources,
                     VertexId t);
Cut farthest_min_cut(const DiGraph& g, VertexId s, VertexId t);

/// Cut with the given source side (any membership vector of size n).
Cut cut_of(const DiGraph& g, const std::vector<std::uint8_t>& a_side);

using Path = std::vector<EdgeId>;

/// Splits a flow into `flow.value` edge-disjoint source-to-t paths. Flow
/// cycles are dropped. Throws std::logic_error if `flow` violates
/// conservation or is not a flow of g.
std::vector<Path> decompose_paths(const DiGraph& g,
                                  std::span<const VertexId> sources,
                                  VertexId t, const FlowAssignment& flow);

/// Max-flow on a capacitated graph, computed on its unit multigraph
/// expansion and capped like max_flow.
int capacitated_flow_value(const CapGraph& g, VertexId s, VertexId t,
                           std::optional<int> cap = std::nullopt);

}  // namespace flowpreserve
