#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flowpreserve/digraph.hpp"

namespace flowpreserve {

// ---------------------------------------------------------------------------
// Lower-bound family
// ---------------------------------------------------------------------------

/// s feeds the roots of lambda complete binary trees of height k; every leaf
/// points to every vertex of Y. Every edge is needed by any preserver.
///
/// Layout: vertex 0 is s; tree i occupies the 2^(k+1)-1 ids starting at
/// 1 + i*(2^(k+1)-1) in heap order (root first); Y is the remaining tail of
/// the id range. Edge ids: (s, r_i) for each i, then the tree edges of each
/// tree in heap order, then X x Y leaf-major.
struct LowerBoundInstance {
  DiGraph g;
  VertexId source = kNoVertex;
  int lambda = 0;
  int k = 0;
  std::vector<VertexId> roots;
  std::vector<std::vector<VertexId>> trees;      // heap order
  std::vector<std::vector<EdgeId>> tree_edges;   // [i][j-1]: edge into node j
  std::vector<EdgeId> root_edges;                // (s, r_i)
  std::vector<VertexId> leaves;                  // X, tree-major
  std::vector<VertexId> sinks;                   // Y

  EdgeId bipartite_edge(std::size_t leaf, std::size_t sink) const;
  std::size_t num_bipartite_edges() const {
    return leaves.size() * sinks.size();
  }
};

/// Throws std::invalid_argument unless lambda >= 1, k >= 0 and
/// n >= 3 * lambda * 2^k.
LowerBoundInstance lower_bound_instance(int lambda, int k, std::size_t n);

/// The k sibling edges hanging off the root-to-leaf path of leaf `leaf`
/// (index into `leaves`). Failing them leaves that leaf as the only one of its
/// tree still reachable from s.
std::vector<EdgeId> lower_bound_fault_set(const LowerBoundInstance& inst,
                                          std::size_t leaf);

std::string layout_json(const LowerBoundInstance& inst);

// ---------------------------------------------------------------------------
// Set cover reduction
// ---------------------------------------------------------------------------

struct SetCoverInstance {
  std::size_t universe_size = 0;
  std::vector<std::vector<std::size_t>> sets;  // element indices, ascending
};

/// Text format: first line "|U| |F|", then one line per set listing its
/// elements (0-indexed, space separated; an empty line is an empty set).
SetCoverInstance parse_set_cover(std::string_view text);

bool is_cover(const SetCoverInstance& sc, std::span<const std::size_t> chosen);

/// One of the lambda copies of the gadget built from the set system.
struct HardnessGadget {
  VertexId root = kNoVertex;
  std::vector<VertexId> tree;          // heap order, height u
  std::vector<VertexId> leaf;          // per padded element
  std::vector<VertexId> left;          // l(x) per padded element
  std::vector<VertexId> right;         // r(x) per padded element
  std::vector<VertexId> set_vertex;    // y_{i,W} per set
  std::vector<VertexId> z;             // u + 1 vertices
  EdgeId root_edge = kNoEdge;                  // (s, r_i)
  std::vector<EdgeId> tree_edges;      // [j-1]: edge into heap node j
  std::vector<EdgeId> leaf_to_right;   // (x, r(x)) per padded element
};

/// Layout: vertex 0 is s, vertices 1..N are the sinks v_1..v_N, then one
/// block per gadget holding its tree (heap order), the l(x) vertices, the
/// r(x) vertices, the y_{i,W} vertices and Z_i, in that order.
struct HardnessInstance {
  DiGraph g;
  VertexId source = kNoVertex;
  int lambda = 0;
  int u = 0;  // padded universe has 2^u elements
  int k = 0;  // u + 1
  std::size_t original_universe = 0;
  SetCoverInstance padded;
  std::vector<VertexId> sinks;
  std::vector<HardnessGadget> gadgets;
};

/// Builds the reduction graph. The universe is padded to a power of two with
/// elements appended at the high end and added to every set; there are
/// N = 4 * lambda * (|F| + |U|) sinks, |U| counted after padding.
/// Throws std::invalid_argument if the sets do not cover the universe, the
/// universe is empty or lambda < 1.
HardnessInstance hardness_instance(const SetCoverInstance& sc, int lambda);

/// The k = u + 1 edge fault set isolating `element` in gadget `gadget`: the
/// sibling edges off the tree path to its leaf plus (x, r(x)).
std::vector<EdgeId> hardness_fault_set(const HardnessInstance& hi,
                                       std::size_t gadget,
                                       std::size_t element);

/// Keeps, at every sink, only the in-edges from Z_i and from y_{i,W} with W in
/// `cover`. Each sink ends with in-degree lambda * (|cover| + k).
/// Throws std::invalid_argument if `cover` is not a cover.
DiGraph cover_to_preserver(const HardnessInstance& hi,
                           std::span<const std::size_t> cover);

/// Reads a cover off a preserver: at the sink of least in-degree, the sets
/// whose y-vertex still feeds it, taking the smallest of the lambda
/// candidates. A cover of size at most in-degree / lambda when h is a valid
/// preserver of hi.g. Result ascending.
std::vector<std::size_t> preserver_to_cover(const HardnessInstance& hi,
                                            const DiGraph& h);

std::string layout_json(const HardnessInstance& hi);

// ---------------------------------------------------------------------------
// Random graphs
// ---------------------------------------------------------------------------

/// Simple digraph (no loops, no parallel edges) with m edges drawn uniformly
/// by a partial Fisher-Yates shuffle over the n(n-1) ordered pairs, driven by
/// SplitMix64(seed). Pair p is (p / (n-1), r) with r = p % (n-1) bumped by one
/// when r >= tail. Edges are emitted sorted by (tail, head).
/// Throws std::invalid_argument if m > n(n-1).
DiGraph random_digraph(std::size_t n, std::size_t m, std::uint64_t seed);

/// random_digraph's topology followed by capacities 1 + next() % cmax drawn
/// from the same stream in edge-id order.
CapGraph random_capgraph(std::size_t n, std::size_t m, std::int64_t cmax,
                         std::uint64_t seed);

}  // namespace flowpreserve
