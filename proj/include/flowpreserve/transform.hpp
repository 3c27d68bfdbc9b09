#pragma once

#include <span>
#include <vector>

#include "flowpreserve/digraph.hpp"

namespace flowpreserve {

/// A binary tree that replaces one in-edge `in_edge` = (x, y) of a vertex y.
/// Its root is the right split vertex of that edge; its leaves are the left
/// split vertices of y's out-edges.
struct SplitTree {
  EdgeId in_edge;
  VertexId root;
  std::vector<VertexId> internal;  // non-root, non-leaf nodes
  std::vector<VertexId> leaves;    // in ascending out-edge id order
};

/// Out-degree-bounded image of a graph with respect to one (s, t) pair.
///
/// Layout of `h`: vertex 0 is s, vertex 1 is t, then for each present origin
/// edge in ascending id order its left and right split vertices, then tree
/// internals. Edge ids of `h` start with one splitter per origin edge (same
/// order), followed by the attachments at s and t, followed by tree edges.
struct TransformedGraph {
  DiGraph h;
  DiGraph origin;
  VertexId origin_source;
  VertexId origin_sink;
  VertexId source;  // s in h
  VertexId sink;    // t in h

  // Indexed by origin EdgeId; kNoVertex / kNoEdge at vacant ids.
  std::vector<VertexId> left;
  std::vector<VertexId> right;
  std::vector<EdgeId> splitter;

  // Indexed by h EdgeId: the origin edge (w, t) an in-edge (r_{w,t}, t) of
  // the sink stands for, kNoEdge for every other edge.
  std::vector<EdgeId> sink_edge_origin;

  std::vector<SplitTree> trees;
  // Tree fanning out t's own out-edges, so that t also has out-degree <= 2.
  SplitTree sink_tree;
};

/// Splits every edge (x, y) into x -> l -> r -> y and replaces each vertex
/// other than s and t by one binary tree per in-edge. Every vertex of the
/// result except s has out-degree at most 2, and max-flow(s, t) is unchanged.
/// Throws std::invalid_argument if s == t or either is out of range.
TransformedGraph bounded_outdegree_transform(const DiGraph& g, VertexId s,
                                             VertexId t);

/// Maps a selection of in-edges of the sink of `tg.h` back to the matching
/// in-edges of t in the origin graph (result ascending).
std::vector<EdgeId> pull_back_in_edges(const TransformedGraph& tg,
                                       std::span<const EdgeId> keep_h);

/// Maps origin edge faults to the splitter edges of `tg.h` (result ascending).
std::vector<EdgeId> push_faults(const TransformedGraph& tg,
                                std::span<const EdgeId> f);

}  // namespace flowpreserve
