#include "flowpreserve/transform.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace flowpreserve {
namespace {

// Hangs `leaves` below `root` as a near-complete binary tree in heap order:
// node 0 is the root, nodes 1..q-2 are fresh internal vertices and nodes
// q-1..2q-2 are the leaves. A single leaf is attached directly to the root.
SplitTree build_tree(DiGraphBuilder& b, EdgeId in_edge, VertexId root,
                     std::vector<VertexId> leaves) {
  SplitTree tree{in_edge, root, {}, std::move(leaves)};
  const std::size_t q = tree.leaves.size();
  if (q == 0) return tree;
  if (q == 1) {
    b.add_edge(root, tree.leaves.front());
    return tree;
  }
  std::vector<VertexId> node(2 * q - 1);
  node[0] = root;
  for (std::size_t j = 1; j + 1 < q; ++j) {
    node[j] = b.add_vertex();
    tree.internal.push_back(node[j]);
  }
  for (std::size_t j = 0; j < q; ++j) node[q - 1 + j] = tree.leaves[j];
  for (std::size_t j = 1; j < node.size(); ++j) {
    b.add_edge(node[(j - 1) / 2], node[j]);
  }
  return tree;
}

}  // namespace

TransformedGraph bounded_outdegree_transform(const DiGraph& g, VertexId s,
                                             VertexId t) {
  if (!g.has_vertex(s) || !g.has_vertex(t)) {
    throw std::invalid_argument("transform: vertex out of range");
  }
  if (s == t) throw std::invalid_argument("transform: source equals sink");

  TransformedGraph tg;
  tg.origin = g;
  tg.origin_source = s;
  tg.origin_sink = t;
  tg.source = vertex_at(0);
  tg.sink = vertex_at(1);
  const std::size_t bound = g.edge_id_bound();
  tg.left.assign(bound, kNoVertex);
  tg.right.assign(bound, kNoVertex);
  tg.splitter.assign(bound, kNoEdge);

  DiGraphBuilder b(2 + 2 * g.num_edges());
  std::size_t next = 2;
  for (EdgeId e : g.edges()) {
    tg.left[index_of(e)] = vertex_at(next++);
    tg.right[index_of(e)] = vertex_at(next++);
  }
  for (EdgeId e : g.edges()) {
    tg.splitter[index_of(e)] =
        b.add_edge(tg.left[index_of(e)], tg.right[index_of(e)]);
  }

  auto image = [&](VertexId v) {
    return v == s ? tg.source : tg.sink;
  };
  std::vector<std::pair<EdgeId, EdgeId>> sink_links;  // (h edge, origin edge)
  for (EdgeId e : g.edges()) {
    if (g.tail(e) == s) b.add_edge(image(s), tg.left[index_of(e)]);
    const VertexId y = g.head(e);
    if (y == s || y == t) {
      const EdgeId link = b.add_edge(tg.right[index_of(e)], image(y));
      if (y == t) sink_links.emplace_back(link, e);
    }
  }

  auto leaves_of = [&](VertexId y) {
    std::vector<VertexId> leaves;
    for (EdgeId out : g.out_edges(y)) leaves.push_back(tg.left[index_of(out)]);
    return leaves;
  };
  for (EdgeId e : g.edges()) {
    const VertexId y = g.head(e);
    if (y == s || y == t) continue;
    tg.trees.push_back(
        build_tree(b, e, tg.right[index_of(e)], leaves_of(y)));
  }
  tg.sink_tree = build_tree(b, kNoEdge, tg.sink, leaves_of(t));

  tg.h = std::move(b).build();
  tg.sink_edge_origin.assign(tg.h.edge_id_bound(), kNoEdge);
  for (auto [link, e] : sink_links) tg.sink_edge_origin[index_of(link)] = e;
  return tg;
}

std::vector<EdgeId> pull_back_in_edges(const TransformedGraph& tg,
                                       std::span<const EdgeId> keep_h) {
  std::vector<EdgeId> out;
  out.reserve(keep_h.size());
  for (EdgeId e : keep_h) {
    if (!tg.h.has_edge(e) || tg.h.head(e) != tg.sink ||
        tg.sink_edge_origin[index_of(e)] == kNoEdge) {
      throw std::invalid_argument("pull_back_in_edges: edge " +
                                  std::to_string(index_of(e)) +
                                  " is not an in-edge of the sink");
    }
    out.push_back(tg.sink_edge_origin[index_of(e)]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<EdgeId> push_faults(const TransformedGraph& tg,
                                std::span<const EdgeId> f) {
  std::vector<EdgeId> out;
  out.reserve(f.size());
  for (EdgeId e : f) {
    if (!tg.origin.has_edge(e)) {
      throw std::invalid_argument("push_faults: unknown edge id " +
                                  std::to_string(index_of(e)));
    }
    out.push_back(tg.splitter[index_of(e)]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace flowpreserve
