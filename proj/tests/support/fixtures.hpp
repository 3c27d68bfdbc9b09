#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "flowpreserve/digraph.hpp"

namespace fixtures {

using flowpreserve::DiGraph;
using flowpreserve::EdgeId;
using flowpreserve::VertexId;

inline VertexId V(std::size_t i) { return flowpreserve::vertex_at(i); }
inline EdgeId E(std::size_t i) { return flowpreserve::edge_at(i); }

inline DiGraph make_graph(
    std::size_t n,
    std::initializer_list<std::pair<std::size_t, std::size_t>> edges) {
  flowpreserve::DiGraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(V(u), V(v));
  return std::move(b).build();
}

// s=0, a=1, b=2, t=3; edges s->a, s->b, a->t, b->t with ids 0..3.
inline DiGraph diamond() { return make_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

// s=0, a=1, t=2.
inline DiGraph path3() { return make_graph(3, {{0, 1}, {1, 2}}); }

inline std::vector<EdgeId> ids(std::initializer_list<std::size_t> xs) {
  std::vector<EdgeId> out;
  for (auto x : xs) out.push_back(E(x));
  return out;
}

inline std::vector<VertexId> vids(std::initializer_list<std::size_t> xs) {
  std::vector<VertexId> out;
  for (auto x : xs) out.push_back(V(x));
  return out;
}

}  // namespace fixtures
