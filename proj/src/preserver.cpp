#include "flowpreserve/preserver.hpp"

#include <algorithm>
#include <stdexcept>

#include "flowpreserve/flow.hpp"
#include "flowpreserve/transform.hpp"

namespace flowpreserve {
namespace {

void check_params(const DiGraph& g, VertexId s, int lambda, int k) {
  if (!g.has_vertex(s)) throw std::invalid_argument("source out of range");
  if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
}

std::vector<EdgeId> in_edges_used(const DiGraph& g, VertexId t,
                                  const FlowAssignment& flow) {
  std::vector<EdgeId> out;
  for (EdgeId e : flow.used) {
    if (g.head(e) == t) out.push_back(e);
  }
  return out;
}

}  // namespace

FtrsSelection ftrs_single_dest(const DiGraph& g, VertexId s, VertexId t,
                               int iterations) {
  if (iterations < 0) {
    throw std::invalid_argument("iteration count must be nonnegative");
  }
  const TransformedGraph tg = bounded_outdegree_transform(g, s, t);
  const DiGraph& h = tg.h;

  FtrsSelection sel;
  sel.dest = t;
  sel.iterations = iterations;
  std::vector<VertexId> sources{tg.source};
  std::vector<std::uint8_t> in_set(h.num_vertices(), 0);
  for (int i = 0; i < iterations; ++i) {
    sel.source_set_sizes.push_back(sources.size());
    const Cut cut = farthest_min_cut(h, sources, tg.sink);
    sel.cut_trace.push_back(cut.value);
    std::fill(in_set.begin(), in_set.end(), 0);
    for (VertexId v : cut.a_side) in_set[index_of(v)] = 1;
    for (EdgeId e : cut.crossing) in_set[index_of(h.head(e))] = 1;
    in_set[index_of(tg.sink)] = 0;
    sources.clear();
    for (std::size_t v = 0; v < in_set.size(); ++v) {
      if (in_set[v]) sources.push_back(vertex_at(v));
    }
  }
  sel.source_set_sizes.push_back(sources.size());
  const FlowAssignment last = max_flow(h, sources, tg.sink);
  sel.cut_trace.push_back(last.value);
  sel.kept = pull_back_in_edges(tg, in_edges_used(h, tg.sink, last));
  return sel;
}

std::vector<EdgeId> ftbfp_single_dest(const DiGraph& g, VertexId s,
                                      VertexId t, int lambda, int k) {
  check_params(g, s, lambda, k);
  if (s == t) throw std::invalid_argument("source equals destination");
  const FlowAssignment probe = max_flow(g, s, t, lambda + k);
  const int f = probe.value;
  if (f == 0) return {};
  if (f >= lambda + k) return in_edges_used(g, t, probe);
  if (f <= lambda) return ftrs_single_dest(g, s, t, k).kept;

  // lambda < f < lambda + k: a (lambda + k - 1)-FTRS suffices, which the cut
  // iteration delivers after lambda + k - f rounds. Running all k rounds is
  // also sound, so keep whichever selection is smaller.
  auto fewer = ftrs_single_dest(g, s, t, lambda + k - f).kept;
  auto all = ftrs_single_dest(g, s, t, k).kept;
  return all.size() < fewer.size() ? all : fewer;
}

PreserverResult ftbfp(const DiGraph& g, VertexId s, int lambda, int k) {
  check_params(g, s, lambda, k);
  const std::size_t n = g.num_vertices();
  PreserverResult result;
  result.params = {s, lambda, k};
  result.kept_in_edges.resize(n);
  result.audit.resize(n);

  DiGraph chain = g;
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId v = vertex_at(i);
    result.audit[i].vertex = v;
    if (v == s) continue;
    result.audit[i].f_observed = max_flow(chain, s, v, lambda + k).value;
    auto keep = ftbfp_single_dest(chain, s, v, lambda, k);
    chain = restrict_in_edges(chain, v, keep);
    result.audit[i].kept_in_degree = keep.size();
    result.kept_in_edges[i] = std::move(keep);
  }
  chain = restrict_in_edges(chain, s, {});
  result.h = std::move(chain);
  return result;
}

PreserverResult ftrs(const DiGraph& g, VertexId s, int k) {
  return ftbfp(g, s, 1, k);
}

CapGraph capacitated_ftbfp(const CapGraph& g, VertexId s, int lambda, int k) {
  validate(g);
  check_params(g.base, s, lambda, k);
  const Multigraph m = expand_to_multigraph(g);
  const PreserverResult r = ftbfp(m.graph, s, lambda, k);

  std::vector<std::uint8_t> retained(g.base.edge_id_bound(), 0);
  for (EdgeId e : r.h.edges()) retained[index_of(m.origin[index_of(e)])] = 1;
  CapGraph out{{}, g.cap};
  DiGraphBuilder b(g.base);
  for (EdgeId e : g.base.edges()) {
    if (!retained[index_of(e)]) {
      b.remove_edge(e);
      out.cap[index_of(e)] = 0;
    }
  }
  out.base = std::move(b).build();
  return out;
}

}  // namespace flowpreserve
