#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "flowpreserve/digraph.hpp"

namespace flowpreserve {

/// In-edge selection at one destination produced by the farthest-min-cut
/// iteration, plus the trace of the iteration for auditing.
struct FtrsSelection {
  VertexId dest;
  int iterations = 0;
  std::vector<EdgeId> kept;  // in-edges of dest in the input graph, ascending
  // |C_1| .. |C_iterations| followed by the value of the final flow.
  std::vector<int> cut_trace;
  // |S_1| .. |S_{iterations+1}|, measured in the transformed graph.
  std::vector<std::size_t> source_set_sizes;
};

/// Selects in-edges of t such that restricting t to them keeps s->t
/// reachability under any (iterations + f - 1) edge failures, where
/// f = max-flow(s, t). At most 2^iterations * f edges are kept. The graph is
/// first made out-degree bounded; the cut iteration runs on that image:
///
///   S_1 = {s};  for i = 1..iterations:  C_i = FMC(S_i, t),
///               S_{i+1} = (A(C_i) + heads of C_i) - {t};
///   keep the in-edges of t carrying a max-flow from S_{iterations+1}.
///
/// Throws std::invalid_argument if s == t or iterations < 0.
FtrsSelection ftrs_single_dest(const DiGraph& g, VertexId s, VertexId t,
                               int iterations);

/// In-edges of t to keep so that restricting t to them yields a
/// (lambda, k)-fault-tolerant bounded-flow preserver of g. At most
/// 2^k * lambda edges; empty when t is unreachable from s.
std::vector<EdgeId> ftbfp_single_dest(const DiGraph& g, VertexId s,
                                      VertexId t, int lambda, int k);

struct PreserverParams {
  VertexId source;
  int lambda = 1;
  int k = 0;

  friend bool operator==(const PreserverParams&, const PreserverParams&) =
      default;
};

struct VertexAudit {
  VertexId vertex;
  std::size_t kept_in_degree = 0;
  // min(lambda + k, max-flow(s, v)) in the chain graph the vertex was
  // processed in; empty for the source.
  std::optional<int> f_observed;

  friend bool operator==(const VertexAudit&, const VertexAudit&) = default;
};

struct PreserverResult {
  DiGraph h;  // subgraph of the input: same vertices, same edge ids
  PreserverParams params;
  std::vector<std::vector<EdgeId>> kept_in_edges;  // per vertex, ascending
  std::vector<VertexAudit> audit;                  // per vertex

  std::size_t total_edges() const noexcept { return h.num_edges(); }
  friend bool operator==(const PreserverResult&, const PreserverResult&) =
      default;
};

/// Sparse (lambda, k)-fault-tolerant bounded-flow preserver for source s.
///
/// Vertices other than s are processed in ascending id; each one's in-edges
/// are restricted with ftbfp_single_dest against the graph produced by the
/// previous step. The in-edges of s are dropped at the end. Every vertex keeps
/// at most 2^k * lambda in-edges.
///
/// Throws std::invalid_argument unless lambda >= 1, k >= 0 and s is a vertex.
PreserverResult ftbfp(const DiGraph& g, VertexId s, int lambda, int k);

/// k-fault-tolerant reachability subgraph: ftbfp with lambda = 1.
PreserverResult ftrs(const DiGraph& g, VertexId s, int k);

/// Preserver for integer capacities under capacity decrements of total at
/// most k. Runs ftbfp on the unit multigraph expansion and keeps every
/// original edge with at least one surviving copy, at its original capacity.
CapGraph capacitated_ftbfp(const CapGraph& g, VertexId s, int lambda, int k);

}  // namespace flowpreserve
