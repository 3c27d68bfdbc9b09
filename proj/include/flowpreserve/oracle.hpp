#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowpreserve/digraph.hpp"

namespace flowpreserve {

enum class ReachTag { exact, at_least };

/// min(lambda, max-flow(x, y)) after the failures. `at_least` means the true
/// value may be larger than lambda.
struct ReachAnswer {
  int value = 0;
  ReachTag tag = ReachTag::exact;

  friend bool operator==(const ReachAnswer&, const ReachAnswer&) = default;
};

const char* tag_name(ReachTag tag) noexcept;

class OracleLoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stores one (lambda, k)-preserver per source and answers fault-tolerant
/// lambda-reachability queries from the preserver of the query's source.
/// Immutable once built; concurrent queries are safe.
class ReachabilityOracle {
 public:
  ReachabilityOracle(DiGraph g, int lambda, int k,
                     std::vector<DiGraph> preservers);

  int lambda() const noexcept { return lambda_; }
  int k() const noexcept { return k_; }
  const DiGraph& graph() const noexcept { return g_; }
  std::uint64_t graph_hash() const noexcept { return hash_; }

  // Preserver for source x: same vertices and edge ids as graph().
  const DiGraph& preserver(VertexId x) const;
  std::size_t stored_edges() const noexcept;

  /// Fault ids refer to graph(). x == y answers (lambda, at_least).
  /// Throws std::invalid_argument on more than k distinct faults, unknown
  /// edge ids or out-of-range vertices.
  ReachAnswer query(VertexId x, VertexId y,
                    std::span<const EdgeId> faults) const;

  friend bool operator==(const ReachabilityOracle&,
                         const ReachabilityOracle&) = default;

 private:
  DiGraph g_;
  int lambda_ = 1;
  int k_ = 0;
  std::uint64_t hash_ = 0;
  std::vector<DiGraph> family_;
};

/// Builds ftbfp(g, x, lambda, k) for every vertex x, `workers` sources at a
/// time. The result does not depend on `workers`.
ReachabilityOracle build_oracle(const DiGraph& g, int lambda, int k,
                                unsigned workers = 1);

/// 64-bit FNV-1a over the vertex count and every (id, tail, head) triple as
/// little-endian 32-bit words.
std::uint64_t graph_hash(const DiGraph& g);

// Text container:
//
//   FLOWPRESERVE-ORACLE 1
//   lambda <l> k <k>
//   graph-hash <16 hex digits>
//   graph <n> <id bound> <m>
//   <id> <tail> <head>            (m lines, ascending id)
//   source <x> <count> <id>...    (one line per vertex, ascending)
//   end
//
// The hash is recomputed on load and must match.
void save_oracle(const ReachabilityOracle& o, std::ostream& out);
void save_oracle(const ReachabilityOracle& o,
                 const std::filesystem::path& path);
ReachabilityOracle load_oracle(std::istream& in);
ReachabilityOracle load_oracle(const std::filesystem::path& path);

}  // namespace flowpreserve
