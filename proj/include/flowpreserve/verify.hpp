#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flowpreserve/digraph.hpp"
#include "flowpreserve/preserver.hpp"

namespace flowpreserve {

inline constexpr std::uint64_t kDefaultVerifyBudget = 2'000'000;

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::uint64_t pairs);
  std::uint64_t pairs() const noexcept { return pairs_; }

 private:
  std::uint64_t pairs_;
};

struct VerifyOptions {
  // Refuse to enumerate more than this many (fault set, destination) pairs.
  std::uint64_t budget = kDefaultVerifyBudget;
  // Worker threads for the enumeration. The reported witness does not depend
  // on this.
  unsigned workers = 1;
};

/// A fault set F and destination t on which g and h disagree below lambda.
/// Both flow values are clamped at lambda.
struct Violation {
  std::vector<EdgeId> faults;  // ascending
  VertexId dest;
  int flow_in_g = 0;
  int flow_in_h = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Number of (F, t) pairs an exhaustive check enumerates: every F of at most
/// k of the m edges, every t other than the source. Saturates at UINT64_MAX.
std::uint64_t verification_pairs(std::size_t num_edges,
                                 std::size_t num_vertices, int k);

/// Exhaustive check that h is a (lambda, k)-FT-BFP of g for source s.
///
/// Fault sets are enumerated smallest first, then lexicographically by
/// ascending edge id; destinations ascending within each set. Returns the
/// first violation in that order, or nothing if h is a preserver. h must be a
/// subgraph of g with the same edge ids (std::invalid_argument otherwise).
/// Throws BudgetExceeded when the enumeration is larger than options.budget.
std::optional<Violation> verify_ftbfp(const DiGraph& g, const DiGraph& h,
                                      VertexId s, int lambda, int k,
                                      const VerifyOptions& options = {});

/// Checks a single fault set against every destination.
std::optional<Violation> check_fault_set(const DiGraph& g, const DiGraph& h,
                                         VertexId s, int lambda,
                                         std::span<const EdgeId> faults);

struct BoundsReport {
  std::size_t max_in_degree = 0;
  std::size_t total_edges = 0;
  std::size_t in_degree_bound = 0;  // 2^k * lambda
  std::size_t edge_bound = 0;       // lambda * 2^k * n
  std::size_t vertices_over_bound = 0;
  bool passed = true;

  // edge_bound - total_edges (negative when the bound is broken)
  long long slack() const {
    return static_cast<long long>(edge_bound) -
           static_cast<long long>(total_edges);
  }
};

BoundsReport audit_bounds(const PreserverResult& r);
BoundsReport audit_bounds(const DiGraph& h, int lambda, int k);

struct Criticality {
  bool critical = false;
  std::optional<Violation> witness;
};

/// Whether h stops being a preserver once edge e is removed. Fault sets in
/// `hints` are tried first; a violation found there is a certificate, so the
/// exhaustive enumeration only runs when none of them breaks h - {e}.
Criticality edge_criticality(const DiGraph& g, VertexId s, int lambda, int k,
                             const DiGraph& h, EdgeId e,
                             std::span<const std::vector<EdgeId>> hints = {},
                             const VerifyOptions& options = {});

/// Capacity decrement I given as (edge, amount) pairs with amount >= 1.
struct CapViolation {
  std::vector<std::pair<EdgeId, int>> decrement;
  VertexId dest;
  int flow_in_g = 0;
  int flow_in_h = 0;
};

/// Number of decrement functions with total at most k times (n - 1).
std::uint64_t decrement_pairs(const CapGraph& g, int k);

/// Exhaustive check over all capacity decrements I with sum(I) <= k.
/// h must carry the same capacities as g on its edges.
std::optional<CapViolation> verify_capacitated_ftbfp(
    const CapGraph& g, const CapGraph& h, VertexId s, int lambda, int k,
    const VerifyOptions& options = {});

}  // namespace flowpreserve
