#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "flowpreserve/flow.hpp"
#include "flowpreserve/generators.hpp"
#include "flowpreserve/preserver.hpp"
#include "flowpreserve/random.hpp"
#include "flowpreserve/verify.hpp"

namespace fp = flowpreserve;
using namespace fixtures;

namespace {

// U = {0, 1}, F = {{0}, {0, 1}}
fp::SetCoverInstance two_element_cover() {
  return fp::parse_set_cover("2 2\n0\n0 1\n");
}

fp::SetCoverInstance three_element_cover() {
  return fp::parse_set_cover("3 2\n0 1\n1 2\n");
}

int flow_avoiding(const DiGraph& g, VertexId s, VertexId t,
                  const std::vector<EdgeId>& f) {
  std::vector<std::uint8_t> mask(g.edge_id_bound(), 0);
  for (EdgeId e : f) mask[fp::index_of(e)] = 1;
  const VertexId src[] = {s};
  return fp::max_flow_avoiding(g, src, t, mask).value;
}

}  // namespace

TEST(LowerBound, SmallestExample) {
  auto inst = fp::lower_bound_instance(1, 1, 12);
  EXPECT_EQ(inst.leaves.size(), 2u);
  EXPECT_EQ(inst.trees[0].size(), 3u);
  EXPECT_EQ(inst.sinks.size(), 8u);
  EXPECT_EQ(inst.num_bipartite_edges(), 16u);
}

TEST(LowerBound, TwoTreesOfHeightTwo) {
  auto inst = fp::lower_bound_instance(2, 2, 30);
  EXPECT_EQ(inst.leaves.size(), 8u);
  EXPECT_EQ(inst.sinks.size(), 15u);
  EXPECT_EQ(inst.num_bipartite_edges(), 120u);
}

TEST(LowerBound, CountsMatchClosedForm) {
  for (int lambda = 1; lambda <= 3; ++lambda)
    for (int k = 0; k <= 3; ++k) {
      std::size_t leaves = std::size_t{1} << k;
      std::size_t tree = 2 * leaves - 1;
      std::size_t n = 3 * lambda * leaves + 5;
      auto inst = fp::lower_bound_instance(lambda, k, n);
      std::size_t ys = n - lambda * tree - 1;
      EXPECT_EQ(inst.g.num_vertices(), 1 + lambda * tree + ys);
      EXPECT_EQ(inst.sinks.size(), ys);
      EXPECT_GE(3 * ys, n);
      EXPECT_EQ(inst.leaves.size(), lambda * leaves);
      EXPECT_EQ(inst.g.num_edges(),
                lambda + lambda * (tree - 1) + lambda * leaves * ys);
      for (std::size_t x = 0; x < inst.leaves.size(); ++x)
        for (std::size_t y = 0; y < ys; y += 3) {
          EdgeId e = inst.bipartite_edge(x, y);
          EXPECT_EQ(inst.g.tail(e), inst.leaves[x]);
          EXPECT_EQ(inst.g.head(e), inst.sinks[y]);
        }
    }
}

TEST(LowerBound, RejectsSmallN) {
  EXPECT_THROW(fp::lower_bound_instance(1, 2, 11), std::invalid_argument);
  EXPECT_THROW(fp::lower_bound_instance(0, 1, 50), std::invalid_argument);
  EXPECT_NO_THROW(fp::lower_bound_instance(1, 2, 12));
}

TEST(LowerBound, FaultSetIsolatesOneLeaf) {
  auto inst = fp::lower_bound_instance(1, 2, 20);
  for (std::size_t x = 0; x < inst.leaves.size(); ++x) {
    auto f = fp::lower_bound_fault_set(inst, x);
    EXPECT_EQ(f.size(), 2u);
    std::vector<std::uint8_t> rm(inst.g.edge_id_bound(), 0);
    for (EdgeId e : f) rm[fp::index_of(e)] = 1;
    auto reach = brute::reachable(inst.g, inst.source, rm);
    for (std::size_t other = 0; other < inst.leaves.size(); ++other)
      EXPECT_EQ(reach[fp::index_of(inst.leaves[other])] != 0, other == x);
  }
}

TEST(LowerBound, PreserverKeepsEveryBipartiteEdge) {
  auto inst = fp::lower_bound_instance(2, 1, 22);
  auto r = fp::ftbfp(inst.g, inst.source, 2, 1);
  for (std::size_t x = 0; x < inst.leaves.size(); ++x)
    for (std::size_t y = 0; y < inst.sinks.size(); ++y)
      EXPECT_TRUE(r.h.has_edge(inst.bipartite_edge(x, y)));
}

TEST(LowerBound, LayoutJson) {
  auto inst = fp::lower_bound_instance(1, 1, 12);
  auto j = nlohmann::json::parse(fp::layout_json(inst));
  EXPECT_EQ(j["source"], 0);
  EXPECT_EQ(j["roots"], nlohmann::json::array({1}));
  EXPECT_EQ(j["leaves"], nlohmann::json::array({2, 3}));
  EXPECT_EQ(j["sinks"].size(), 8u);
}

TEST(SetCover, ParseAndCoverCheck) {
  auto sc = fp::parse_set_cover("# demo\n4 3\n0 1\n2\n3 2 3\n");
  EXPECT_EQ(sc.universe_size, 4u);
  ASSERT_EQ(sc.sets.size(), 3u);
  EXPECT_EQ(sc.sets[2], (std::vector<std::size_t>{2, 3}));
  std::vector<std::size_t> good{0, 2}, bad{0, 1};
  EXPECT_TRUE(fp::is_cover(sc, good));
  EXPECT_FALSE(fp::is_cover(sc, bad));
  EXPECT_THROW(fp::parse_set_cover("2 1\n0 7\n"), std::invalid_argument);
  EXPECT_THROW(fp::parse_set_cover(""), std::invalid_argument);
  EXPECT_THROW(fp::parse_set_cover("2 1\n0\n1\n"), std::invalid_argument);
}

TEST(Hardness, TwoElementArithmetic) {
  auto hi = fp::hardness_instance(two_element_cover(), 1);
  EXPECT_EQ(hi.u, 1);
  EXPECT_EQ(hi.k, 2);
  EXPECT_EQ(hi.sinks.size(), 16u);
  ASSERT_EQ(hi.gadgets.size(), 1u);
  const auto& gd = hi.gadgets[0];
  EXPECT_EQ(gd.tree.size(), 3u);
  EXPECT_EQ(gd.leaf.size(), 2u);
  EXPECT_EQ(gd.left.size(), 2u);
  EXPECT_EQ(gd.right.size(), 2u);
  EXPECT_EQ(gd.z.size(), 2u);
  // 1 + N + lambda * (|V(B)| + 2 * 2^u + |F| + (u + 1))
  EXPECT_EQ(hi.g.num_vertices(), 1 + 16 + (3 + 4 + 2 + 2));
}

TEST(Hardness, PaddingJoinsEverySet) {
  auto hi = fp::hardness_instance(three_element_cover(), 1);
  EXPECT_EQ(hi.padded.universe_size, 4u);
  EXPECT_EQ(hi.padded.sets[0], (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(hi.padded.sets[1], (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(hi.original_universe, 3u);
  EXPECT_EQ(hi.sinks.size(), 4u * (2 + 4));
}

TEST(Hardness, EdgesFollowTheConstruction) {
  auto hi = fp::hardness_instance(two_element_cover(), 2);
  for (const auto& gd : hi.gadgets) {
    EXPECT_EQ(hi.g.in_edges(gd.root).size(), 1u);
    for (std::size_t x = 0; x < gd.leaf.size(); ++x) {
      EXPECT_EQ(hi.g.out_neighbors(gd.leaf[x]),
                (std::vector<VertexId>{gd.left[x], gd.right[x]}));
      EXPECT_EQ(hi.g.out_neighbors(gd.right[x]), gd.z);
    }
    // l(x) -> y_W iff x in W.
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t w = 0; w < 2; ++w) {
        auto outs = hi.g.out_neighbors(gd.left[x]);
        bool edge = std::find(outs.begin(), outs.end(), gd.set_vertex[w]) !=
                    outs.end();
        bool member = std::binary_search(hi.padded.sets[w].begin(),
                                         hi.padded.sets[w].end(), x);
        EXPECT_EQ(edge, member);
      }
    for (VertexId y : gd.set_vertex)
      EXPECT_EQ(hi.g.out_neighbors(y), hi.sinks);
    for (VertexId z : gd.z) EXPECT_EQ(hi.g.out_neighbors(z), hi.sinks);
  }
}

TEST(Hardness, SinkFlowEqualsLambda) {
  for (int lambda = 1; lambda <= 2; ++lambda) {
    auto hi = fp::hardness_instance(three_element_cover(), lambda);
    for (VertexId v : hi.sinks)
      EXPECT_EQ(fp::max_flow(hi.g, hi.source, v).value, lambda);
  }
}

TEST(Hardness, TailoredFaultSetsKeepFlow) {
  for (int lambda = 1; lambda <= 2; ++lambda) {
    auto hi = fp::hardness_instance(three_element_cover(), lambda);
    for (std::size_t i = 0; i < hi.gadgets.size(); ++i)
      for (std::size_t x = 0; x < hi.padded.universe_size; ++x) {
        auto f = fp::hardness_fault_set(hi, i, x);
        EXPECT_EQ(f.size(), static_cast<std::size_t>(hi.k));
        for (VertexId v : hi.sinks)
          EXPECT_EQ(flow_avoiding(hi.g, hi.source, v, f), lambda);
      }
  }
}

TEST(Hardness, RejectsNonCover) {
  EXPECT_THROW(fp::hardness_instance(fp::parse_set_cover("3 1\n0 1\n"), 1),
               std::invalid_argument);
  EXPECT_THROW(fp::hardness_instance(two_element_cover(), 0),
               std::invalid_argument);
}

TEST(Hardness, CoverToPreserverDegrees) {
  auto hi = fp::hardness_instance(fp::parse_set_cover("2 3\n0\n1\n0 1\n"), 1);
  std::vector<std::size_t> cover{0, 1};
  DiGraph h = fp::cover_to_preserver(hi, cover);
  for (VertexId v : hi.sinks) EXPECT_EQ(h.in_degree(v), 4u);
  std::vector<std::size_t> all{0, 1, 2};
  DiGraph full = fp::cover_to_preserver(hi, all);
  for (VertexId v : hi.sinks) EXPECT_EQ(full.in_degree(v), 5u);
  std::vector<std::size_t> bad{0};
  EXPECT_THROW(fp::cover_to_preserver(hi, bad), std::invalid_argument);
}

TEST(Hardness, CoverToPreserverVerifies) {
  auto hi = fp::hardness_instance(two_element_cover(), 1);
  std::vector<std::size_t> cover{1};
  DiGraph h = fp::cover_to_preserver(hi, cover);
  EXPECT_FALSE(
      fp::verify_ftbfp(hi.g, h, hi.source, hi.lambda, hi.k).has_value());
  // Dropping the cover set as well breaks it.
  std::vector<EdgeId> cut;
  for (EdgeId e : h.out_edges(hi.gadgets[0].set_vertex[1])) cut.push_back(e);
  DiGraph broken = fp::remove_edges(h, cut);
  EXPECT_TRUE(
      fp::verify_ftbfp(hi.g, broken, hi.source, hi.lambda, hi.k).has_value());
}

TEST(Hardness, PreserverToCoverRoundTrip) {
  auto sc = fp::parse_set_cover("4 4\n0 1\n2 3\n0 2\n1 3\n");
  for (int lambda = 1; lambda <= 2; ++lambda) {
    auto hi = fp::hardness_instance(sc, lambda);
    for (std::vector<std::size_t> cover :
         {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{2, 3},
          std::vector<std::size_t>{0, 1, 2, 3}}) {
      DiGraph h = fp::cover_to_preserver(hi, cover);
      auto got = fp::preserver_to_cover(hi, h);
      EXPECT_TRUE(fp::is_cover(hi.padded, got));
      EXPECT_LE(got.size(), cover.size() + hi.k);
    }
    auto from_full = fp::preserver_to_cover(hi, hi.g);
    EXPECT_TRUE(fp::is_cover(hi.padded, from_full));
  }
}

TEST(Hardness, PreserverToCoverTakesSmallestCandidate) {
  auto hi = fp::hardness_instance(fp::parse_set_cover("2 3\n0\n1\n0 1\n"), 2);
  // Gadget 0 keeps sets {0, 1}, gadget 1 keeps only set {2}.
  fp::DiGraphBuilder b(hi.g);
  auto drop = [&](std::size_t gadget, std::size_t set) {
    for (EdgeId e : hi.g.out_edges(hi.gadgets[gadget].set_vertex[set]))
      b.remove_edge(e);
  };
  drop(0, 2);
  drop(1, 0);
  drop(1, 1);
  DiGraph h = std::move(b).build();
  EXPECT_EQ(fp::preserver_to_cover(hi, h), (std::vector<std::size_t>{2}));
}

TEST(Hardness, LayoutJson) {
  auto hi = fp::hardness_instance(two_element_cover(), 2);
  auto j = nlohmann::json::parse(fp::layout_json(hi));
  EXPECT_EQ(j["k"], 2);
  EXPECT_EQ(j["gadgets"].size(), 2u);
  EXPECT_EQ(j["sinks"].size(), 32u);
  EXPECT_EQ(j["gadgets"][1]["z"].size(), 2u);
}

TEST(Random, EdgelessGraph) {
  DiGraph g = fp::random_digraph(5, 0, 9);
  EXPECT_EQ(g.num_vertices(), 5u);
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(Random, SameSeedSameGraph) {
  EXPECT_EQ(fp::random_digraph(8, 20, 1), fp::random_digraph(8, 20, 1));
  EXPECT_EQ(fp::random_capgraph(8, 20, 4, 1), fp::random_capgraph(8, 20, 4, 1));
  EXPECT_FALSE(fp::random_digraph(8, 20, 1) == fp::random_digraph(8, 20, 2));
}

TEST(Random, SimpleAndSorted) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    DiGraph g = fp::random_digraph(6, 30, seed);  // complete
    EXPECT_EQ(g.num_edges(), 30u);
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    for (EdgeId e : g.edges()) {
      EXPECT_NE(g.tail(e), g.head(e));
      seen.emplace_back(fp::index_of(g.tail(e)), fp::index_of(g.head(e)));
    }
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    EXPECT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end());
  }
}

TEST(Random, Infeasible) {
  EXPECT_THROW(fp::random_digraph(3, 7, 0), std::invalid_argument);
  EXPECT_THROW(fp::random_digraph(1, 1, 0), std::invalid_argument);
  EXPECT_THROW(fp::random_capgraph(3, 2, 0, 0), std::invalid_argument);
}

TEST(Random, CapacitiesInRange) {
  auto g = fp::random_capgraph(7, 20, 3, 4);
  for (EdgeId e : g.base.edges()) {
    EXPECT_GE(g.capacity(e), 1);
    EXPECT_LE(g.capacity(e), 3);
  }
}

TEST(Random, SplitMixReferenceValues) {
  // First outputs for seed 0 as published with the reference implementation.
  fp::SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}
