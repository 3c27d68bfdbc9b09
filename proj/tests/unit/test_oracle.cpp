#include <gtest/gtest.h>

#include <sstream>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "flowpreserve/generators.hpp"
#include "flowpreserve/oracle.hpp"
#include "flowpreserve/random.hpp"

namespace fp = flowpreserve;
using namespace fixtures;

namespace {

fp::ReachAnswer direct(const DiGraph& g, int lambda, VertexId x, VertexId y,
                       const std::vector<EdgeId>& f) {
  if (x == y) return {lambda, fp::ReachTag::at_least};
  std::vector<std::uint8_t> rm(g.edge_id_bound(), 0);
  for (EdgeId e : f) rm[fp::index_of(e)] = 1;
  int v = brute::min_cut_value(g, x, y, rm);
  if (v < lambda) return {v, fp::ReachTag::exact};
  return {lambda, fp::ReachTag::at_least};
}

std::string saved(const fp::ReachabilityOracle& o) {
  std::ostringstream out;
  fp::save_oracle(o, out);
  return out.str();
}

fp::ReachabilityOracle loaded(const std::string& text) {
  std::istringstream in(text);
  return fp::load_oracle(in);
}

}  // namespace

TEST(Oracle, TreePreserversAreSubtrees) {
  DiGraph g = make_graph(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}});
  auto o = fp::build_oracle(g, 1, 1);
  EXPECT_EQ(o.preserver(V(0)), g);
  std::vector<EdgeId> drop{E(0), E(1)};
  EXPECT_EQ(o.preserver(V(1)), fp::remove_edges(g, drop));
  EXPECT_EQ(o.preserver(V(3)).num_edges(), 0u);
}

TEST(Oracle, StorageWithinPerSourceBound) {
  DiGraph g = fp::random_digraph(9, 40, 2);
  auto o = fp::build_oracle(g, 2, 1);
  for (std::size_t x = 0; x < 9; ++x)
    EXPECT_LE(o.preserver(V(x)).num_edges(), 2u * 2u * 9u);
  EXPECT_LE(o.stored_edges(), 9u * 2u * 2u * 9u);
}

TEST(Oracle, ExamplesOnDiamond) {
  auto o = fp::build_oracle(diamond(), 2, 1);
  EXPECT_EQ(o.query(V(3), V(0), {}), (fp::ReachAnswer{0, fp::ReachTag::exact}));
  EXPECT_EQ(o.query(V(0), V(3), {}),
            (fp::ReachAnswer{2, fp::ReachTag::at_least}));
  auto f = ids({1});
  EXPECT_EQ(o.query(V(0), V(3), f), (fp::ReachAnswer{1, fp::ReachTag::exact}));
  EXPECT_EQ(o.query(V(2), V(2), f),
            (fp::ReachAnswer{2, fp::ReachTag::at_least}));
}

TEST(Oracle, QueryErrors) {
  auto o = fp::build_oracle(diamond(), 1, 1);
  auto two = ids({0, 1});
  EXPECT_THROW(o.query(V(0), V(3), two), std::invalid_argument);
  auto repeated = ids({0, 0});
  EXPECT_NO_THROW(o.query(V(0), V(3), repeated));
  auto unknown = ids({12});
  EXPECT_THROW(o.query(V(0), V(3), unknown), std::invalid_argument);
  EXPECT_THROW(o.query(V(0), V(9), {}), std::invalid_argument);
}

TEST(Oracle, ExhaustiveAgreementOnSmallGraphs) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    DiGraph g = fp::random_digraph(6, 12 + seed % 6, seed);
    int lambda = 1 + static_cast<int>(seed % 2);
    int k = 1 + static_cast<int>(seed % 3 == 0);
    auto o = fp::build_oracle(g, lambda, k);
    for (const auto& f : brute::fault_sets(g, k))
      for (std::size_t x = 0; x < 6; ++x)
        for (std::size_t y = 0; y < 6; ++y)
          ASSERT_EQ(o.query(V(x), V(y), f), direct(g, lambda, V(x), V(y), f))
              << "seed " << seed << " x " << x << " y " << y;
  }
}

TEST(Oracle, WorkersDoNotChangeResult) {
  DiGraph g = fp::random_digraph(10, 30, 8);
  EXPECT_EQ(fp::build_oracle(g, 2, 2, 1), fp::build_oracle(g, 2, 2, 4));
}

TEST(Oracle, SaveLoadRoundTrip) {
  auto o = fp::build_oracle(diamond(), 2, 1);
  auto back = loaded(saved(o));
  EXPECT_EQ(back, o);
  for (const auto& f : brute::fault_sets(diamond(), 1))
    for (std::size_t x = 0; x < 4; ++x)
      for (std::size_t y = 0; y < 4; ++y)
        EXPECT_EQ(back.query(V(x), V(y), f), o.query(V(x), V(y), f));
  EXPECT_EQ(saved(back), saved(o));
}

TEST(Oracle, RoundTripWithVacantIds) {
  auto gone = ids({1, 4});
  DiGraph g = fp::remove_edges(fp::random_digraph(6, 14, 3), gone);
  auto o = fp::build_oracle(g, 1, 1);
  EXPECT_EQ(loaded(saved(o)), o);
}

TEST(Oracle, LoadErrors) {
  auto text = saved(fp::build_oracle(diamond(), 2, 1));
  EXPECT_THROW(loaded(text.substr(0, text.size() - 4)), fp::OracleLoadError);
  EXPECT_THROW(loaded(text.substr(0, text.size() / 2)), fp::OracleLoadError);
  std::string wrong_version = text;
  wrong_version.replace(wrong_version.find(" 1\n"), 3, " 9\n");
  EXPECT_THROW(loaded(wrong_version), fp::OracleLoadError);
  EXPECT_THROW(loaded("HELLO 1\n"), fp::OracleLoadError);
  // Tamper with an edge endpoint: the hash no longer matches.
  std::string tampered = text;
  auto pos = tampered.find("\n0 0 1\n");
  ASSERT_NE(pos, std::string::npos);
  tampered.replace(pos, 7, "\n0 0 2\n");
  EXPECT_THROW(loaded(tampered), fp::OracleLoadError);
}

TEST(Oracle, HashTracksGraph) {
  EXPECT_EQ(fp::graph_hash(diamond()), fp::graph_hash(diamond()));
  EXPECT_NE(fp::graph_hash(diamond()), fp::graph_hash(path3()));
  auto gone = ids({0});
  EXPECT_NE(fp::graph_hash(diamond()),
            fp::graph_hash(fp::remove_edges(diamond(), gone)));
}
