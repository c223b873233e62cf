#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "test_support.hpp"
#include "wdn/errors.hpp"
#include "wdn/neighbors.hpp"

namespace wdn {
namespace {

using testing::example_edge_weights;
using testing::example_graph;
using testing::example_origin_weights;
using testing::example_terminal_weights;

std::vector<std::string> origin_tokens(const DirectedGraph& g, const std::vector<std::size_t>& ids) {
  std::vector<std::string> out;
  for (auto i : ids) out.push_back(g.origin_token(i));
  return out;
}

std::vector<std::string> terminal_tokens(const DirectedGraph& g,
                                         const std::vector<std::size_t>& ids) {
  std::vector<std::string> out;
  for (auto i : ids) out.push_back(g.terminal_token(i));
  return out;
}

std::vector<std::string> edge_labels(const DirectedGraph& g, const std::vector<std::size_t>& ids) {
  std::vector<std::string> out;
  for (auto i : ids) out.push_back(g.edge_label(i));
  return out;
}

TEST(BuildGraph, ExampleHasFourOriginsFourTerminalsSevenEdges) {
  const DirectedGraph g = example_graph();
  EXPECT_EQ(g.origin_count(), 4u);
  EXPECT_EQ(g.terminal_count(), 4u);
  EXPECT_EQ(g.edge_count(), 7u);
  EXPECT_TRUE(g.indices_consistent());
}

TEST(BuildGraph, SingleEdge) {
  const std::vector<TokenEdge> edges = {{"a", "1"}};
  const DirectedGraph g = build_graph(edges);
  EXPECT_EQ(g.origin_count(), 1u);
  EXPECT_EQ(g.terminal_count(), 1u);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(BuildGraph, DuplicatePairsCollapse) {
  const std::vector<TokenEdge> edges = {{"a", "1"}, {"a", "1"}};
  EXPECT_EQ(build_graph(edges).edge_count(), 1u);
}

TEST(BuildGraph, EmptyListIsAnError) {
  EXPECT_THROW(build_graph(std::vector<TokenEdge>{}), InputError);
}

TEST(BuildGraph, SharedTokenStaysRoleDistinct) {
  const std::vector<TokenEdge> edges = {{"x", "y"}, {"y", "x"}};
  const DirectedGraph g = build_graph(edges);
  EXPECT_EQ(g.origin_count(), 2u);
  EXPECT_EQ(g.terminal_count(), 2u);
  EXPECT_EQ(*g.find_origin("x"), 0u);
  EXPECT_EQ(*g.find_terminal("y"), 0u);
  EXPECT_EQ(*g.find_terminal("x"), 1u);
}

TEST(FromParts, RejectsDanglingAndDuplicateEdges) {
  EXPECT_THROW(DirectedGraph::from_parts({"a"}, {"1"}, {{0, 1}}), InputError);
  EXPECT_THROW(DirectedGraph::from_parts({"a"}, {"1"}, {{0, 0}, {0, 0}}), InputError);
  EXPECT_THROW(DirectedGraph::from_parts({"a", "a"}, {"1"}, {{0, 0}}), InputError);
}

TEST(FromParts, AllowsIsolatedVertices) {
  const auto g = DirectedGraph::from_parts({"a", "lonely"}, {"1", "2"}, {{0, 0}});
  EXPECT_TRUE(g.out_edges(1).empty());
  EXPECT_TRUE(g.in_edges(1).empty());
  EXPECT_TRUE(g.indices_consistent());
}

TEST(OriginNeighbors, ExampleNetwork) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_origin_weights(g);
  using V = std::vector<std::string>;
  EXPECT_EQ(origin_tokens(g, neighbors_of_origin(g, w, *g.find_origin("a"))), (V{"b", "c"}));
  EXPECT_EQ(origin_tokens(g, neighbors_of_origin(g, w, *g.find_origin("d"))), (V{"b"}));
  EXPECT_EQ(origin_tokens(g, neighbors_of_origin(g, w, *g.find_origin("b"))), (V{"b"}));
}

TEST(OriginNeighbors, ExcludeSelfDropsTheQuery) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_origin_weights(g);
  EXPECT_TRUE(neighbors_of_origin(g, w, *g.find_origin("b"), {.exclude_self = true}).empty());
}

TEST(TerminalNeighbors, ExampleNetwork) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_terminal_weights(g);
  using V = std::vector<std::string>;
  EXPECT_EQ(terminal_tokens(g, neighbors_of_terminal(g, w, *g.find_terminal("1"))), (V{"2"}));
  EXPECT_EQ(terminal_tokens(g, neighbors_of_terminal(g, w, *g.find_terminal("3"))), V{});
  EXPECT_EQ(terminal_tokens(g, neighbors_of_terminal(g, w, *g.find_terminal("2"))), (V{"2", "4"}));
}

TEST(EdgeNeighbors, ExampleNetwork) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_edge_weights(g);
  using V = std::vector<std::string>;
  EXPECT_EQ(edge_labels(g, neighbors_of_edge(g, w, *g.find_edge("a", "1"))), (V{"b->1"}));
  EXPECT_EQ(edge_labels(g, neighbors_of_edge(g, w, *g.find_edge("d", "3"))), (V{"b->3"}));
  EXPECT_EQ(edge_labels(g, neighbors_of_edge(g, w, *g.find_edge("b", "1"))), (V{"b->1", "b->3"}));
}

TEST(Neighbors, DomainAndKindErrors) {
  const DirectedGraph g = example_graph();
  const PartialWeighting wo = example_origin_weights(g);
  const PartialWeighting we = example_edge_weights(g);
  EXPECT_THROW(neighbors_of_origin(g, wo, 4), DomainError);
  EXPECT_THROW(neighbors_of_edge(g, we, 7), DomainError);
  EXPECT_THROW(neighbors_of_terminal(g, wo, 0), DomainError);
  EXPECT_THROW(neighbors_of_origin(g, we, 0), DomainError);
}

TEST(PartialWeighting, ValidatesEntries) {
  const DirectedGraph g = example_graph();
  using E = std::vector<std::pair<std::size_t, double>>;
  EXPECT_THROW(PartialWeighting(g, Variant::OriginWeights, {0, 1}, E{{9, 0.5}}), DomainError);
  EXPECT_THROW(PartialWeighting(g, Variant::OriginWeights, {0, 1}, E{{0, 1.5}}), InputError);
  EXPECT_THROW(PartialWeighting(g, Variant::OriginWeights, {0, 1}, E{{0, 0.1}, {0, 0.2}}),
               InputError);
  const PartialWeighting w(g, Variant::OriginWeights, {0, 1}, E{{3, 0.2}, {1, 0.4}});
  EXPECT_EQ(std::vector<std::size_t>(w.domain().begin(), w.domain().end()),
            (std::vector<std::size_t>{1, 3}));
  EXPECT_THROW(w.weight(0), DomainError);
}

class NeighborProperty : public ::testing::TestWithParam<Variant> {};

TEST_P(NeighborProperty, IndexedScanMatchesEdgeDoubleLoop) {
  std::mt19937_64 rng(20240 + static_cast<int>(GetParam()));
  for (int trial = 0; trial < 100; ++trial) {
    const DirectedGraph g = testing::random_graph(rng, 50);
    ASSERT_TRUE(g.indices_consistent());
    const PartialWeighting w = testing::random_weighting(rng, g, GetParam());
    for (bool exclude : {false, true}) {
      NeighborScanner scan(g, w, {exclude});
      for (std::size_t x = 0; x < w.universe_size(); ++x) {
        const auto got = scan(x);
        ASSERT_EQ(got, oracle::neighbors(g, w, x, exclude)) << "trial " << trial << " x " << x;
        for (std::size_t a : got) ASSERT_TRUE(w.contains(a));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllVariants, NeighborProperty,
                         ::testing::Values(Variant::OriginWeights, Variant::TerminalWeights,
                                           Variant::EdgeWeights),
                         testing::VariantName{});

}  // namespace
}  // namespace wdn
