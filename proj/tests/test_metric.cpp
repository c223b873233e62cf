#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "test_support.hpp"
#include "wdn/errors.hpp"
#include "wdn/metric.hpp"

namespace wdn {
namespace {

using testing::example_edge_weights;
using testing::example_graph;
using testing::example_origin_weights;

TEST(AvgNeighborWeight, ExampleOrigins) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_origin_weights(g);
  const auto a = neighbors_of_origin(g, w, *g.find_origin("a"));
  const auto d = neighbors_of_origin(g, w, *g.find_origin("d"));
  EXPECT_DOUBLE_EQ(*avg_neighbor_weight(a, w), 0.45);
  EXPECT_DOUBLE_EQ(*avg_neighbor_weight(d, w), 0.3);
  EXPECT_FALSE(avg_neighbor_weight(std::vector<std::size_t>{}, w).has_value());
}

TEST(AvgNeighborWeight, MissingWeightIsAnError) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_origin_weights(g);
  const std::vector<std::size_t> bogus = {*g.find_origin("a")};
  EXPECT_THROW(avg_neighbor_weight(bogus, w), DomainError);
}

TEST(CCount, ExampleOrigins) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_origin_weights(g);
  EXPECT_EQ(c_count(neighbors_of_origin(g, w, *g.find_origin("a")), w, 0.2), 2u);
  EXPECT_EQ(c_count(neighbors_of_origin(g, w, *g.find_origin("d")), w, 0.2), 1u);
  EXPECT_EQ(c_count(std::vector<std::size_t>{}, w, 0.2), 0u);
}

TEST(CCount, RejectsNonPositiveBandwidth) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_origin_weights(g);
  EXPECT_THROW(c_count(std::vector<std::size_t>{}, w, 0.0), ParameterError);
  EXPECT_THROW(c_count(std::vector<std::size_t>{}, w, -1.0), ParameterError);
  EXPECT_THROW(compute_profiles(g, w, 0.0), ParameterError);
}

TEST(Distance, ExampleOrigins) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_origin_weights(g);
  const ProfileTable t = compute_profiles(g, w, 0.2);
  const std::size_t a = *g.find_origin("a");
  const std::size_t d = *g.find_origin("d");
  EXPECT_EQ(t.distance(a, d), 1u);
  for (std::size_t x = 0; x < t.size(); ++x) EXPECT_EQ(t.distance(x, x), 0u);
}

TEST(Distance, ExampleEdges) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_edge_weights(g);
  const ProfileTable t = compute_profiles(g, w, 0.2);
  const std::size_t a1 = *g.find_edge("a", "1");
  const std::size_t d3 = *g.find_edge("d", "3");
  EXPECT_EQ(t.c_count(a1), 1u);
  EXPECT_EQ(t.c_count(d3), 1u);
  EXPECT_EQ(t.distance(a1, d3), 0u);
  EXPECT_EQ(t.c_count(*g.find_edge("b", "1")), 2u);
  EXPECT_DOUBLE_EQ(*t.at(*g.find_edge("b", "1")).avg_weight, (0.41 + 0.22) / 2.0);
}

TEST(Distance, KindMismatchIsADomainError) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_origin_weights(g);
  const ProfileTable t = compute_profiles(g, w, 0.2);
  EXPECT_THROW(t.distance(ElementRef{Variant::OriginWeights, 0}, ElementRef{Variant::EdgeWeights, 0}),
               DomainError);
  EXPECT_THROW(t.distance(ElementRef{Variant::EdgeWeights, 0}, ElementRef{Variant::EdgeWeights, 1}),
               DomainError);
  EXPECT_EQ(t.distance(ElementRef{Variant::OriginWeights, 0}, ElementRef{Variant::OriginWeights, 3}),
            1u);
  EXPECT_THROW(t.at(99), DomainError);
}

TEST(Profiles, EmptyNeighborhoodFallback) {
  const auto g = DirectedGraph::from_parts({"a", "b"}, {"1", "2"}, {{0, 0}, {1, 1}});
  const std::vector<std::pair<std::size_t, double>> e = {{0, 0.5}};
  const PartialWeighting w(g, Variant::OriginWeights, {0, 1}, e);
  const ProfileTable t = compute_profiles(g, w, 0.1);
  EXPECT_EQ(t.at(1).neighbor_count, 0u);
  EXPECT_FALSE(t.at(1).avg_weight.has_value());
  EXPECT_EQ(t.at(1).c_count, 0u);
  EXPECT_EQ(t.at(0).c_count, 1u);
}

TEST(DefaultBandwidth, StddevWithFloor) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_origin_weights(g);
  EXPECT_NEAR(default_bandwidth(w), 0.15, 1e-15);
  const std::vector<std::pair<std::size_t, double>> same = {{0, 0.4}, {1, 0.4}};
  const PartialWeighting flat(g, Variant::OriginWeights, {0, 1}, same);
  EXPECT_EQ(default_bandwidth(flat), kMinBandwidth);
}

TEST(TieStatistics, CountsClasses) {
  const DirectedGraph g = example_graph();
  const PartialWeighting w = example_origin_weights(g);
  const ProfileTable t = compute_profiles(g, w, 0.2);
  // C = a:2, b:1, c:1, d:1
  const TieStatistics s = tie_statistics(t);
  EXPECT_EQ(s.elements, 4u);
  EXPECT_EQ(s.distinct_counts, 2u);
  EXPECT_EQ(s.largest_class, 3u);
  EXPECT_EQ(s.empty_neighborhoods, 0u);
}

class MetricProperty : public ::testing::TestWithParam<Variant> {};

TEST_P(MetricProperty, ParallelSerialAndBruteForceAgree) {
  std::mt19937_64 rng(777 + static_cast<int>(GetParam()));
  std::uniform_real_distribution<double> bandwidth(1e-3, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const DirectedGraph g = testing::random_graph(rng, 30);
    const PartialWeighting w = testing::random_weighting(rng, g, GetParam());
    const double h = bandwidth(rng);
    const ProfileTable par = compute_profiles(g, w, h);
    const ProfileTable ser = compute_profiles_serial(g, w, h);
    ASSERT_EQ(par, ser);
    for (std::size_t x = 0; x < w.universe_size(); ++x) {
      const oracle::Profile o = oracle::profile(g, w, x, h);
      ASSERT_EQ(par.at(x).neighbor_count, o.n);
      ASSERT_EQ(par.at(x).avg_weight.has_value(), o.avg.has_value());
      if (o.avg) {
        ASSERT_NEAR(*par.at(x).avg_weight, *o.avg, 1e-12);
      }
      // Quantized weights sit exactly on the h boundary only with
      // probability zero, so the counts must match exactly.
      ASSERT_EQ(par.at(x).c_count, o.c) << "trial " << trial << " x " << x;
      ASSERT_LE(par.at(x).c_count, par.at(x).neighbor_count);
    }
  }
}

TEST_P(MetricProperty, CCountIsMonotoneInBandwidth) {
  std::mt19937_64 rng(31 + static_cast<int>(GetParam()));
  for (int trial = 0; trial < 40; ++trial) {
    const DirectedGraph g = testing::random_graph(rng, 60);
    const PartialWeighting w = testing::random_weighting(rng, g, GetParam());
    ProfileTable prev = compute_profiles(g, w, 0.01);
    for (double h : {0.05, 0.1, 0.3, 0.7, 1.5, 3.0}) {
      const ProfileTable next = compute_profiles(g, w, h);
      for (std::size_t x = 0; x < next.size(); ++x) ASSERT_GE(next.c_count(x), prev.c_count(x));
      prev = next;
    }
    // h >= range width admits every neighbor.
    for (std::size_t x = 0; x < prev.size(); ++x) {
      ASSERT_EQ(prev.c_count(x), prev.at(x).neighbor_count);
    }
  }
}

TEST_P(MetricProperty, EquivalenceRelationAxioms) {
  std::mt19937_64 rng(99 + static_cast<int>(GetParam()));
  for (int trial = 0; trial < 20; ++trial) {
    const DirectedGraph g = testing::random_graph(rng, 40);
    const PartialWeighting w = testing::random_weighting(rng, g, GetParam());
    const ProfileTable t = compute_profiles(g, w, 0.25);
    const std::size_t n = t.size();
    for (std::size_t x = 0; x < n; ++x) {
      ASSERT_TRUE(t.equivalent(x, x));
      for (std::size_t y = 0; y < n; ++y) {
        ASSERT_EQ(t.equivalent(x, y), t.equivalent(y, x));
        for (std::size_t z = 0; z < n; ++z) {
          if (t.equivalent(x, y) && t.equivalent(y, z)) {
            ASSERT_TRUE(t.equivalent(x, z));
          }
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllVariants, MetricProperty,
                         ::testing::Values(Variant::OriginWeights, Variant::TerminalWeights,
                                           Variant::EdgeWeights),
                         testing::VariantName{});

}  // namespace
}  // namespace wdn
