#pragma once

// Fixtures and random generators shared by the test binaries.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wdn/graph.hpp"
#include "wdn/weighting.hpp"

namespace wdn::testing {

/// gtest parameter name for a weighting variant.
struct VariantName {
  template <class Info>
  std::string operator()(const Info& info) const {
    switch (info.param) {
      case Variant::OriginWeights: return "Origins";
      case Variant::TerminalWeights: return "Terminals";
      case Variant::EdgeWeights: return "Edges";
    }
    return "Unknown";
  }
};

/// The seven-edge example network: a→1, a→2, b→1, b→3, c→2, c→4, d→3.
/// Origins a,b,c,d get indices 0..3, terminals 1..4 get 0..3, edges 0..6
/// in that order.
inline DirectedGraph example_graph() {
  const std::vector<TokenEdge> edges = {{"a", "1"}, {"a", "2"}, {"b", "1"}, {"b", "3"},
                                        {"c", "2"}, {"c", "4"}, {"d", "3"}};
  return build_graph(edges);
}

/// O_A = {b, c}, F(b) = 0.3, F(c) = 0.6.
inline PartialWeighting example_origin_weights(const DirectedGraph& g) {
  const std::vector<std::pair<std::size_t, double>> e = {{*g.find_origin("b"), 0.3},
                                                         {*g.find_origin("c"), 0.6}};
  return PartialWeighting(g, Variant::OriginWeights, {0.0, 1.0}, e);
}

/// T_B = {2, 4}, G(2) = -0.2, G(4) = 0.8.
inline PartialWeighting example_terminal_weights(const DirectedGraph& g) {
  const std::vector<std::pair<std::size_t, double>> e = {{*g.find_terminal("2"), -0.2},
                                                         {*g.find_terminal("4"), 0.8}};
  return PartialWeighting(g, Variant::TerminalWeights, {-1.0, 1.0}, e);
}

/// E_L = {(b,1), (b,3), (c,2), (c,4)} with weights 0.41, 0.22, -0.15, 0.11.
inline PartialWeighting example_edge_weights(const DirectedGraph& g) {
  const std::vector<std::pair<std::size_t, double>> e = {{*g.find_edge("b", "1"), 0.41},
                                                         {*g.find_edge("b", "3"), 0.22},
                                                         {*g.find_edge("c", "2"), -0.15},
                                                         {*g.find_edge("c", "4"), 0.11}};
  return PartialWeighting(g, Variant::EdgeWeights, {-1.0, 1.0}, e);
}

/// Random digraph with at most `max_edges` distinct edges over small vertex
/// pools, so that neighborhoods overlap.
inline DirectedGraph random_graph(std::mt19937_64& rng, std::size_t max_edges) {
  std::uniform_int_distribution<std::size_t> n_edges(1, max_edges);
  const std::size_t m = n_edges(rng);
  const std::size_t pool = 2 + m / 3;
  std::uniform_int_distribution<std::size_t> vertex(0, pool - 1);
  std::vector<TokenEdge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    // Origins and terminals share token names on purpose.
    edges.emplace_back("v" + std::to_string(vertex(rng)), "v" + std::to_string(vertex(rng)));
  }
  return build_graph(edges);
}

/// Random training subset of the variant's element set with weights drawn
/// from `range`, occasionally quantized so that exact ties appear.
inline PartialWeighting random_weighting(std::mt19937_64& rng, const DirectedGraph& g,
                                         Variant v, WeightRange range = {-1.0, 1.0}) {
  const std::size_t n = element_count(g, v);
  std::bernoulli_distribution pick(0.6);
  std::bernoulli_distribution quantize(0.3);
  std::uniform_real_distribution<double> weight(range.lo, range.hi);
  const bool q = quantize(rng);
  std::vector<std::pair<std::size_t, double>> entries;
  for (std::size_t i = 0; i < n; ++i) {
    if (!pick(rng)) continue;
    double w = weight(rng);
    if (q) w = range.clamp(std::round(w * 4.0) / 4.0);
    entries.emplace_back(i, w);
  }
  if (entries.empty()) entries.emplace_back(0, range.lo);
  return PartialWeighting(g, v, range, entries);
}

}  // namespace wdn::testing
