#include "wdn/neighbors.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "wdn/errors.hpp"

namespace wdn {

NeighborScanner::NeighborScanner(const DirectedGraph& g, const PartialWeighting& w,
                                 NeighborOptions opts)
    : graph_(&g), weights_(&w), opts_(opts), stamp_(element_count(g, w.variant()), 0) {
  if (w.universe_size() != stamp_.size()) {
    throw DomainError("weighting does not match the graph's " +
                      std::string(to_string(w.variant())) + " set");
  }
}

void NeighborScanner::next_epoch() {
  if (epoch_ == std::numeric_limits<std::uint32_t>::max()) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 0;
  }
  ++epoch_;
}

void NeighborScanner::scan(std::size_t element, std::vector<std::size_t>& out) {
  out.clear();
  const DirectedGraph& g = *graph_;
  const PartialWeighting& w = *weights_;
  if (element >= stamp_.size()) {
    throw DomainError(std::string(to_string(w.variant())) + " " + std::to_string(element) +
                      " is not in the graph");
  }
  next_epoch();
  auto take = [&](std::size_t candidate) {
    if (!w.contains(candidate)) return;
    if (opts_.exclude_self && candidate == element) return;
    if (mark(candidate)) out.push_back(candidate);
  };

  switch (w.variant()) {
    case Variant::OriginWeights:
      for (std::size_t e : g.out_edges(element)) {
        for (std::size_t f : g.in_edges(g.edges()[e].terminal)) take(g.edges()[f].origin);
      }
      break;
    case Variant::TerminalWeights:
      for (std::size_t e : g.in_edges(element)) {
        for (std::size_t f : g.out_edges(g.edges()[e].origin)) take(g.edges()[f].terminal);
      }
      break;
    case Variant::EdgeWeights: {
      const Edge& self = g.edges()[element];
      for (std::size_t f : g.out_edges(self.origin)) take(f);
      for (std::size_t f : g.in_edges(self.terminal)) take(f);
      break;
    }
  }
  std::sort(out.begin(), out.end());
}

namespace {

std::vector<std::size_t> scan_checked(const DirectedGraph& g, const PartialWeighting& w,
                                      Variant expected, std::size_t element, NeighborOptions opts) {
  if (w.variant() != expected) {
    throw DomainError("expected " + std::string(to_string(expected)) + " weights, got " +
                      std::string(to_string(w.variant())));
  }
  NeighborScanner scanner(g, w, opts);
  return scanner(element);
}

}  // namespace

std::vector<std::size_t> neighbors_of_origin(const DirectedGraph& g, const PartialWeighting& w,
                                             std::size_t origin, NeighborOptions opts) {
  return scan_checked(g, w, Variant::OriginWeights, origin, opts);
}

std::vector<std::size_t> neighbors_of_terminal(const DirectedGraph& g, const PartialWeighting& w,
                                               std::size_t terminal, NeighborOptions opts) {
  return scan_checked(g, w, Variant::TerminalWeights, terminal, opts);
}

std::vector<std::size_t> neighbors_of_edge(const DirectedGraph& g, const PartialWeighting& w,
                                           std::size_t edge, NeighborOptions opts) {
  return scan_checked(g, w, Variant::EdgeWeights, edge, opts);
}

}  // namespace wdn
