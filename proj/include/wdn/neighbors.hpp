#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wdn/graph.hpp"
#include "wdn/weighting.hpp"

namespace wdn {

struct NeighborOptions {
  /// Drop the query element from its own neighbor set. Off by default: a
  /// training element that shares a terminal (or origin) with itself counts.
  bool exclude_self = false;

  friend bool operator==(const NeighborOptions&, const NeighborOptions&) = default;
};

/**
 * Enumerates training-set neighbors of origins, terminals or edges.
 *
 * - origin o: every α in O_A with (o,t), (α,t) ∈ E for some terminal t;
 * - terminal t: every β in T_B with (o,t), (o,β) ∈ E for some origin o;
 * - edge e: every a in E_L sharing its origin or its terminal with e.
 *
 * The scanner owns a stamp buffer sized to the training universe, so one
 * instance per thread makes repeated queries allocation free. Results are
 * sorted ascending.
 */
class NeighborScanner {
 public:
  NeighborScanner(const DirectedGraph& g, const PartialWeighting& w, NeighborOptions opts = {});

  /// Fills `out` with the neighbors of `element` (an index in the
  /// weighting's element set). DomainError when `element` is out of range.
  void scan(std::size_t element, std::vector<std::size_t>& out);

  std::vector<std::size_t> operator()(std::size_t element) {
    std::vector<std::size_t> out;
    scan(element, out);
    return out;
  }

 private:
  bool mark(std::size_t candidate) {
    if (stamp_[candidate] == epoch_) return false;
    stamp_[candidate] = epoch_;
    return true;
  }
  void next_epoch();

  const DirectedGraph* graph_;
  const PartialWeighting* weights_;
  NeighborOptions opts_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

std::vector<std::size_t> neighbors_of_origin(const DirectedGraph& g, const PartialWeighting& w,
                                             std::size_t origin, NeighborOptions opts = {});
std::vector<std::size_t> neighbors_of_terminal(const DirectedGraph& g, const PartialWeighting& w,
                                               std::size_t terminal, NeighborOptions opts = {});
std::vector<std::size_t> neighbors_of_edge(const DirectedGraph& g, const PartialWeighting& w,
                                           std::size_t edge, NeighborOptions opts = {});

}  // namespace wdn
