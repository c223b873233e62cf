#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wdn/graph.hpp"

namespace wdn {

struct FgOptions {
  double tol = 1e-6;
  std::size_t max_iter = 100;

  void validate() const;
};

/// Rater fairness in [0, 1] per origin and ratee goodness in [-1, 1] per
/// terminal.
struct FgScores {
  std::vector<double> fairness;
  std::vector<double> goodness;
  std::size_t iterations = 0;
  bool converged = false;
  /// Largest absolute score change of each sweep.
  std::vector<double> max_change;
  /// Vertices without incident edges; they keep their initial score of 1.
  std::vector<std::size_t> isolated_origins;
  std::vector<std::size_t> isolated_terminals;
};

/**
 * Fixed-point iteration for fairness f and goodness g, starting from f ≡ 1,
 * g ≡ 1. Each sweep first recomputes every goodness from the previous
 * fairness,
 *
 *   g(t) = mean over in-edges (o,t) of f(o)·W(o,t),
 *
 * then every fairness from the new goodness,
 *
 *   f(o) = 1 - mean over out-edges (o,t) of |W(o,t) - g(t)| / 2,
 *
 * and stops once the largest change drops below tol or after max_iter
 * sweeps. `edge_weights` is indexed by edge id and must lie in [-1, 1]
 * (InputError otherwise). OpenMP-parallel within each phase.
 */
FgScores compute_fairness_goodness(const DirectedGraph& g, std::span<const double> edge_weights,
                                   FgOptions opts = {});

/// Single-threaded reference for compute_fairness_goodness.
FgScores compute_fairness_goodness_serial(const DirectedGraph& g,
                                          std::span<const double> edge_weights,
                                          FgOptions opts = {});

}  // namespace wdn
