#include "wdn/fairness_goodness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wdn/errors.hpp"

namespace wdn {

void FgOptions::validate() const {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ParameterError("tol must be positive");
  if (max_iter == 0) throw ParameterError("max_iter must be at least 1");
}

namespace {

void check_inputs(const DirectedGraph& g, std::span<const double> w, const FgOptions& opts) {
  opts.validate();
  if (w.size() != g.edge_count()) {
    throw InputError("expected " + std::to_string(g.edge_count()) + " edge weights, got " +
                     std::to_string(w.size()));
  }
  for (std::size_t e = 0; e < w.size(); ++e) {
    if (!std::isfinite(w[e]) || w[e] < -1.0 || w[e] > 1.0) {
      throw InputError("edge " + g.edge_label(e) + " weight " + std::to_string(w[e]) +
                       " is not a finite value in [-1, 1]");
    }
  }
}

double goodness_of(const DirectedGraph& g, std::span<const double> w,
                   const std::vector<double>& fairness, std::size_t t, double previous) {
  const auto in = g.in_edges(t);
  if (in.empty()) return previous;
  double sum = 0.0;
  for (std::size_t e : in) sum += fairness[g.edges()[e].origin] * w[e];
  return sum / static_cast<double>(in.size());
}

double fairness_of(const DirectedGraph& g, std::span<const double> w,
                   const std::vector<double>& goodness, std::size_t o, double previous) {
  const auto out = g.out_edges(o);
  if (out.empty()) return previous;
  double sum = 0.0;
  for (std::size_t e : out) sum += std::abs(w[e] - goodness[g.edges()[e].terminal]) / 2.0;
  return 1.0 - sum / static_cast<double>(out.size());
}

void check_ranges(const FgScores& s) {
  for (double f : s.fairness) {
    if (!(f >= 0.0 && f <= 1.0)) throw NumericError("fairness left [0, 1]");
  }
  for (double g : s.goodness) {
    if (!(g >= -1.0 && g <= 1.0)) throw NumericError("goodness left [-1, 1]");
  }
}

FgScores initial_scores(const DirectedGraph& g) {
  FgScores s;
  s.fairness.assign(g.origin_count(), 1.0);
  s.goodness.assign(g.terminal_count(), 1.0);
  for (std::size_t o = 0; o < g.origin_count(); ++o) {
    if (g.out_edges(o).empty()) s.isolated_origins.push_back(o);
  }
  for (std::size_t t = 0; t < g.terminal_count(); ++t) {
    if (g.in_edges(t).empty()) s.isolated_terminals.push_back(t);
  }
  return s;
}

}  // namespace

FgScores compute_fairness_goodness(const DirectedGraph& g, std::span<const double> edge_weights,
                                   FgOptions opts) {
  check_inputs(g, edge_weights, opts);
  FgScores s = initial_scores(g);
  std::vector<double> next_g(s.goodness.size());
  std::vector<double> next_f(s.fairness.size());
  const auto n_t = static_cast<std::ptrdiff_t>(s.goodness.size());
  const auto n_o = static_cast<std::ptrdiff_t>(s.fairness.size());

  while (s.iterations < opts.max_iter) {
    double change = 0.0;
#pragma omp parallel for schedule(dynamic, 256) reduction(max : change)
    for (std::ptrdiff_t t = 0; t < n_t; ++t) {
      const auto ti = static_cast<std::size_t>(t);
      next_g[ti] = goodness_of(g, edge_weights, s.fairness, ti, s.goodness[ti]);
      change = std::max(change, std::abs(next_g[ti] - s.goodness[ti]));
    }
#pragma omp parallel for schedule(dynamic, 256) reduction(max : change)
    for (std::ptrdiff_t o = 0; o < n_o; ++o) {
      const auto oi = static_cast<std::size_t>(o);
      next_f[oi] = fairness_of(g, edge_weights, next_g, oi, s.fairness[oi]);
      change = std::max(change, std::abs(next_f[oi] - s.fairness[oi]));
    }
    s.goodness.swap(next_g);
    s.fairness.swap(next_f);
    ++s.iterations;
    s.max_change.push_back(change);
    check_ranges(s);
    if (change < opts.tol) {
      s.converged = true;
      break;
    }
  }
  return s;
}

FgScores compute_fairness_goodness_serial(const DirectedGraph& g,
                                          std::span<const double> edge_weights, FgOptions opts) {
  check_inputs(g, edge_weights, opts);
  FgScores s = initial_scores(g);
  std::vector<double> next_g(s.goodness.size());
  std::vector<double> next_f(s.fairness.size());

  while (s.iterations < opts.max_iter) {
    double change = 0.0;
    for (std::size_t t = 0; t < next_g.size(); ++t) {
      next_g[t] = goodness_of(g, edge_weights, s.fairness, t, s.goodness[t]);
      change = std::max(change, std::abs(next_g[t] - s.goodness[t]));
    }
    for (std::size_t o = 0; o < next_f.size(); ++o) {
      next_f[o] = fairness_of(g, edge_weights, next_g, o, s.fairness[o]);
      change = std::max(change, std::abs(next_f[o] - s.fairness[o]));
    }
    s.goodness.swap(next_g);
    s.fairness.swap(next_f);
    ++s.iterations;
    s.max_change.push_back(change);
    check_ranges(s);
    if (change < opts.tol) {
      s.converged = true;
      break;
    }
  }
  return s;
}

}  // namespace wdn
