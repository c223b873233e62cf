#include "wdn/metric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "wdn/errors.hpp"

namespace wdn {

namespace {

void check_bandwidth(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ParameterError("bandwidth h must be a positive finite number, got " + std::to_string(h));
  }
}

CountProfile profile_unchecked(std::span<const std::size_t> neighbors, const PartialWeighting& w,
                               double h) {
  CountProfile p;
  p.neighbor_count = neighbors.size();
  if (neighbors.empty()) return p;
  const double avg =
      running_mean(neighbors, [&w](std::size_t a) { return w.weight_unchecked(a); });
  p.avg_weight = avg;
  for (std::size_t a : neighbors) {
    if (std::abs(w.weight_unchecked(a) - avg) <= h) ++p.c_count;
  }
  return p;
}

void check_neighbors(std::span<const std::size_t> neighbors, const PartialWeighting& w) {
  for (std::size_t a : neighbors) {
    if (!w.contains(a)) {
      throw DomainError("neighbor " + std::to_string(a) + " has no training weight");
    }
  }
}

void check_weighting(const DirectedGraph& g, const PartialWeighting& w) {
  if (w.universe_size() != element_count(g, w.variant())) {
    throw DomainError("weighting does not match the graph");
  }
}

}  // namespace

std::optional<double> avg_neighbor_weight(std::span<const std::size_t> neighbors,
                                          const PartialWeighting& w) {
  check_neighbors(neighbors, w);
  if (neighbors.empty()) return std::nullopt;
  return running_mean(neighbors, [&w](std::size_t a) { return w.weight_unchecked(a); });
}

std::size_t c_count(std::span<const std::size_t> neighbors, const PartialWeighting& w, double h) {
  return make_profile(neighbors, w, h).c_count;
}

CountProfile make_profile(std::span<const std::size_t> neighbors, const PartialWeighting& w,
                          double h) {
  check_bandwidth(h);
  check_neighbors(neighbors, w);
  return profile_unchecked(neighbors, w, h);
}

const CountProfile& ProfileTable::at(std::size_t element) const {
  if (element >= profiles_.size()) {
    throw DomainError(std::string(to_string(kind_)) + " " + std::to_string(element) +
                      " is not in the profile table");
  }
  return profiles_[element];
}

MetricValue ProfileTable::distance(std::size_t x, std::size_t y) const {
  const std::size_t cx = at(x).c_count;
  const std::size_t cy = at(y).c_count;
  return cx > cy ? cx - cy : cy - cx;
}

MetricValue ProfileTable::distance(ElementRef x, ElementRef y) const {
  if (x.kind != y.kind || x.kind != kind_) {
    throw DomainError("distance between a " + std::string(to_string(x.kind)) + " and a " +
                      std::string(to_string(y.kind)) + " in a " + std::string(to_string(kind_)) +
                      " table");
  }
  return distance(x.index, y.index);
}

ProfileTable compute_profiles(const DirectedGraph& g, const PartialWeighting& w, double h,
                              NeighborOptions opts) {
  check_bandwidth(h);
  check_weighting(g, w);
  const std::size_t n = w.universe_size();
  std::vector<CountProfile> profiles(n);
  const auto count = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel
  {
    NeighborScanner scanner(g, w, opts);
    std::vector<std::size_t> neighbors;
#pragma omp for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      scanner.scan(static_cast<std::size_t>(i), neighbors);
      profiles[static_cast<std::size_t>(i)] = profile_unchecked(neighbors, w, h);
    }
  }
  return ProfileTable(w.variant(), h, opts, std::move(profiles));
}

ProfileTable compute_profiles_serial(const DirectedGraph& g, const PartialWeighting& w, double h,
                                     NeighborOptions opts) {
  check_bandwidth(h);
  check_weighting(g, w);
  NeighborScanner scanner(g, w, opts);
  std::vector<CountProfile> profiles;
  profiles.reserve(w.universe_size());
  std::vector<std::size_t> neighbors;
  for (std::size_t i = 0; i < w.universe_size(); ++i) {
    scanner.scan(i, neighbors);
    profiles.push_back(profile_unchecked(neighbors, w, h));
  }
  return ProfileTable(w.variant(), h, opts, std::move(profiles));
}

double default_bandwidth(const PartialWeighting& w) {
  const double sd = w.stddev();
  return sd > kMinBandwidth ? sd : kMinBandwidth;
}

TieStatistics tie_statistics(const ProfileTable& table, std::span<const std::size_t> subset) {
  TieStatistics stats;
  std::map<std::size_t, std::size_t> classes;
  for (std::size_t e : subset) {
    const CountProfile& p = table.at(e);
    ++classes[p.c_count];
    if (p.neighbor_count == 0) ++stats.empty_neighborhoods;
  }
  stats.elements = subset.size();
  stats.distinct_counts = classes.size();
  for (const auto& [count, size] : classes) stats.largest_class = std::max(stats.largest_class, size);
  return stats;
}

TieStatistics tie_statistics(const ProfileTable& table) {
  std::vector<std::size_t> all(table.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return tie_statistics(table, all);
}

}  // namespace wdn
