#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wdn/graph.hpp"
#include "wdn/neighbors.hpp"
#include "wdn/weighting.hpp"

namespace wdn {

/// Smallest bandwidth used when the training weights have zero spread.
inline constexpr double kMinBandwidth = 1e-9;

/// Cached neighborhood summary of one element.
struct CountProfile {
  std::size_t neighbor_count = 0;
  /// Mean training weight over the neighbors; empty when there are none.
  std::optional<double> avg_weight;
  /// Neighbors whose weight lies within h of avg_weight.
  std::size_t c_count = 0;

  friend bool operator==(const CountProfile&, const CountProfile&) = default;
};

/// Distance between two elements; always a count difference.
using MetricValue = std::size_t;

/// An element tagged with the set it belongs to.
struct ElementRef {
  Variant kind;
  std::size_t index;
};

/// Mean training weight over `neighbors`, or nullopt for an empty set.
/// DomainError when a neighbor has no training weight.
std::optional<double> avg_neighbor_weight(std::span<const std::size_t> neighbors,
                                          const PartialWeighting& w);

/// Number of neighbors within `h` of their own average. Zero for an empty
/// neighbor set. ParameterError when h is not positive.
std::size_t c_count(std::span<const std::size_t> neighbors, const PartialWeighting& w, double h);

/// neighbor_count, avg_weight and c_count in one pass over `neighbors`.
CountProfile make_profile(std::span<const std::size_t> neighbors, const PartialWeighting& w,
                          double h);

/**
 * Count profiles of every element of one kind, for a fixed weighting and h.
 *
 * The distance D_h(x, y) = |C_h(x) - C_h(y)| is a metric modulo the
 * equivalence x ≅ y ⇔ C_h(x) = C_h(y).
 */
class ProfileTable {
 public:
  ProfileTable() = default;
  ProfileTable(Variant kind, double h, NeighborOptions opts, std::vector<CountProfile> profiles)
      : kind_(kind), h_(h), opts_(opts), profiles_(std::move(profiles)) {}

  Variant kind() const noexcept { return kind_; }
  double h() const noexcept { return h_; }
  NeighborOptions options() const noexcept { return opts_; }
  std::size_t size() const noexcept { return profiles_.size(); }
  std::span<const CountProfile> profiles() const noexcept { return profiles_; }

  const CountProfile& at(std::size_t element) const;
  std::size_t c_count(std::size_t element) const { return at(element).c_count; }

  MetricValue distance(std::size_t x, std::size_t y) const;
  /// Checked form: DomainError when x and y (or the table) differ in kind.
  MetricValue distance(ElementRef x, ElementRef y) const;
  bool equivalent(std::size_t x, std::size_t y) const { return distance(x, y) == 0; }

  friend bool operator==(const ProfileTable&, const ProfileTable&) = default;

 private:
  Variant kind_ = Variant::OriginWeights;
  double h_ = 1.0;
  NeighborOptions opts_{};
  std::vector<CountProfile> profiles_;
};

/// Profiles of all elements, OpenMP-parallel over elements.
ProfileTable compute_profiles(const DirectedGraph& g, const PartialWeighting& w, double h,
                              NeighborOptions opts = {});

/// Single-threaded reference for compute_profiles.
ProfileTable compute_profiles_serial(const DirectedGraph& g, const PartialWeighting& w, double h,
                                     NeighborOptions opts = {});

/// Default bandwidth: the training weights' standard deviation, floored at
/// kMinBandwidth.
double default_bandwidth(const PartialWeighting& w);

/// How strongly the one-dimensional count geometry collapses a set.
struct TieStatistics {
  std::size_t elements = 0;
  std::size_t distinct_counts = 0;
  std::size_t largest_class = 0;
  std::size_t empty_neighborhoods = 0;
};

TieStatistics tie_statistics(const ProfileTable& table, std::span<const std::size_t> subset);
TieStatistics tie_statistics(const ProfileTable& table);

}  // namespace wdn
