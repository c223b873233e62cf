#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wdn/graph.hpp"

namespace wdn {

/// Which element set of the graph carries the known weights.
enum class Variant { OriginWeights, TerminalWeights, EdgeWeights };

std::string_view to_string(Variant v) noexcept;

/// Number of origins, terminals or edges of `g`, matching the variant.
std::size_t element_count(const DirectedGraph& g, Variant v) noexcept;

/// Closed interval [lo, hi].
struct WeightRange {
  double lo = -1.0;
  double hi = 1.0;

  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  double clamp(double x) const noexcept { return x < lo ? lo : (x > hi ? hi : x); }
  friend bool operator==(const WeightRange&, const WeightRange&) = default;
};

/**
 * Training weights on a subset of origins (O_A), terminals (T_B) or edges
 * (E_L) of a graph, each inside a declared range.
 *
 * Elements are the dense indices of the corresponding graph element set.
 * The domain is kept sorted so iteration order never depends on the order
 * the entries were supplied in.
 */
class PartialWeighting {
 public:
  PartialWeighting() = default;

  /// Throws DomainError for indices outside the element set, InputError for
  /// repeated indices and for non-finite or out-of-range weights.
  PartialWeighting(Variant variant, std::size_t universe_size, WeightRange range,
                   std::span<const std::pair<std::size_t, double>> entries);

  PartialWeighting(const DirectedGraph& g, Variant variant, WeightRange range,
                   std::span<const std::pair<std::size_t, double>> entries)
      : PartialWeighting(variant, element_count(g, variant), range, entries) {}

  Variant variant() const noexcept { return variant_; }
  WeightRange range() const noexcept { return range_; }
  std::size_t universe_size() const noexcept { return in_domain_.size(); }

  /// Sorted training elements.
  std::span<const std::size_t> domain() const noexcept { return domain_; }
  std::size_t size() const noexcept { return domain_.size(); }
  bool empty() const noexcept { return domain_.empty(); }

  bool contains(std::size_t element) const noexcept {
    return element < in_domain_.size() && in_domain_[element] != 0;
  }

  /// Weight of a training element; DomainError when absent.
  double weight(std::size_t element) const;

  /// Unchecked access for hot loops; `contains(element)` must hold.
  double weight_unchecked(std::size_t element) const noexcept { return values_[element]; }

  /// Arithmetic mean of the training weights; InputError when empty.
  double mean() const;
  /// Population standard deviation of the training weights.
  double stddev() const;

 private:
  Variant variant_ = Variant::OriginWeights;
  WeightRange range_{};
  std::vector<std::size_t> domain_;
  std::vector<double> values_;
  std::vector<char> in_domain_;
};

/// Mean that returns exactly `x` when every input equals `x`.
template <typename Range, typename Proj>
double running_mean(const Range& items, Proj proj) {
  double m = 0.0;
  std::size_t n = 0;
  for (const auto& item : items) {
    ++n;
    m += (proj(item) - m) / static_cast<double>(n);
  }
  return m;
}

}  // namespace wdn
