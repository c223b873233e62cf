#include "wdn/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wdn/errors.hpp"

namespace wdn {

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::OriginWeights: return "origin";
    case Variant::TerminalWeights: return "terminal";
    case Variant::EdgeWeights: return "edge";
  }
  return "unknown";
}

std::size_t element_count(const DirectedGraph& g, Variant v) noexcept {
  switch (v) {
    case Variant::OriginWeights: return g.origin_count();
    case Variant::TerminalWeights: return g.terminal_count();
    case Variant::EdgeWeights: return g.edge_count();
  }
  return 0;
}

PartialWeighting::PartialWeighting(Variant variant, std::size_t universe_size, WeightRange range,
                                   std::span<const std::pair<std::size_t, double>> entries)
    : variant_(variant), range_(range), values_(universe_size, 0.0), in_domain_(universe_size, 0) {
  if (!(range.lo < range.hi)) throw ParameterError("weight range must satisfy lo < hi");
  domain_.reserve(entries.size());
  for (const auto& [element, w] : entries) {
    if (element >= universe_size) {
      throw DomainError("training element " + std::to_string(element) + " is not in the " +
                        std::string(to_string(variant)) + " set");
    }
    if (in_domain_[element]) {
      throw InputError("training element " + std::to_string(element) + " weighted twice");
    }
    if (!std::isfinite(w) || !range.contains(w)) {
      throw InputError("weight " + std::to_string(w) + " outside [" + std::to_string(range.lo) +
                       ", " + std::to_string(range.hi) + "]");
    }
    in_domain_[element] = 1;
    values_[element] = w;
    domain_.push_back(element);
  }
  std::sort(domain_.begin(), domain_.end());
}

double PartialWeighting::weight(std::size_t element) const {
  if (!contains(element)) {
    throw DomainError("element " + std::to_string(element) + " has no training weight");
  }
  return values_[element];
}

double PartialWeighting::mean() const {
  if (domain_.empty()) throw InputError("mean of an empty training set");
  return running_mean(domain_, [this](std::size_t e) { return values_[e]; });
}

double PartialWeighting::stddev() const {
  const double m = mean();
  double ss = 0.0;
  for (std::size_t e : domain_) ss += (values_[e] - m) * (values_[e] - m);
  return std::sqrt(ss / static_cast<double>(domain_.size()));
}

}  // namespace wdn
