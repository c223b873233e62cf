#include "wdn/knn.hpp"

#include <algorithm>
#include <string>

#include "wdn/errors.hpp"

namespace wdn {

std::string_view to_string(ZeroDistancePolicy p) noexcept {
  return p == ZeroDistancePolicy::Exclude ? "exclude" : "include";
}

std::string_view to_string(DenominatorPolicy p) noexcept {
  return p == DenominatorPolicy::NeighborhoodSize ? "neighborhood_size" : "fixed_k";
}

void KnnConfig::validate() const {
  if (k == 0) throw ParameterError("k must be at least 1");
}

CountBuckets::CountBuckets(const ProfileTable& table, std::span<const std::size_t> training) {
  for (std::size_t e : training) buckets_[table.c_count(e)].push_back(e);
  for (auto& [count, members] : buckets_) std::sort(members.begin(), members.end());
}

CountBuckets::Selection CountBuckets::select(std::size_t query_count,
                                             const KnnConfig& config) const {
  config.validate();
  Selection sel;
  auto distance = [query_count](std::size_t count) -> MetricValue {
    return count > query_count ? count - query_count : query_count - count;
  };
  auto qualifies = [&config, &distance](std::size_t count) {
    return distance(count) != 0 || config.zero_distance == ZeroDistancePolicy::Include;
  };

  std::vector<MetricValue>& candidates = sel.distances;
  candidates.reserve(buckets_.size());
  for (const auto& [count, members] : buckets_) {
    if (qualifies(count)) candidates.push_back(distance(count));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  sel.degenerate = candidates.size() < config.k;
  if (candidates.size() > config.k) candidates.resize(config.k);

  for (const auto& [count, members] : buckets_) {
    if (qualifies(count) &&
        std::binary_search(candidates.begin(), candidates.end(), distance(count))) {
      sel.counts.push_back(count);
    }
  }
  return sel;
}

KnnNeighborhood CountBuckets::neighborhood(std::size_t query_count, const KnnConfig& config) const {
  Selection sel = select(query_count, config);
  KnnNeighborhood result;
  result.distances = std::move(sel.distances);
  result.degenerate = sel.degenerate;
  for (std::size_t count : sel.counts) {
    const auto& members = buckets_.at(count);
    result.members.insert(result.members.end(), members.begin(), members.end());
  }
  std::sort(result.members.begin(), result.members.end());
  return result;
}

KnnPredictor::KnnPredictor(ProfileTable table, const PartialWeighting& w, KnnConfig config)
    : table_(std::move(table)),
      weights_(&w),
      config_(config),
      buckets_(table_, w.domain()),
      training_mean_(0.0) {
  config_.validate();
  if (w.empty()) throw InputError("kNN needs at least one training element");
  if (table_.kind() != w.variant() || table_.size() != w.universe_size()) {
    throw DomainError("profile table does not match the training weighting");
  }
  training_mean_ = w.mean();
  for (const auto& [count, members] : buckets_.buckets()) {
    bucket_means_[count] = {members.size(), running_mean(members, [&w](std::size_t a) {
                              return w.weight_unchecked(a);
                            })};
  }
}

KnnNeighborhood KnnPredictor::neighborhood(std::size_t element) const {
  return buckets_.neighborhood(table_.c_count(element), config_);
}

KnnPrediction KnnPredictor::predict(std::size_t element) const {
  const CountBuckets::Selection sel = buckets_.select(table_.c_count(element), config_);
  KnnPrediction p;
  p.degenerate = sel.degenerate;
  // Pooled mean of the selected buckets; the update leaves a mean unchanged
  // when both parts agree, so constant weights come back exactly.
  double mean = 0.0;
  double sum = 0.0;
  for (std::size_t count : sel.counts) {
    const auto [n, m] = bucket_means_.at(count);
    p.neighborhood_size += n;
    mean += (m - mean) * (static_cast<double>(n) / static_cast<double>(p.neighborhood_size));
    sum += static_cast<double>(n) * m;
  }
  if (p.neighborhood_size == 0) {
    p.value = training_mean_;
    p.fallback = true;
  } else if (config_.denominator == DenominatorPolicy::NeighborhoodSize) {
    p.value = mean;
  } else {
    p.value = sum / static_cast<double>(config_.k);
  }
  return p;
}

std::vector<KnnPrediction> KnnPredictor::predict_batch(std::span<const std::size_t> elements) const {
  for (std::size_t e : elements) table_.at(e);
  std::vector<KnnPrediction> out(elements.size());
  const auto n = static_cast<std::ptrdiff_t>(elements.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = predict(elements[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<KnnPrediction> KnnPredictor::predict_batch_serial(
    std::span<const std::size_t> elements) const {
  std::vector<KnnPrediction> out;
  out.reserve(elements.size());
  for (std::size_t e : elements) out.push_back(predict(e));
  return out;
}

}  // namespace wdn
