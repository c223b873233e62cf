#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "wdn/metric.hpp"
#include "wdn/weighting.hpp"

namespace wdn {

enum class ZeroDistancePolicy {
  Exclude,  ///< only nonzero distances qualify (equivalent elements are skipped)
  Include,  ///< zero distances are admitted as the smallest values
};

enum class DenominatorPolicy {
  NeighborhoodSize,  ///< mean over the kNN set
  FixedK,            ///< sum over the kNN set divided by k
};

std::string_view to_string(ZeroDistancePolicy p) noexcept;
std::string_view to_string(DenominatorPolicy p) noexcept;

struct KnnConfig {
  std::size_t k = 5;
  ZeroDistancePolicy zero_distance = ZeroDistancePolicy::Exclude;
  DenominatorPolicy denominator = DenominatorPolicy::NeighborhoodSize;

  /// ParameterError when k == 0.
  void validate() const;
};

struct KnnNeighborhood {
  /// Training elements whose distance is one of the selected values, sorted.
  std::vector<std::size_t> members;
  /// The selected distinct distance values d_1 < ... < d_j, j <= k.
  std::vector<MetricValue> distances;
  /// Fewer than k distinct qualifying distance values existed.
  bool degenerate = false;
};

struct KnnPrediction {
  double value = 0.0;
  std::size_t neighborhood_size = 0;
  bool degenerate = false;
  /// The kNN set was empty and the global training mean was used.
  bool fallback = false;
};

/**
 * Training elements bucketed by c_count.
 *
 * Distances are differences of integer counts, so the kNN set of a query is
 * the union of the buckets whose count lies at one of the k smallest
 * distinct (nonzero) distances from the query's count.
 */
class CountBuckets {
 public:
  CountBuckets(const ProfileTable& table, std::span<const std::size_t> training);

  /// Counts of the buckets forming the kNN set, ascending, plus the
  /// distances and degenerate flag of the neighborhood.
  struct Selection {
    std::vector<std::size_t> counts;
    std::vector<MetricValue> distances;
    bool degenerate = false;
  };
  Selection select(std::size_t query_count, const KnnConfig& config) const;

  KnnNeighborhood neighborhood(std::size_t query_count, const KnnConfig& config) const;
  const std::map<std::size_t, std::vector<std::size_t>>& buckets() const noexcept {
    return buckets_;
  }

 private:
  std::map<std::size_t, std::vector<std::size_t>> buckets_;
};

/// kNN regression over a fixed profile table and training weighting.
class KnnPredictor {
 public:
  /// `table` must be built from `w`, and `w` must outlive the predictor.
  /// InputError when `w` is empty.
  KnnPredictor(ProfileTable table, const PartialWeighting& w, KnnConfig config);

  const ProfileTable& table() const noexcept { return table_; }
  const KnnConfig& config() const noexcept { return config_; }
  double training_mean() const noexcept { return training_mean_; }

  KnnNeighborhood neighborhood(std::size_t element) const;
  KnnPrediction predict(std::size_t element) const;

  /// OpenMP-parallel over `elements`; results in input order.
  std::vector<KnnPrediction> predict_batch(std::span<const std::size_t> elements) const;
  std::vector<KnnPrediction> predict_batch_serial(std::span<const std::size_t> elements) const;

 private:
  ProfileTable table_;
  const PartialWeighting* weights_;
  KnnConfig config_;
  CountBuckets buckets_;
  // Per-bucket size and mean weight, so predictions never materialize the
  // (often tie-heavy) member lists.
  std::map<std::size_t, std::pair<std::size_t, double>> bucket_means_;
  double training_mean_;
};

}  // namespace wdn
