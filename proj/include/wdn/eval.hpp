#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wdn/fairness_goodness.hpp"
#include "wdn/ingest.hpp"
#include "wdn/knn.hpp"
#include "wdn/metric.hpp"
#include "wdn/neighbors.hpp"
#include "wdn/svm.hpp"

namespace wdn {

/// Mean absolute error. InputError for empty or unequal-length inputs.
double mae(std::span<const double> predictions, std::span<const double> truths);
/// Root mean square error. Same preconditions as mae().
double rmse(std::span<const double> predictions, std::span<const double> truths);

enum class Method { Knn, Svm };

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view s);

/// Everything that determines an experiment run besides the snapshot.
struct ExperimentConfig {
  Task task = Task::Edge;
  Method method = Method::Knn;
  KnnConfig knn;
  SvmConfig svm;
  /// Fixed bandwidth; unset means the training weights' standard deviation.
  std::optional<double> h;
  NeighborOptions neighbors;
  /// Unset means the task default (3500 edges or 70% of vertices).
  std::optional<TrainSize> train;
  std::uint64_t seed = 1;
  FgOptions fg;

  TrainSize effective_train() const { return train ? *train : default_train_size(task); }
};

nlohmann::json config_to_json(const ExperimentConfig& c);
/// Inverse of config_to_json. InputError on malformed input.
ExperimentConfig config_from_json(const nlohmann::json& j);

struct PredictionRow {
  std::string element;
  double predicted = 0.0;
  std::optional<double> truth;
  std::size_t neighborhood_size = 0;
  bool fallback = false;
  bool degenerate = false;
  bool clamped = false;
};

struct ReportFlags {
  std::size_t fallback = 0;
  std::size_t clamped = 0;
  std::size_t degenerate = 0;
};

struct EvaluationReport {
  Task task = Task::Edge;
  Method method = Method::Knn;
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::uint64_t seed = 0;
  double h = 0.0;
  ReportFlags flags;
  std::string snapshot_sha256;
  nlohmann::json config;
  /// Stage-specific extras (tie statistics, fairness/goodness convergence,
  /// fitted SVM summary).
  nlohmann::json details = nlohmann::json::object();
};

nlohmann::json report_to_json(const EvaluationReport& r);

struct ExperimentResult {
  EvaluationReport report;
  std::vector<PredictionRow> rows;
};

/**
 * Runs one experiment end to end. Vertex tasks first derive fairness
 * (origins, range [0,1]) or goodness (terminals, range [-1,1]) from the
 * edge weights; then the task's element set is split with the config seed,
 * the predictor is built on the training part and scored on the rest.
 * Errors from a stage are rethrown with the stage name prefixed.
 */
ExperimentResult run_experiment(const Dataset& data, const ExperimentConfig& config,
                                std::string_view snapshot_sha256 = {});

/// Report from existing prediction rows; InputError when a row has no truth.
EvaluationReport evaluate_rows(std::span<const PredictionRow> rows, const nlohmann::json& config,
                               std::string_view snapshot_sha256);

/// Prediction file: '#' metadata lines (config JSON, snapshot checksum,
/// training size, bandwidth)
/// followed by `element,predicted,truth,neighborhood_size,flags` rows.
struct PredictionFile {
  nlohmann::json config;
  std::string snapshot_sha256;
  std::size_t n_train = 0;
  double h = 0.0;
  std::vector<PredictionRow> rows;
};

void write_predictions(std::ostream& out, const PredictionFile& file);
PredictionFile read_predictions(std::istream& in, std::string_view source = "<predictions>");

/// "(0.193, 0.312)" with three decimals.
std::string format_pair(double mae, double rmse);

/// Task-by-method table of (MAE, RMSE) cells; tasks in origin, terminal,
/// edge order, methods kNN then SVM. Missing cells print as "-".
std::string format_table(std::span<const EvaluationReport> reports, std::string_view title = {});

/// Origins / terminals / edges / % positive edges line for a dataset.
std::string format_summary(const Dataset& d, std::string_view name);

}  // namespace wdn
