#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wdn/graph.hpp"
#include "wdn/weighting.hpp"

namespace wdn {

/// Unit interval all edge weights are rescaled into.
inline constexpr WeightRange kSignedUnit{-1.0, 1.0};

struct DatasetSpec {
  std::string path;
  /// Declared range of the raw weights, e.g. [-10, 10] for Bitcoin OTC.
  WeightRange weight_range{-1.0, 1.0};
  /// Require a fourth (timestamp) column on every line.
  bool has_timestamp = false;
  /// Field separator; '\0' picks ',' when a line contains one, otherwise
  /// runs of blanks and tabs.
  char delimiter = '\0';
};

struct EdgeRecord {
  std::string origin;
  std::string terminal;
  double weight = 0.0;
  std::optional<double> timestamp;
  std::size_t line = 0;
};

/// Parses `origin, terminal, weight[, timestamp]` lines. Blank lines and
/// lines starting with '#' or '%' are skipped; a first data line whose
/// weight field is not numeric is taken as a header. ParseError (with the
/// line number) on a wrong field count, a bad number, a weight outside the
/// declared range or an input without records.
std::vector<EdgeRecord> parse_edge_list(std::istream& in, const DatasetSpec& spec,
                                        std::string_view source = "<input>");
/// Reads `spec.path`; IoError when it cannot be opened.
std::vector<EdgeRecord> parse_edge_list(const DatasetSpec& spec);

/// Affine map of [from.lo, from.hi] onto [to.lo, to.hi]; for the default
/// target this is (2w - (a+b)) / (b-a). InputError when raw is outside
/// `from`.
double rescale(double raw, WeightRange from, WeightRange to = kSignedUnit);

struct CollapseResult {
  std::vector<EdgeRecord> records;
  std::size_t duplicates = 0;
};

/// One record per (origin, terminal): the latest one when every copy has a
/// timestamp (file order breaks ties), otherwise the mean weight. Output
/// keeps the position of each pair's first occurrence.
CollapseResult collapse_duplicates(std::vector<EdgeRecord> records);

enum class Task { Edge, Origin, Terminal };

std::string_view to_string(Task t) noexcept;
std::optional<Task> parse_task(std::string_view s);

/// Training size as a fraction (rounded down) or an absolute count.
struct TrainSize {
  std::variant<double, std::size_t> value = 0.7;

  static TrainSize fraction(double f) { return {f}; }
  static TrainSize count(std::size_t n) { return {n}; }
  /// ParameterError unless the result is in [1, population).
  std::size_t resolve(std::size_t population) const;
  std::string describe() const;
};

/// Default train size for a task: 3500 edges, 70% of vertices.
TrainSize default_train_size(Task task);

struct SplitPlan {
  std::uint64_t seed = 1;
  TrainSize train;
};

/// Disjoint, sorted train/test index sets covering the population.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Draws the training set uniformly without replacement from
/// {0, ..., population-1}; deterministic in the seed.
Split make_split(std::size_t population, const SplitPlan& plan);

struct Provenance {
  std::string source;
  std::string source_sha256;
  WeightRange raw_range;
  std::size_t records_parsed = 0;
  std::size_t duplicates_collapsed = 0;
  std::optional<std::size_t> sample_size;
  std::uint64_t sample_seed = 0;
  std::string sampler;
};

/// Edge-weighted graph with weights already rescaled to [-1, 1].
struct Dataset {
  DirectedGraph graph;
  std::vector<double> edge_weights;
  Provenance provenance;

  /// Share of edges with a strictly positive weight, in percent.
  double positive_edge_percent() const;
};

/// Builds a dataset from records: collapse duplicates, optionally sample
/// `sample_size` edges uniformly (kept in file order), rescale, build the
/// graph. ParameterError when the sample exceeds the available edges.
Dataset make_dataset(std::vector<EdgeRecord> records, WeightRange raw_range,
                     std::optional<std::size_t> sample_size, std::uint64_t seed);

/// parse_edge_list + make_dataset, with the source checksum recorded.
Dataset ingest_dataset(const DatasetSpec& spec, std::optional<std::size_t> sample_size,
                       std::uint64_t seed);

/// Canonical JSON snapshot text (stable byte-for-byte for equal datasets).
std::string serialize_snapshot(const Dataset& d);
/// InputError on schema violations.
Dataset parse_snapshot(std::string_view text);

void save_snapshot(const Dataset& d, const std::string& path);

struct LoadedSnapshot {
  Dataset dataset;
  std::string sha256;
};
LoadedSnapshot load_snapshot(const std::string& path);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);
/// Whole-file contents; IoError when unreadable.
std::string read_file(const std::string& path);

}  // namespace wdn
