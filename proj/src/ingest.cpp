#include "wdn/ingest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "wdn/errors.hpp"
#include "wdn/random.hpp"

namespace wdn {

namespace {

constexpr std::string_view kBlanks = " \t\r";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(kBlanks);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kBlanks);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  const char sep = delimiter ? delimiter : (line.find(',') != std::string_view::npos ? ',' : ' ');
  if (sep == ' ' || sep == '\t') {
    std::size_t i = 0;
    while (i < line.size()) {
      i = line.find_first_not_of(kBlanks, i);
      if (i == std::string_view::npos) break;
      const auto j = std::min(line.find_first_of(kBlanks, i), line.size());
      fields.push_back(line.substr(i, j - i));
      i = j;
    }
    return fields;
  }
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::optional<double> to_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string format_range(WeightRange r) {
  std::ostringstream os;
  os << "[" << r.lo << ", " << r.hi << "]";
  return os.str();
}

}  // namespace

std::vector<EdgeRecord> parse_edge_list(std::istream& in, const DatasetSpec& spec,
                                        std::string_view source) {
  if (!(spec.weight_range.lo < spec.weight_range.hi)) {
    throw ParameterError("dataset weight range must satisfy lo < hi");
  }
  const std::string src(source);
  std::vector<EdgeRecord> records;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_data_line = false;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == '%') continue;

    const auto fields = split_fields(line, spec.delimiter);
    const bool first = !seen_data_line;
    seen_data_line = true;
    if (fields.size() < 3 || fields.size() > 4) {
      if (first && fields.size() >= 3) continue;
      throw ParseError(src, line_no,
                       "expected 3 or 4 fields, found " + std::to_string(fields.size()));
    }
    const auto weight = to_number(fields[2]);
    if (!weight) {
      if (first) continue;  // header
      throw ParseError(src, line_no, "weight '" + std::string(fields[2]) + "' is not a number");
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(src, line_no, "empty vertex token");
    }
    if (!spec.weight_range.contains(*weight)) {
      throw ParseError(src, line_no,
                       "weight " + std::string(fields[2]) + " outside " +
                           format_range(spec.weight_range));
    }
    EdgeRecord rec{std::string(fields[0]), std::string(fields[1]), *weight, std::nullopt, line_no};
    if (fields.size() == 4) {
      const auto ts = to_number(fields[3]);
      if (!ts) {
        throw ParseError(src, line_no, "timestamp '" + std::string(fields[3]) + "' is not a number");
      }
      rec.timestamp = *ts;
    } else if (spec.has_timestamp) {
      throw ParseError(src, line_no, "missing timestamp field");
    }
    records.push_back(std::move(rec));
  }
  if (in.bad()) throw IoError(src + ": read failure");
  if (records.empty()) throw ParseError(src, 0, "no edge records");
  return records;
}

std::vector<EdgeRecord> parse_edge_list(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw IoError("cannot open '" + spec.path + "'");
  return parse_edge_list(in, spec, spec.path);
}

double rescale(double raw, WeightRange from, WeightRange to) {
  if (!(from.lo < from.hi) || !(to.lo < to.hi)) throw ParameterError("degenerate rescale range");
  if (!std::isfinite(raw) || !from.contains(raw)) {
    throw InputError("weight " + std::to_string(raw) + " outside " + format_range(from));
  }
  if (to == kSignedUnit) return (2.0 * raw - (from.lo + from.hi)) / (from.hi - from.lo);
  return to.lo + (raw - from.lo) * (to.hi - to.lo) / (from.hi - from.lo);
}

CollapseResult collapse_duplicates(std::vector<EdgeRecord> records) {
  struct Group {
    std::size_t slot;
    std::size_t copies;
    double mean;
    bool all_timestamped;
    std::size_t latest;  // index into records
  };
  std::unordered_map<std::string, Group> groups;
  std::vector<std::size_t> order;  // first-occurrence record index per slot

  for (std::size_t i = 0; i < records.size(); ++i) {
    const EdgeRecord& r = records[i];
    std::string key = r.origin;
    key.push_back('\0');
    key += r.terminal;
    auto [it, inserted] = groups.try_emplace(std::move(key), Group{order.size(), 0, 0.0, true, i});
    Group& grp = it->second;
    if (inserted) order.push_back(i);
    ++grp.copies;
    grp.mean += (r.weight - grp.mean) / static_cast<double>(grp.copies);
    grp.all_timestamped = grp.all_timestamped && r.timestamp.has_value();
    if (grp.all_timestamped && *r.timestamp >= *records[grp.latest].timestamp) grp.latest = i;
  }

  CollapseResult out;
  out.records.resize(order.size());
  for (auto& [key, grp] : groups) {
    EdgeRecord rec;
    if (grp.copies == 1 || grp.all_timestamped) {
      rec = records[grp.copies == 1 ? order[grp.slot] : grp.latest];
    } else {
      rec = records[order[grp.slot]];
      rec.weight = grp.mean;
      rec.timestamp.reset();
    }
    out.records[grp.slot] = std::move(rec);
  }
  out.duplicates = records.size() - order.size();
  return out;
}

std::string_view to_string(Task t) noexcept {
  switch (t) {
    case Task::Edge: return "edge";
    case Task::Origin: return "origin";
    case Task::Terminal: return "terminal";
  }
  return "unknown";
}

std::optional<Task> parse_task(std::string_view s) {
  if (s == "edge") return Task::Edge;
  if (s == "origin") return Task::Origin;
  if (s == "terminal") return Task::Terminal;
  return std::nullopt;
}

std::size_t TrainSize::resolve(std::size_t population) const {
  std::size_t n = 0;
  if (const double* f = std::get_if<double>(&value)) {
    if (!(*f > 0.0 && *f < 1.0)) throw ParameterError("train fraction must lie in (0, 1)");
    n = static_cast<std::size_t>(std::floor(*f * static_cast<double>(population)));
  } else {
    n = std::get<std::size_t>(value);
  }
  if (n == 0 || n >= population) {
    throw ParameterError("training size " + std::to_string(n) + " must lie in [1, " +
                         std::to_string(population) + ")");
  }
  return n;
}

std::string TrainSize::describe() const {
  if (const double* f = std::get_if<double>(&value)) {
    std::ostringstream os;
    os << "fraction:" << *f;
    return os.str();
  }
  return "count:" + std::to_string(std::get<std::size_t>(value));
}

TrainSize default_train_size(Task task) {
  return task == Task::Edge ? TrainSize::count(3500) : TrainSize::fraction(0.7);
}

Split make_split(std::size_t population, const SplitPlan& plan) {
  const std::size_t n_train = plan.train.resolve(population);
  SeededSampler sampler(plan.seed);
  Split split;
  split.train = sampler.sample(population, n_train);
  std::sort(split.train.begin(), split.train.end());
  split.test.reserve(population - n_train);
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < population; ++i) {
    if (cursor < split.train.size() && split.train[cursor] == i) {
      ++cursor;
    } else {
      split.test.push_back(i);
    }
  }
  return split;
}

double Dataset::positive_edge_percent() const {
  if (edge_weights.empty()) return 0.0;
  const auto positive = std::count_if(edge_weights.begin(), edge_weights.end(),
                                      [](double w) { return w > 0.0; });
  return 100.0 * static_cast<double>(positive) / static_cast<double>(edge_weights.size());
}

Dataset make_dataset(std::vector<EdgeRecord> records, WeightRange raw_range,
                     std::optional<std::size_t> sample_size, std::uint64_t seed) {
  Dataset d;
  d.provenance.raw_range = raw_range;
  d.provenance.records_parsed = records.size();
  CollapseResult collapsed = collapse_duplicates(std::move(records));
  d.provenance.duplicates_collapsed = collapsed.duplicates;
  d.provenance.sample_seed = seed;
  d.provenance.sampler = std::string(kSamplerName);

  std::vector<EdgeRecord>& all = collapsed.records;
  std::vector<std::size_t> keep(all.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  if (sample_size) {
    if (*sample_size == 0 || *sample_size > all.size()) {
      throw ParameterError("sample size " + std::to_string(*sample_size) + " exceeds the " +
                           std::to_string(all.size()) + " distinct edges available");
    }
    keep = SeededSampler(seed).sample(all.size(), *sample_size);
    std::sort(keep.begin(), keep.end());
    d.provenance.sample_size = sample_size;
  }

  std::vector<TokenEdge> tokens;
  tokens.reserve(keep.size());
  d.edge_weights.reserve(keep.size());
  for (std::size_t i : keep) {
    tokens.emplace_back(all[i].origin, all[i].terminal);
    d.edge_weights.push_back(rescale(all[i].weight, raw_range));
  }
  d.graph = build_graph(tokens);
  return d;
}

Dataset ingest_dataset(const DatasetSpec& spec, std::optional<std::size_t> sample_size,
                       std::uint64_t seed) {
  const std::string bytes = read_file(spec.path);
  std::istringstream in(bytes);
  Dataset d = make_dataset(parse_edge_list(in, spec, spec.path), spec.weight_range, sample_size,
                           seed);
  d.provenance.source = spec.path;
  d.provenance.source_sha256 = sha256_hex(bytes);
  return d;
}

namespace {

using nlohmann::json;

constexpr std::string_view kSnapshotFormat = "wdn-snapshot";
constexpr int kSnapshotVersion = 1;

}  // namespace

std::string serialize_snapshot(const Dataset& d) {
  const Provenance& p = d.provenance;
  json prov = {
      {"source", p.source},
      {"source_sha256", p.source_sha256},
      {"raw_range", {p.raw_range.lo, p.raw_range.hi}},
      {"records_parsed", p.records_parsed},
      {"duplicates_collapsed", p.duplicates_collapsed},
      {"sample_size", p.sample_size ? json(*p.sample_size) : json(nullptr)},
      {"sample_seed", p.sample_seed},
      {"sampler", p.sampler},
  };
  json edges = json::array();
  for (std::size_t e = 0; e < d.graph.edge_count(); ++e) {
    const Edge& ed = d.graph.edges()[e];
    edges.push_back({ed.origin, ed.terminal, d.edge_weights[e]});
  }
  json doc = {
      {"format", kSnapshotFormat},
      {"version", kSnapshotVersion},
      {"provenance", std::move(prov)},
      {"origins", std::vector<std::string>(d.graph.origin_tokens().begin(),
                                           d.graph.origin_tokens().end())},
      {"terminals", std::vector<std::string>(d.graph.terminal_tokens().begin(),
                                             d.graph.terminal_tokens().end())},
      {"edges", std::move(edges)},
  };
  return doc.dump(1) + "\n";
}

Dataset parse_snapshot(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("snapshot is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kSnapshotFormat ||
        doc.at("version").get<int>() != kSnapshotVersion) {
      throw InputError("unsupported snapshot format or version");
    }
    Dataset d;
    const json& prov = doc.at("provenance");
    Provenance& p = d.provenance;
    p.source = prov.at("source").get<std::string>();
    p.source_sha256 = prov.at("source_sha256").get<std::string>();
    p.raw_range = {prov.at("raw_range").at(0).get<double>(), prov.at("raw_range").at(1).get<double>()};
    p.records_parsed = prov.at("records_parsed").get<std::size_t>();
    p.duplicates_collapsed = prov.at("duplicates_collapsed").get<std::size_t>();
    if (!prov.at("sample_size").is_null()) p.sample_size = prov.at("sample_size").get<std::size_t>();
    p.sample_seed = prov.at("sample_seed").get<std::uint64_t>();
    p.sampler = prov.at("sampler").get<std::string>();

    std::vector<Edge> edges;
    for (const json& e : doc.at("edges")) {
      if (e.size() != 3) throw InputError("snapshot edge entries must be [origin, terminal, weight]");
      edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
      const double w = e.at(2).get<double>();
      if (!std::isfinite(w) || !kSignedUnit.contains(w)) {
        throw InputError("snapshot edge weight outside [-1, 1]");
      }
      d.edge_weights.push_back(w);
    }
    d.graph = DirectedGraph::from_parts(doc.at("origins").get<std::vector<std::string>>(),
                                        doc.at("terminals").get<std::vector<std::string>>(),
                                        std::move(edges));
    if (d.graph.edge_count() == 0) throw InputError("snapshot has no edges");
    return d;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed snapshot: ") + e.what());
  }
}

void save_snapshot(const Dataset& d, const std::string& path) {
  const std::string text = serialize_snapshot(d);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

LoadedSnapshot load_snapshot(const std::string& path) {
  const std::string text = read_file(path);
  return {parse_snapshot(text), sha256_hex(text)};
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw NumericError("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return ss.str();
}

}  // namespace wdn
