#include "wdn/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "wdn/errors.hpp"
#include "wdn/random.hpp"

namespace wdn {

using nlohmann::json;

namespace {

void check_pairs(std::span<const double> p, std::span<const double> t) {
  if (p.empty()) throw InputError("error metrics need at least one prediction");
  if (p.size() != t.size()) throw InputError("predictions and truths differ in length");
}

/// Runs `f`, prefixing the message of any library error with `name`.
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  const std::string prefix = std::string(name) + ": ";
  try {
    return f();
  } catch (const ParameterError& e) {
    throw ParameterError(prefix + e.what());
  } catch (const DomainError& e) {
    throw DomainError(prefix + e.what());
  } catch (const InputError& e) {
    throw InputError(prefix + e.what());
  } catch (const NumericError& e) {
    throw NumericError(prefix + e.what());
  } catch (const IoError& e) {
    throw IoError(prefix + e.what());
  }
}

std::string to_chars_shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

json ties_to_json(const TieStatistics& t) {
  return {{"elements", t.elements},
          {"distinct_counts", t.distinct_counts},
          {"largest_class", t.largest_class},
          {"empty_neighborhoods", t.empty_neighborhoods}};
}

std::string element_label(const DirectedGraph& g, Task task, std::size_t i) {
  switch (task) {
    case Task::Origin: return g.origin_token(i);
    case Task::Terminal: return g.terminal_token(i);
    case Task::Edge: return g.edge_label(i);
  }
  return {};
}

Variant variant_for(Task task) {
  switch (task) {
    case Task::Origin: return Variant::OriginWeights;
    case Task::Terminal: return Variant::TerminalWeights;
    case Task::Edge: return Variant::EdgeWeights;
  }
  return Variant::EdgeWeights;
}

}  // namespace

double mae(std::span<const double> predictions, std::span<const double> truths) {
  check_pairs(predictions, truths);
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) sum += std::abs(predictions[i] - truths[i]);
  return sum / static_cast<double>(predictions.size());
}

double rmse(std::span<const double> predictions, std::span<const double> truths) {
  check_pairs(predictions, truths);
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - truths[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(predictions.size()));
}

std::string_view to_string(Method m) noexcept { return m == Method::Knn ? "knn" : "svm"; }

std::optional<Method> parse_method(std::string_view s) {
  if (s == "knn") return Method::Knn;
  if (s == "svm") return Method::Svm;
  return std::nullopt;
}

json config_to_json(const ExperimentConfig& c) {
  const TrainSize train = c.effective_train();
  json train_j;
  if (const double* f = std::get_if<double>(&train.value)) {
    train_j = {{"kind", "fraction"}, {"value", *f}};
  } else {
    train_j = {{"kind", "count"}, {"value", std::get<std::size_t>(train.value)}};
  }
  const KernelSpec& k = c.svm.kernel;
  return {
      {"task", to_string(c.task)},
      {"method", to_string(c.method)},
      {"seed", c.seed},
      {"h_mode", c.h ? "fixed" : "stddev"},
      {"h", c.h ? json(*c.h) : json(nullptr)},
      {"train", train_j},
      {"knn",
       {{"k", c.knn.k},
        {"zero_distance", to_string(c.knn.zero_distance)},
        {"denominator", to_string(c.knn.denominator)}}},
      {"svm",
       {{"kernel",
         {{"kind", to_string(k.kind)},
          {"degree", k.degree},
          {"gamma", k.gamma ? json(*k.gamma) : json(nullptr)},
          {"coef0", k.coef0}}},
        {"lambda", c.svm.lambda}}},
      {"neighbors", {{"exclude_self", c.neighbors.exclude_self}}},
      {"fairness_goodness", {{"tol", c.fg.tol}, {"max_iter", c.fg.max_iter}}},
      {"sampler", kSamplerName},
  };
}

ExperimentConfig config_from_json(const json& j) {
  try {
    ExperimentConfig c;
    const auto task = parse_task(j.at("task").get<std::string>());
    const auto method = parse_method(j.at("method").get<std::string>());
    if (!task || !method) throw InputError("unknown task or method in config");
    c.task = *task;
    c.method = *method;
    c.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("h").is_null()) c.h = j.at("h").get<double>();
    const json& train = j.at("train");
    if (train.at("kind") == "fraction") {
      c.train = TrainSize::fraction(train.at("value").get<double>());
    } else {
      c.train = TrainSize::count(train.at("value").get<std::size_t>());
    }
    const json& knn = j.at("knn");
    c.knn.k = knn.at("k").get<std::size_t>();
    c.knn.zero_distance = knn.at("zero_distance") == "include" ? ZeroDistancePolicy::Include
                                                               : ZeroDistancePolicy::Exclude;
    c.knn.denominator = knn.at("denominator") == "fixed_k" ? DenominatorPolicy::FixedK
                                                           : DenominatorPolicy::NeighborhoodSize;
    const json& kernel = j.at("svm").at("kernel");
    const std::string kind = kernel.at("kind").get<std::string>();
    c.svm.kernel.kind = kind == "linear"       ? KernelKind::Linear
                        : kind == "polynomial" ? KernelKind::Polynomial
                                               : KernelKind::Rbf;
    c.svm.kernel.degree = kernel.at("degree").get<int>();
    if (!kernel.at("gamma").is_null()) c.svm.kernel.gamma = kernel.at("gamma").get<double>();
    c.svm.kernel.coef0 = kernel.at("coef0").get<double>();
    c.svm.lambda = j.at("svm").at("lambda").get<double>();
    c.neighbors.exclude_self = j.at("neighbors").at("exclude_self").get<bool>();
    c.fg.tol = j.at("fairness_goodness").at("tol").get<double>();
    c.fg.max_iter = j.at("fairness_goodness").at("max_iter").get<std::size_t>();
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed run config: ") + e.what());
  }
}

json report_to_json(const EvaluationReport& r) {
  return {
      {"task", to_string(r.task)},
      {"method", to_string(r.method)},
      {"mae", r.mae},
      {"rmse", r.rmse},
      {"n_train", r.n_train},
      {"n_test", r.n_test},
      {"seed", r.seed},
      {"h", r.h},
      {"flags",
       {{"fallback_to_mean", r.flags.fallback},
        {"clamped", r.flags.clamped},
        {"degenerate_knn", r.flags.degenerate}}},
      {"snapshot_sha256", r.snapshot_sha256},
      {"config", r.config},
      {"details", r.details},
  };
}

ExperimentResult run_experiment(const Dataset& data, const ExperimentConfig& config,
                                std::string_view snapshot_sha256) {
  const DirectedGraph& g = data.graph;
  const Variant variant = variant_for(config.task);
  json details = json::object();

  // Ground-truth weights of the task's element set.
  std::vector<double> values;
  WeightRange range = kSignedUnit;
  stage("weights", [&] {
    if (config.task == Task::Edge) {
      values = data.edge_weights;
      return;
    }
    const FgScores fg = compute_fairness_goodness(g, data.edge_weights, config.fg);
    details["fairness_goodness"] = {
        {"iterations", fg.iterations},
        {"converged", fg.converged},
        {"final_change", fg.max_change.empty() ? 0.0 : fg.max_change.back()}};
    if (config.task == Task::Origin) {
      values = fg.fairness;
      range = {0.0, 1.0};
    } else {
      values = fg.goodness;
    }
  });

  const Split split =
      stage("split", [&] { return make_split(values.size(), {config.seed, config.effective_train()}); });

  std::vector<std::pair<std::size_t, double>> entries;
  entries.reserve(split.train.size());
  for (std::size_t e : split.train) entries.emplace_back(e, values[e]);
  const PartialWeighting training =
      stage("weighting", [&] { return PartialWeighting(g, variant, range, entries); });

  const double h = config.h ? *config.h : default_bandwidth(training);
  ProfileTable table =
      stage("profiles", [&] { return compute_profiles(g, training, h, config.neighbors); });
  details["ties_test"] = ties_to_json(tie_statistics(table, split.test));
  details["ties_train"] = ties_to_json(tie_statistics(table, split.train));

  ExperimentResult result;
  EvaluationReport& report = result.report;
  result.rows.reserve(split.test.size());
  stage("predict", [&] {
    if (config.method == Method::Knn) {
      const KnnPredictor knn(std::move(table), training, config.knn);
      const auto preds = knn.predict_batch(split.test);
      for (std::size_t i = 0; i < preds.size(); ++i) {
        const std::size_t e = split.test[i];
        result.rows.push_back({element_label(g, config.task, e), preds[i].value, values[e],
                               preds[i].neighborhood_size, preds[i].fallback, preds[i].degenerate,
                               false});
      }
    } else {
      const SvmPredictor svm(std::move(table), training, config.svm);
      const SvmModel& m = svm.model();
      details["svm"] = {{"centers", m.centers.size()},
                        {"merged_points", m.merged_points},
                        {"training_mae", m.training_mae},
                        {"gamma", m.kernel.gamma ? json(*m.kernel.gamma) : json(nullptr)}};
      const auto preds = svm.predict_batch(split.test);
      for (std::size_t i = 0; i < preds.size(); ++i) {
        const std::size_t e = split.test[i];
        result.rows.push_back(
            {element_label(g, config.task, e), preds[i].value, values[e], 0, false, false,
             preds[i].clamped});
      }
    }
  });

  report = stage("score", [&] { return evaluate_rows(result.rows, config_to_json(config), snapshot_sha256); });
  report.n_train = split.train.size();
  report.h = h;
  report.details = std::move(details);
  return result;
}

EvaluationReport evaluate_rows(std::span<const PredictionRow> rows, const json& config,
                               std::string_view snapshot_sha256) {
  if (rows.empty()) throw InputError("no predictions to evaluate");
  std::vector<double> p;
  std::vector<double> t;
  p.reserve(rows.size());
  t.reserve(rows.size());
  EvaluationReport r;
  for (const PredictionRow& row : rows) {
    if (!row.truth) throw InputError("prediction for '" + row.element + "' has no truth value");
    p.push_back(row.predicted);
    t.push_back(*row.truth);
    r.flags.fallback += row.fallback;
    r.flags.degenerate += row.degenerate;
    r.flags.clamped += row.clamped;
  }
  r.mae = mae(p, t);
  r.rmse = rmse(p, t);
  if (!std::isfinite(r.mae) || !std::isfinite(r.rmse)) throw NumericError("non-finite error metric");
  r.n_test = rows.size();
  r.config = config;
  r.snapshot_sha256 = std::string(snapshot_sha256);
  if (config.is_object()) {
    if (auto task = parse_task(config.value("task", ""))) r.task = *task;
    if (auto method = parse_method(config.value("method", ""))) r.method = *method;
    r.seed = config.value("seed", std::uint64_t{0});
  }
  return r;
}

void write_predictions(std::ostream& out, const PredictionFile& file) {
  out << "# wdn-predictions v1\n";
  out << "# config: " << file.config.dump() << "\n";
  out << "# snapshot_sha256: " << file.snapshot_sha256 << "\n";
  out << "# n_train: " << file.n_train << "\n";
  out << "# h: " << to_chars_shortest(file.h) << "\n";
  out << "element,predicted,truth,neighborhood_size,flags\n";
  for (const PredictionRow& r : file.rows) {
    std::string flags;
    auto add = [&flags](bool on, const char* name) {
      if (!on) return;
      if (!flags.empty()) flags.push_back('|');
      flags += name;
    };
    add(r.fallback, "fallback");
    add(r.degenerate, "degenerate");
    add(r.clamped, "clamped");
    out << r.element << ',' << to_chars_shortest(r.predicted) << ','
        << (r.truth ? to_chars_shortest(*r.truth) : std::string()) << ',' << r.neighborhood_size
        << ',' << (flags.empty() ? "-" : flags) << '\n';
  }
}

PredictionFile read_predictions(std::istream& in, std::string_view source) {
  const std::string src(source);
  PredictionFile file;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  auto parse_double = [&](std::string_view s, const char* what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(src, line_no, std::string("bad ") + what + " '" + std::string(s) + "'");
    }
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kConfig = "# config: ";
      constexpr std::string_view kSha = "# snapshot_sha256: ";
      if (line.starts_with(kConfig)) {
        try {
          file.config = json::parse(line.substr(kConfig.size()));
        } catch (const json::parse_error& e) {
          throw ParseError(src, line_no, std::string("bad config line: ") + e.what());
        }
      } else if (line.starts_with(kSha)) {
        file.snapshot_sha256 = line.substr(kSha.size());
      } else if (line.starts_with("# n_train: ")) {
        const std::string_view v = std::string_view(line).substr(11);
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), file.n_train);
        if (ec != std::errc()) throw ParseError(src, line_no, "bad n_train");
      } else if (line.starts_with("# h: ")) {
        file.h = parse_double(std::string_view(line).substr(5), "h");
      }
      continue;
    }
    if (!header_seen) {
      if (!line.starts_with("element,predicted,truth")) {
        throw ParseError(src, line_no, "missing 'element,predicted,truth,...' header");
      }
      header_seen = true;
      continue;
    }
    // The element label may itself contain commas; the other four fields
    // are taken from the right.
    std::vector<std::size_t> commas;
    for (std::size_t i = line.size(); i-- > 0 && commas.size() < 4;) {
      if (line[i] == ',') commas.push_back(i);
    }
    if (commas.size() < 4) throw ParseError(src, line_no, "expected 5 fields");
    std::reverse(commas.begin(), commas.end());
    const std::string_view view(line);
    PredictionRow row;
    row.element = line.substr(0, commas[0]);
    row.predicted = parse_double(view.substr(commas[0] + 1, commas[1] - commas[0] - 1), "prediction");
    const std::string_view truth = view.substr(commas[1] + 1, commas[2] - commas[1] - 1);
    if (!truth.empty()) row.truth = parse_double(truth, "truth");
    const std::string_view nsize = view.substr(commas[2] + 1, commas[3] - commas[2] - 1);
    const auto [ptr, ec] = std::from_chars(nsize.data(), nsize.data() + nsize.size(), row.neighborhood_size);
    if (ec != std::errc() || ptr != nsize.data() + nsize.size()) {
      throw ParseError(src, line_no, "bad neighborhood size");
    }
    const std::string_view flags = view.substr(commas[3] + 1);
    row.fallback = flags.find("fallback") != std::string_view::npos;
    row.degenerate = flags.find("degenerate") != std::string_view::npos;
    row.clamped = flags.find("clamped") != std::string_view::npos;
    file.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError(src, line_no, "empty predictions file");
  return file;
}

std::string format_pair(double mae_value, double rmse_value) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << "(" << mae_value << ", " << rmse_value << ")";
  return os.str();
}

std::string format_table(std::span<const EvaluationReport> reports, std::string_view title) {
  std::map<std::pair<Task, Method>, const EvaluationReport*> cells;
  for (const auto& r : reports) cells[{r.task, r.method}] = &r;
  std::ostringstream os;
  if (!title.empty()) os << title << "\n";
  const auto rule = std::string(48, '-');
  os << rule << "\n"
     << std::left << std::setw(12) << "Task" << std::setw(18) << "kNN" << std::setw(18) << "SVM"
     << "\n"
     << rule << "\n";
  for (Task t : {Task::Origin, Task::Terminal, Task::Edge}) {
    const auto knn = cells.find({t, Method::Knn});
    const auto svm = cells.find({t, Method::Svm});
    if (knn == cells.end() && svm == cells.end()) continue;
    auto cell = [](auto it, const auto& all) {
      return it == all.end() ? std::string("-") : format_pair(it->second->mae, it->second->rmse);
    };
    os << std::left << std::setw(12) << to_string(t) << std::setw(18) << cell(knn, cells)
       << std::setw(18) << cell(svm, cells) << "\n";
  }
  os << rule << "\n";
  return os.str();
}

std::string format_summary(const Dataset& d, std::string_view name) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "Network" << std::setw(10) << "Origins" << std::setw(11)
     << "Terminals" << std::setw(8) << "Edges"
     << "% Positive E\n"
     << std::setw(16) << name << std::setw(10) << d.graph.origin_count() << std::setw(11)
     << d.graph.terminal_count() << std::setw(8) << d.graph.edge_count() << std::fixed
     << std::setprecision(2) << d.positive_edge_percent() << "%\n";
  return os.str();
}

}  // namespace wdn
