// Command-line front end: ingest edge lists, derive vertex weights, predict
// held-out weights and score them.
//
// Exit codes: 0 success, 1 usage, 2 IO/parse, 3 numeric failure.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wdn/errors.hpp"
#include "wdn/eval.hpp"
#include "wdn/fairness_goodness.hpp"
#include "wdn/ingest.hpp"

namespace {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kNumeric = 3 };

/// Flags shared by predict, evaluate and reproduce-tables.
struct PredictorFlags {
  std::string snapshot;
  std::string task = "edge";
  std::string method = "knn";
  std::size_t k = 5;
  std::string h = "stddev";
  std::string zero_distance = "exclude";
  std::string denominator = "mean";
  bool exclude_self = false;
  std::string kernel = "rbf";
  int degree = 2;
  std::optional<double> gamma;
  double coef0 = 1.0;
  double lambda = 1e-3;
  std::uint64_t seed = 1;
  std::optional<std::size_t> train_count;
  std::optional<double> train_fraction;
  double tol = 1e-6;
  std::size_t max_iter = 100;
};

CLI::Option* add_predictor_flags(CLI::App* cmd, PredictorFlags& f, bool with_task,
                                 bool snapshot_required = true) {
  auto* snapshot = cmd->add_option("--snapshot", f.snapshot, "Snapshot JSON written by 'ingest'");
  snapshot->required(snapshot_required);
  if (with_task) {
    cmd->add_option("--task", f.task, "edge | origin | terminal")
        ->check(CLI::IsMember({"edge", "origin", "terminal"}))
        ->capture_default_str();
    cmd->add_option("--method", f.method, "knn | svm")
        ->check(CLI::IsMember({"knn", "svm"}))
        ->capture_default_str();
  }
  cmd->add_option("--k", f.k, "kNN: number of distinct distance values")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--bandwidth", f.h, "Bandwidth h: a positive number or 'stddev' of the training weights")
      ->capture_default_str();
  cmd->add_option("--zero-distance", f.zero_distance, "kNN: exclude | include zero distances")
      ->check(CLI::IsMember({"exclude", "include"}))
      ->capture_default_str();
  cmd->add_option("--denominator", f.denominator, "kNN: mean (|kNN set|) | fixed-k (k)")
      ->check(CLI::IsMember({"mean", "fixed-k"}))
      ->capture_default_str();
  cmd->add_flag("--exclude-self", f.exclude_self, "Drop an element from its own neighbor set");
  cmd->add_option("--kernel", f.kernel, "SVM kernel: linear | polynomial | rbf")
      ->check(CLI::IsMember({"linear", "polynomial", "rbf"}))
      ->capture_default_str();
  cmd->add_option("--degree", f.degree, "Polynomial kernel degree")->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "RBF gamma (default: 1/(2 var(transfer values)))");
  cmd->add_option("--coef0", f.coef0, "Polynomial kernel offset")->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "SVM ridge regularization")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Split seed")->capture_default_str();
  auto* count = cmd->add_option("--train-count", f.train_count, "Training set size");
  cmd->add_option("--train-fraction", f.train_fraction, "Training fraction (rounded down)")
      ->excludes(count);
  cmd->add_option("--tol", f.tol, "Fairness/goodness tolerance")->capture_default_str();
  cmd->add_option("--max-iter", f.max_iter, "Fairness/goodness sweep limit")->capture_default_str();
  return snapshot;
}

wdn::ExperimentConfig to_config(const PredictorFlags& f) {
  wdn::ExperimentConfig c;
  c.task = *wdn::parse_task(f.task);
  c.method = *wdn::parse_method(f.method);
  c.knn.k = f.k;
  c.knn.zero_distance = f.zero_distance == "include" ? wdn::ZeroDistancePolicy::Include
                                                     : wdn::ZeroDistancePolicy::Exclude;
  c.knn.denominator = f.denominator == "fixed-k" ? wdn::DenominatorPolicy::FixedK
                                                 : wdn::DenominatorPolicy::NeighborhoodSize;
  if (f.h != "stddev") {
    try {
      std::size_t used = 0;
      c.h = std::stod(f.h, &used);
      if (used != f.h.size()) throw std::invalid_argument(f.h);
    } catch (const std::logic_error&) {
      throw wdn::ParameterError("--bandwidth expects a number or 'stddev', got '" + f.h + "'");
    }
  }
  c.neighbors.exclude_self = f.exclude_self;
  if (f.kernel == "linear") {
    c.svm.kernel = wdn::KernelSpec::linear();
  } else if (f.kernel == "polynomial") {
    c.svm.kernel = wdn::KernelSpec::polynomial(f.degree, f.coef0);
  } else {
    c.svm.kernel = wdn::KernelSpec::rbf(f.gamma);
  }
  c.svm.kernel.validate();
  c.svm.lambda = f.lambda;
  c.seed = f.seed;
  if (f.train_count) c.train = wdn::TrainSize::count(*f.train_count);
  if (f.train_fraction) c.train = wdn::TrainSize::fraction(*f.train_fraction);
  c.fg.tol = f.tol;
  c.fg.max_iter = f.max_iter;
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wdn::IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw wdn::IoError("write to '" + path + "' failed");
}

std::string report_line(const wdn::EvaluationReport& r) {
  return "task=" + std::string(wdn::to_string(r.task)) + " method=" +
         std::string(wdn::to_string(r.method)) + " seed=" + std::to_string(r.seed) +
         " n_test=" + std::to_string(r.n_test) + " (MAE, RMSE) = " + wdn::format_pair(r.mae, r.rmse);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weight prediction on partially weighted directed networks"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  // ingest
  std::string in_path;
  std::vector<double> in_range{-1.0, 1.0};
  std::string in_delim;
  bool in_timestamp = false;
  std::optional<std::size_t> in_sample;
  bool in_no_sample = false;
  std::uint64_t in_seed = 1;
  std::string in_name;
  std::string in_output;
  auto* ingest = app.add_subcommand("ingest", "Parse an edge list into a snapshot");
  ingest->add_option("--input", in_path, "Delimited edge list: origin,terminal,weight[,time]")
      ->required();
  ingest->add_option("--range", in_range, "Declared raw weight range LO HI")
      ->expected(2)
      ->capture_default_str();
  ingest->add_option("--delimiter", in_delim, "Field separator (default: auto)");
  ingest->add_flag("--timestamp", in_timestamp, "Require a timestamp column");
  auto* sample_opt = ingest->add_option(
      "--sample", in_sample, "Edges to sample (default 5000, or all when fewer exist)");
  ingest->add_flag("--no-sample", in_no_sample, "Keep every edge")->excludes(sample_opt);
  ingest->add_option("--seed", in_seed, "Sampling seed")->capture_default_str();
  ingest->add_option("--name", in_name, "Name shown in the summary line");
  ingest->add_option("--output", in_output, "Snapshot path")->required();

  // gen-weights
  std::string gw_snapshot;
  std::string gw_output;
  wdn::FgOptions gw_opts;
  auto* gen = app.add_subcommand("gen-weights", "Compute fairness and goodness vertex weights");
  gen->add_option("--snapshot", gw_snapshot)->required();
  gen->add_option("--output", gw_output, "Weights JSON path")->required();
  gen->add_option("--tol", gw_opts.tol)->capture_default_str();
  gen->add_option("--max-iter", gw_opts.max_iter)->capture_default_str();

  // predict
  PredictorFlags pr;
  std::string pr_output;
  auto* predict = app.add_subcommand("predict", "Predict held-out weights");
  add_predictor_flags(predict, pr, true);
  predict->add_option("--output", pr_output, "Predictions CSV path")->required();

  // evaluate
  PredictorFlags ev;
  std::string ev_predictions;
  std::size_t ev_repeat = 1;
  std::string ev_output;
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions or run experiments");
  auto* ev_pred_opt =
      evaluate->add_option("--predictions", ev_predictions, "Score an existing predictions CSV");
  auto* ev_snap_opt = add_predictor_flags(evaluate, ev, true, false);
  ev_pred_opt->excludes(ev_snap_opt);
  evaluate->add_option("--repeat", ev_repeat, "Run seeds seed, seed+1, ..., seed+N-1")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--output", ev_output, "Report JSON path (array of reports)");

  // reproduce-tables
  PredictorFlags rt;
  std::string rt_output;
  auto* tables = app.add_subcommand("reproduce-tables", "Run 3 tasks x 2 methods and print tables");
  add_predictor_flags(tables, rt, false);
  tables->add_option("--output", rt_output, "Reports JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ingest) {
      if (in_range.size() != 2 || !(in_range[0] < in_range[1])) {
        throw wdn::ParameterError("--range needs LO < HI");
      }
      if (in_delim.size() > 1) throw wdn::ParameterError("--delimiter must be one character");
      wdn::DatasetSpec spec;
      spec.path = in_path;
      spec.weight_range = {in_range[0], in_range[1]};
      spec.has_timestamp = in_timestamp;
      spec.delimiter = in_delim.empty() ? '\0' : in_delim[0];

      std::optional<std::size_t> sample;
      if (in_sample) {
        sample = in_sample;
      } else if (!in_no_sample) {
        const std::string bytes = wdn::read_file(in_path);
        std::istringstream probe(bytes);
        const auto distinct =
            wdn::collapse_duplicates(wdn::parse_edge_list(probe, spec, in_path)).records.size();
        if (distinct > 5000) sample = 5000;
      }
      const wdn::Dataset d = wdn::ingest_dataset(spec, sample, in_seed);
      wdn::save_snapshot(d, in_output);
      std::cout << wdn::format_summary(d, in_name.empty() ? in_path : in_name);
    } else if (*gen) {
      const auto snap = wdn::load_snapshot(gw_snapshot);
      const wdn::DirectedGraph& g = snap.dataset.graph;
      const wdn::FgScores s = wdn::compute_fairness_goodness(g, snap.dataset.edge_weights, gw_opts);
      json fairness = json::object();
      json goodness = json::object();
      for (std::size_t o = 0; o < g.origin_count(); ++o) fairness[g.origin_token(o)] = s.fairness[o];
      for (std::size_t t = 0; t < g.terminal_count(); ++t) goodness[g.terminal_token(t)] = s.goodness[t];
      const json doc = {{"snapshot_sha256", snap.sha256},
                        {"tol", gw_opts.tol},
                        {"max_iter", gw_opts.max_iter},
                        {"iterations", s.iterations},
                        {"converged", s.converged},
                        {"max_change", s.max_change},
                        {"fairness", fairness},
                        {"goodness", goodness}};
      write_text(gw_output, doc.dump(1) + "\n");
      std::cout << "fairness/goodness: " << s.iterations << " sweeps, "
                << (s.converged ? "converged" : "not converged") << "\n";
    } else if (*predict) {
      const wdn::ExperimentConfig config = to_config(pr);
      const auto snap = wdn::load_snapshot(pr.snapshot);
      const auto result = wdn::run_experiment(snap.dataset, config, snap.sha256);
      std::ostringstream os;
      wdn::write_predictions(os, {result.report.config, snap.sha256, result.report.n_train,
                                  result.report.h, result.rows});
      write_text(pr_output, os.str());
      std::cout << result.rows.size() << " predictions written to " << pr_output << "\n";
    } else if (*evaluate) {
      std::vector<wdn::EvaluationReport> reports;
      if (!ev_predictions.empty()) {
        if (ev_repeat != 1) throw wdn::ParameterError("--repeat needs --snapshot");
        std::ifstream in(ev_predictions);
        if (!in) throw wdn::IoError("cannot open '" + ev_predictions + "'");
        const wdn::PredictionFile file = wdn::read_predictions(in, ev_predictions);
        wdn::EvaluationReport r = wdn::evaluate_rows(file.rows, file.config, file.snapshot_sha256);
        r.n_train = file.n_train;
        r.h = file.h;
        reports.push_back(std::move(r));
      } else if (!ev.snapshot.empty()) {
        const auto snap = wdn::load_snapshot(ev.snapshot);
        wdn::ExperimentConfig config = to_config(ev);
        for (std::size_t i = 0; i < ev_repeat; ++i) {
          config.seed = ev.seed + i;
          reports.push_back(wdn::run_experiment(snap.dataset, config, snap.sha256).report);
        }
      } else {
        throw wdn::ParameterError("evaluate needs --predictions or --snapshot");
      }
      json out = json::array();
      for (const auto& r : reports) {
        std::cout << report_line(r) << "\n";
        out.push_back(wdn::report_to_json(r));
      }
      if (!ev_output.empty()) write_text(ev_output, out.dump(1) + "\n");
    } else if (*tables) {
      const auto snap = wdn::load_snapshot(rt.snapshot);
      std::vector<wdn::EvaluationReport> reports;
      json out = json::array();
      for (const char* task : {"origin", "terminal", "edge"}) {
        for (const char* method : {"knn", "svm"}) {
          PredictorFlags f = rt;
          f.task = task;
          f.method = method;
          reports.push_back(wdn::run_experiment(snap.dataset, to_config(f), snap.sha256).report);
          out.push_back(wdn::report_to_json(reports.back()));
        }
      }
      std::cout << wdn::format_table(reports, "Results (MAE, RMSE), seed " + std::to_string(rt.seed));
      if (!rt_output.empty()) write_text(rt_output, out.dump(1) + "\n");
    }
  } catch (const wdn::ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const wdn::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kIo;
  } catch (const wdn::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const wdn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}
