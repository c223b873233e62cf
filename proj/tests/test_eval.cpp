#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "wdn/errors.hpp"
#include "wdn/eval.hpp"

namespace wdn {
namespace {

// Small rated network: 12 origins, 10 terminals, about 60 edges.
Dataset synthetic_dataset(std::uint64_t seed, bool constant = false) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> o(0, 11), t(0, 9), r(-10, 10);
  std::vector<EdgeRecord> recs;
  for (int i = 0; i < 80; ++i) {
    recs.push_back({"u" + std::to_string(o(rng)), "v" + std::to_string(t(rng)),
                    constant ? 5.0 : static_cast<double>(r(rng)), std::nullopt,
                    static_cast<std::size_t>(i + 1)});
  }
  return make_dataset(recs, {-10, 10}, std::nullopt, 0);
}

TEST(Metrics, ExactValues) {
  const std::vector<double> p = {0.5, -0.2}, t = {0.1, 0.1};
  EXPECT_NEAR(mae(p, t), 0.35, 1e-12);
  EXPECT_NEAR(rmse(p, t), 0.3535533905932738, 1e-12);
  const std::vector<double> same = {0.3, 0.3};
  EXPECT_EQ(mae(same, same), 0.0);
  EXPECT_EQ(rmse(same, same), 0.0);
}

TEST(Metrics, RmseBoundsMae) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> p(1 + trial % 17), t(p.size());
    for (auto& x : p) x = u(rng);
    for (auto& x : t) x = u(rng);
    ASSERT_GE(rmse(p, t) + 1e-15, mae(p, t));
  }
}

TEST(Metrics, Errors) {
  const std::vector<double> empty, one = {1.0}, two = {1.0, 2.0};
  EXPECT_THROW(mae(empty, empty), InputError);
  EXPECT_THROW(rmse(one, two), InputError);
}

TEST(Parse, TaskAndMethodNames) {
  EXPECT_EQ(parse_task("origin"), Task::Origin);
  EXPECT_EQ(parse_task("edge"), Task::Edge);
  EXPECT_FALSE(parse_task("vertex").has_value());
  EXPECT_EQ(parse_method("svm"), Method::Svm);
  EXPECT_FALSE(parse_method("forest").has_value());
}

class RunExperiment : public ::testing::TestWithParam<std::tuple<Task, Method>> {};

TEST_P(RunExperiment, ConstantWeightsArePredictedExactly) {
  const auto [task, method] = GetParam();
  const Dataset d = synthetic_dataset(4, true);
  ExperimentConfig c;
  c.task = task;
  c.method = method;
  c.train = TrainSize::fraction(0.7);
  const auto r = run_experiment(d, c);
  EXPECT_NEAR(r.report.mae, 0.0, 1e-6);
  EXPECT_NEAR(r.report.rmse, 0.0, 1e-6);
  EXPECT_EQ(r.report.n_test, r.rows.size());
}

TEST_P(RunExperiment, DeterministicAndReproducibleFromConfigJson) {
  const auto [task, method] = GetParam();
  const Dataset d = synthetic_dataset(5);
  ExperimentConfig c;
  c.task = task;
  c.method = method;
  c.train = TrainSize::fraction(0.7);
  c.seed = 9;
  const auto a = run_experiment(d, c, "abc");
  const auto b = run_experiment(d, c, "abc");
  EXPECT_EQ(report_to_json(a.report).dump(), report_to_json(b.report).dump());

  const ExperimentConfig back = config_from_json(a.report.config);
  EXPECT_EQ(config_to_json(back).dump(), a.report.config.dump());
  const auto again = run_experiment(d, back, "abc");
  EXPECT_EQ(report_to_json(again.report).dump(), report_to_json(a.report).dump());

  EXPECT_GE(a.report.rmse, a.report.mae);
  EXPECT_LE(a.report.mae, 2.0);
  EXPECT_EQ(a.report.n_train + a.report.n_test,
            task == Task::Edge     ? d.graph.edge_count()
            : task == Task::Origin ? d.graph.origin_count()
                                   : d.graph.terminal_count());
}

INSTANTIATE_TEST_SUITE_P(AllCells, RunExperiment,
                         ::testing::Combine(::testing::Values(Task::Origin, Task::Terminal,
                                                              Task::Edge),
                                            ::testing::Values(Method::Knn, Method::Svm)),
                         [](const auto& info) {
                           return std::string(to_string(std::get<0>(info.param))) + "_" +
                                  std::string(to_string(std::get<1>(info.param)));
                         });

TEST(RunExperimentErrors, StageIsNamed) {
  const Dataset d = synthetic_dataset(5);
  ExperimentConfig c;
  c.train = TrainSize::count(100000);
  try {
    run_experiment(d, c);
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("split"), std::string::npos) << e.what();
  }
}

TEST(ConfigJson, RejectsMalformed) {
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"task":"vertex"})")), InputError);
  EXPECT_THROW(config_from_json(nlohmann::json::array()), InputError);
}

TEST(PredictionFile, RoundTripReproducesTheReport) {
  const Dataset d = synthetic_dataset(6);
  ExperimentConfig c;
  c.task = Task::Origin;
  c.train = TrainSize::fraction(0.6);
  const auto r = run_experiment(d, c, "feed");

  PredictionFile f{r.report.config, "feed", r.report.n_train, r.report.h, r.rows};
  std::stringstream io;
  write_predictions(io, f);
  const std::string text = io.str();
  const PredictionFile back = read_predictions(io);
  ASSERT_EQ(back.rows.size(), r.rows.size());
  for (std::size_t i = 0; i < back.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].element, r.rows[i].element);
    EXPECT_EQ(back.rows[i].predicted, r.rows[i].predicted);
    EXPECT_EQ(back.rows[i].truth, r.rows[i].truth);
    EXPECT_EQ(back.rows[i].fallback, r.rows[i].fallback);
  }
  const auto rep = evaluate_rows(back.rows, back.config, back.snapshot_sha256);
  EXPECT_EQ(rep.mae, r.report.mae);
  EXPECT_EQ(rep.rmse, r.report.rmse);

  std::stringstream again;
  write_predictions(again, back);
  EXPECT_EQ(again.str(), text);
}

TEST(PredictionFile, RowsWithoutTruthCannotBeScored) {
  std::vector<PredictionRow> rows = {{"x", 0.1, std::nullopt, 1, false, false, false}};
  EXPECT_THROW(evaluate_rows(rows, config_to_json(ExperimentConfig{}), ""), InputError);
  std::istringstream bad("element,predicted\nx,notanumber\n");
  EXPECT_THROW(read_predictions(bad), InputError);
}

TEST(Formatting, PairTableAndSummary) {
  EXPECT_EQ(format_pair(0.1934, 0.3125), "(0.193, 0.312)");
  EvaluationReport e;
  e.task = Task::Edge;
  e.method = Method::Svm;
  e.mae = 0.2;
  e.rmse = 0.3;
  const std::vector<EvaluationReport> reps = {e};
  const std::string t = format_table(reps);
  EXPECT_NE(t.find("(0.200, 0.300)"), std::string::npos) << t;
  EXPECT_NE(t.find("edge        -"), std::string::npos) << t;
  EXPECT_EQ(t.find("origin"), std::string::npos) << t;

  std::vector<EdgeRecord> recs;
  const std::vector<std::pair<std::string, std::string>> edges = {
      {"a", "1"}, {"a", "2"}, {"b", "1"}, {"b", "3"}, {"c", "2"}, {"c", "4"}, {"d", "3"}};
  const double w[] = {1, 1, 1, -1, 1, -1, 1};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    recs.push_back({edges[i].first, edges[i].second, w[i], {}, i + 1});
  }
  const Dataset d = make_dataset(recs, {-1, 1}, std::nullopt, 0);
  const std::string s = format_summary(d, "Example");
  EXPECT_NE(s.find("71.43"), std::string::npos) << s;
}

}  // namespace
}  // namespace wdn
