#include <gtest/gtest.h>

#include "sonnetssl/cli/app.hpp"
#include "sonnetssl/eval/benchmark.hpp"
#include "sonnetssl/eval/cv.hpp"
#include "sonnetssl/eval/report.hpp"
#include "test_support.hpp"

namespace sonnetssl {
namespace {

LabelTable toy_single(std::size_t n) {
  LabelTable t;
  for (std::size_t i = 0; i < n; ++i) t["psychological/fear"]["s" + std::to_string(i)] = static_cast<int>(i % 2);
  return t;
}

// 24 sonnets, one binary and one 4-level category.
LabelTable toy_two() {
  LabelTable t;
  for (int i = 0; i < 24; ++i) {
    const std::string id = "t" + std::to_string(100 + i);
    t["psychological/fear"][id] = i % 3 == 0;
    t["scaled/valence"][id] = 1 + i % 4;
  }
  return t;
}

TEST(CvSample, ToyBinaryCategory) {
  const auto s = cv_sample(toy_single(10), 2, 1);
  EXPECT_EQ(s.train_ids.size(), 4u);
  EXPECT_EQ(s.test_ids.size(), 6u);
  const auto table = toy_single(10);
  const auto& col = table.at("psychological/fear");
  int ones = 0;
  for (const auto& id : s.train_ids) ones += col.at(id);
  EXPECT_EQ(ones, 2);
  EXPECT_TRUE(s.warnings.empty());
}

TEST(CvSample, DrawsAndPartitionAreExact) {
  const auto table = toy_two();
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto s = cv_sample(table, 2, seed);
    for (const auto& [cat, column] : table) {
      const auto& per_value = s.draws.at(cat);
      EXPECT_EQ(per_value.size(), cat.starts_with("scaled") ? 4u : 2u);
      for (const auto& [value, ids] : per_value) {
        EXPECT_EQ(ids.size(), 2u);
        for (const auto& id : ids) {
          EXPECT_EQ(column.at(id), value);
          EXPECT_TRUE(s.train_ids.contains(id));
        }
      }
    }
    std::set<std::string> all = s.train_ids;
    for (const auto& id : s.test_ids) {
      EXPECT_FALSE(s.train_ids.contains(id));
      all.insert(id);
    }
    EXPECT_EQ(all, s.annotated);
    EXPECT_EQ(all.size(), 24u);
  }
}

TEST(CvSample, SameSeedSameSplit) {
  const auto a = cv_sample(toy_two(), 2, 99), b = cv_sample(toy_two(), 2, 99);
  EXPECT_EQ(a.train_ids, b.train_ids);
  EXPECT_EQ(a.draws, b.draws);
  bool differs = false;
  for (std::uint64_t seed = 0; seed < 10 && !differs; ++seed) differs = cv_sample(toy_two(), 2, seed).train_ids != a.train_ids;
  EXPECT_TRUE(differs);
}

TEST(CvSample, ShortValuesWarnAndTakeAll) {
  LabelTable t;
  t["psychological/fear"] = {{"a", 0}, {"b", 0}, {"c", 0}, {"d", 1}};
  const auto s = cv_sample(t, 2, 5);
  EXPECT_EQ(s.draws.at("psychological/fear").at(1), (std::vector<std::string>{"d"}));
  EXPECT_EQ(s.warnings.size(), 1u);
  EXPECT_EQ(s.train_ids.size(), 3u);
}

TEST(CvSample, PerCategoryMode) {
  const auto s = cv_sample(toy_two(), 2, 3, CvMode::kPerCategory);
  const auto fear = s.train_for("psychological/fear");
  EXPECT_EQ(fear.size(), 4u);
  EXPECT_EQ(s.test_for("psychological/fear").size(), 20u);
  EXPECT_EQ(s.train_for("scaled/valence").size(), 8u);
  const auto u = cv_sample(toy_two(), 2, 3, CvMode::kUnion);
  EXPECT_EQ(u.train_for("psychological/fear"), u.train_ids);
}

// ---------------------------------------------------------------------------

cli::RunConfig fixture_config() {
  return cli::resolve_config(ConfigFile::load(testing::data_dir() / "fixture" / "benchmark.toml"));
}

const BenchmarkData& fixture_data() {
  static const BenchmarkData data = cli::load_benchmark_data(fixture_config());
  return data;
}

BenchmarkConfig one_combo() {
  auto cfg = fixture_config().bench;
  cfg.categories = {"psychological/solitude"};
  cfg.semantic_models = {"synthetic-sentence-8"};
  cfg.predictive_models = {"LS-GBDT-RBF"};
  cfg.n_repeats = 1;
  cfg.variant_no_gam = false;
  cfg.variant_disco_only = false;
  return cfg;
}

TEST(Benchmark, OneComboGivesOneRecordPlusBaselines) {
  const auto rep = run_benchmark(fixture_data(), one_combo());
  ASSERT_TRUE(rep.failures.empty()) << rep.failures[0].message;
  ASSERT_EQ(rep.records.size(), 3u);
  EXPECT_EQ(rep.records[0].predictive_model, "LS-GBDT-RBF");
  EXPECT_EQ(rep.records[0].variant, Variant::kFull);
  EXPECT_EQ(rep.records[1].variant, Variant::kBaseline);
  EXPECT_EQ(rep.records[2].variant, Variant::kBaselineSmote);
  EXPECT_EQ(rep.best.size(), 1u);
  EXPECT_EQ(rep.best[0].predictive_model, "LS-GBDT-RBF");
  for (const auto& a : rep.aggregates) EXPECT_EQ(a.n, 1u);
}

TEST(Benchmark, TestCountsCoverTheTestSet) {
  auto cfg = one_combo();
  cfg.n_repeats = 2;
  const auto rep = run_benchmark(fixture_data(), cfg);
  const LabelTable labels = label_table(fixture_data().corpus, {parse_category("psychological/solitude")});
  for (const auto& r : rep.records) {
    const auto split = cv_sample(labels, cfg.n_per_value, derive_seed(cfg.seed, 0x5eed'c0deULL, r.repeat),
                                 cfg.cv_mode, r.repeat);
    std::size_t total = 0;
    for (const auto& [cls, n] : r.test_class_counts) total += n;
    EXPECT_EQ(total, split.test_ids.size());
    EXPECT_GE(r.auc, 0.0);
    EXPECT_LE(r.auc, 1.0);
    EXPECT_GE(r.kappa, -1.0);
    EXPECT_LE(r.kappa, 1.0);
  }
}

TEST(Benchmark, IdenticalSeedsGiveIdenticalReports) {
  auto cfg = one_combo();
  cfg.predictive_models = {"ST-GBDT", "LS-GBDT-SMOTE-KNN"};
  cfg.n_repeats = 2;
  cfg.variant_disco_only = true;
  const auto a = to_json(run_benchmark(fixture_data(), cfg)).dump();
  cfg.jobs = 3;
  auto b_rep = run_benchmark(fixture_data(), cfg);
  b_rep.config = nlohmann::json::parse(a)["config"];  // jobs differs in the echo only
  EXPECT_EQ(a, to_json(b_rep).dump());
}

TEST(Benchmark, ComparisonsAreReported) {
  auto cfg = one_combo();
  cfg.n_repeats = 2;
  cfg.variant_no_gam = true;
  cfg.variant_disco_only = true;
  const auto rep = run_benchmark(fixture_data(), cfg);
  std::set<std::string> kinds;
  for (const auto& c : rep.comparisons) {
    kinds.insert(c.kind);
    EXPECT_TRUE(c.degenerate);  // two repeats are too few pairs
    EXPECT_EQ(c.p_value, 1.0);
    EXPECT_EQ(c.n_pairs, 2u);
  }
  EXPECT_EQ(kinds, (std::set<std::string>{"best_vs_baseline", "best_vs_baseline_smote", "full_vs_no_gam",
                                          "full_vs_disco_only"}));
}

TEST(Benchmark, ConfigErrors) {
  auto cfg = one_combo();
  cfg.predictive_models = {"LS-SVM"};
  EXPECT_THROW(run_benchmark(fixture_data(), cfg), ConfigError);
  cfg = one_combo();
  cfg.semantic_models = {"nope"};
  EXPECT_THROW(run_benchmark(fixture_data(), cfg), ConfigError);
  cfg = one_combo();
  cfg.categories = {"psychological/boredom"};
  EXPECT_THROW(run_benchmark(fixture_data(), cfg), ConfigError);
}

// Hiding the test labels (they are never read) and deleting them from the
// corpus must give the same predictions.
TEST(Benchmark, HidingEqualsDeletingTestLabels) {
  const auto& data = fixture_data();
  auto cfg = one_combo();
  const auto labels = label_table(data.corpus, {parse_category("psychological/solitude")});
  const auto split = cv_sample(labels, cfg.n_per_value, 17);
  BenchmarkData erased = data;
  for (const auto& id : split.test_ids) erased.corpus.annotations.erase(id);

  const std::vector<std::pair<std::string, Variant>> plan = {
      {"ST-GBDT", Variant::kFull},       {"LS-GBDT-KNN", Variant::kFull},
      {"LS-GBDT-SMOTE-RBF", Variant::kNoGam}, {"LS-GBDT-RBF", Variant::kDiscoOnly},
      {"GBDT", Variant::kBaseline},      {"GBDT-SMOTE", Variant::kBaselineSmote}};
  for (const auto& [model, variant] : plan) {
    const CellTask task{"psychological/solitude", model, variant, split.train_ids, split.test_ids, 5};
    const auto a = fit_predict(data, data.semantic[0], cfg, task);
    const auto b = fit_predict(erased, erased.semantic[0], cfg, task);
    EXPECT_EQ(a.proba, b.proba) << model;
    EXPECT_EQ(a.test_ids, b.test_ids);
  }
}

TEST(Report, JsonRoundTrip) {
  auto cfg = one_combo();
  cfg.variant_disco_only = true;
  const auto rep = run_benchmark(fixture_data(), cfg);
  const auto j = to_json(rep);
  EXPECT_EQ(to_json(report_from_json(j)).dump(), j.dump());
  EXPECT_EQ(records_csv(report_from_json(j)), records_csv(rep));
  const auto svg = svg_boxplot(rep, "psychological/solitude");
  EXPECT_TRUE(svg.starts_with("<svg") || svg.starts_with("<?xml"));
}

}  // namespace
}  // namespace sonnetssl
