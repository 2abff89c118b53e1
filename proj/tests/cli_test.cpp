#include <gtest/gtest.h>

#include <sstream>

#include "sonnetssl/cli/app.hpp"
#include "test_support.hpp"

namespace sonnetssl {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sonnetssl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return (testing::data_dir() / "fixture" / name).string(); }

TEST(Cli, Help) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"benchmark", "--help"}).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"coverage", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"coverage", "--mode", "lemmas"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"coverage", "--corpus", "/nonexistent.json", "--lexicon", fixture("coverage_lexicon.csv")}).code,
            cli::kExitUsage);
}

TEST(Cli, BadCorpusIsADataError) {
  const auto dir = testing::scratch_dir("cli_bad_corpus");
  testing::spit(dir / "broken.json", "{\"sonnets\": [");
  const auto r = run({"coverage", "--corpus", (dir / "broken.json").string(), "--lexicon", fixture("coverage_lexicon.csv")});
  EXPECT_EQ(r.code, cli::kExitData);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Cli, CoverageFixture) {
  const auto r = run({"coverage", "--corpus", fixture("coverage_corpus.json"), "--lexicon", fixture("coverage_lexicon.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::stod(r.out), 0.5);
}

TEST(Cli, FeaturesAndPreprocessWriteFiles) {
  const auto dir = testing::scratch_dir("cli_features");
  const std::string cfg = fixture("benchmark.toml");
  auto r = run({"features", "--config", cfg, "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = testing::slurp(dir / "features.csv");
  EXPECT_TRUE(csv.starts_with("id,token_count,matched_count,valence_mean"));
  r = run({"preprocess", "--config", cfg, "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "processed.jsonl"));
}

TEST(Cli, BenchmarkIsByteIdenticalAcrossRuns) {
  const auto a = testing::scratch_dir("cli_bench_a"), b = testing::scratch_dir("cli_bench_b");
  const std::vector<std::string> common = {"benchmark", "--config", fixture("benchmark.toml"), "--set",
                                           "protocol.n_repeats=1", "--set", "grid.categories=psychological/solitude"};
  auto args = common;
  args.insert(args.end(), {"--out", a.string()});
  ASSERT_EQ(run(args).code, 0);
  args = common;
  args.insert(args.end(), {"--out", b.string(), "--jobs", "2"});
  ASSERT_EQ(run(args).code, 0);
  for (const char* f : {"records.csv", "aggregates.csv"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(testing::slurp(a / f), testing::slurp(b / f)) << f;
  }
  // report re-emits the same CSVs from the JSON
  const auto c = testing::scratch_dir("cli_bench_c");
  ASSERT_EQ(run({"report", "--input", (a / "report.json").string(), "--out", c.string()}).code, 0);
  EXPECT_EQ(testing::slurp(a / "records.csv"), testing::slurp(c / "records.csv"));
}

TEST(Cli, TrainThenPredict) {
  const auto dir = testing::scratch_dir("cli_train");
  const std::string cfg = fixture("benchmark.toml");
  auto r = run({"train", "--config", cfg, "--out", dir.string(), "--category", "psychological/solitude", "--model",
                "ST-GBDT", "--semantic", "synthetic-sentence-8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string bundle = r.out.substr(0, r.out.find('\n'));
  ASSERT_TRUE(fs::exists(fs::path(bundle) / "model.json"));
  r = run({"predict", "--config", cfg, "--out", dir.string(), "--bundle", bundle});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = testing::slurp(dir / "predictions.csv");
  EXPECT_TRUE(csv.starts_with("id,category,"));
  EXPECT_NE(csv.find("psychological/solitude"), std::string::npos);
}

// ---------------------------------------------------------------------------

TEST(ConfigFile, ParsesSubset) {
  const auto f = ConfigFile::parse(R"(# top
name = "x # not a comment"
[grid]
models = ["a", 'b', 3]   # trailing
[protocol]
n = 12
rate = 0.5
on = true
)");
  EXPECT_EQ(f.get_string("name", ""), "x # not a comment");
  EXPECT_EQ(f.get_list("grid.models"), (std::vector<std::string>{"a", "b", "3"}));
  EXPECT_EQ(f.get_int("protocol.n", 0), 12);
  EXPECT_EQ(f.get_double("protocol.rate", 0), 0.5);
  EXPECT_TRUE(f.get_bool("protocol.on", false));
  EXPECT_EQ(f.get_int("protocol.missing", 9), 9);
  EXPECT_EQ(f.get_list("name"), (std::vector<std::string>{"x # not a comment"}));
}

TEST(ConfigFile, Overrides) {
  auto f = ConfigFile::parse("[protocol]\nn = 12\n");
  f.set("protocol.n=3");
  f.set("grid.categories=scaled/fear");
  EXPECT_EQ(f.get_int("protocol.n", 0), 3);
  EXPECT_EQ(f.get_list("grid.categories"), (std::vector<std::string>{"scaled/fear"}));
  EXPECT_THROW(f.set("no-equals"), ConfigError);
}

TEST(ConfigFile, Errors) {
  EXPECT_THROW(ConfigFile::parse("[open\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse("key\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse("key = bare\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse("key = [1, 2\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse("key = \"open\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse("key = 1 2\n").get_int("key", 0), ConfigError);
  EXPECT_THROW(ConfigFile::parse("key = 1.5\n").get_int("key", 0), ConfigError);
  EXPECT_THROW(ConfigFile::parse("key = 1\n").get_bool("key", false), ConfigError);
  EXPECT_THROW(ConfigFile::load("/nonexistent/config.toml"), ConfigError);
}

TEST(ConfigFile, PathsResolveAgainstTheFile) {
  const auto f = ConfigFile::parse("", "/base/dir");
  EXPECT_EQ(f.resolve_path("../x.json"), "/base/x.json");
  EXPECT_EQ(f.resolve_path("/abs/y.json"), "/abs/y.json");
  EXPECT_EQ(ConfigFile::parse("").resolve_path("a/./b"), "a/b");
}

TEST(ConfigFile, UnknownKeysAreRejected) {
  EXPECT_THROW(cli::resolve_config(ConfigFile::parse("[protocol]\nn_repeat = 3\n")), ConfigError);
  EXPECT_THROW(cli::resolve_config(ConfigFile::parse("[protocol]\ncv_mode = \"stratified\"\n")), ConfigError);
  const auto rc = cli::resolve_config(ConfigFile::parse("[protocol]\ncv_mode = \"per_category\"\n"));
  EXPECT_EQ(rc.bench.cv_mode, CvMode::kPerCategory);
}

}  // namespace
}  // namespace sonnetssl
