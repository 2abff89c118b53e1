#include <gtest/gtest.h>

#include <cmath>

#include "gam_fixture.hpp"
#include "sonnetssl/lexicon.hpp"
#include "sonnetssl/text/stopwords.hpp"
#include "test_support.hpp"

namespace sonnetssl {
namespace {

using D = Dimension;

LexiconTable table(std::string name, std::vector<std::tuple<std::string, D, double>> rows) {
  LexiconTable t{std::move(name), {}};
  for (auto& [w, d, v] : rows) {
    LexiconEntry e;
    e.word = w;
    e.mean[index(d)] = v;
    t.rows.push_back(e);
  }
  return t;
}

TEST(MergeLexicons, AveragesDuplicatesAcrossSources) {
  const auto m = merge_lexicons({table("A", {{"amor", D::kValence, 5}}), table("B", {{"amor", D::kValence, 7}})});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_DOUBLE_EQ(*m.lookup("amor")->mean_of(D::kValence), 6.0);
}

TEST(MergeLexicons, SingleSourceUnchanged) {
  const auto m = merge_lexicons({table("A", {{"noche", D::kArousal, 3.25}})});
  const auto e = lookup(m, "noch");
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(*e->mean_of(D::kArousal), 3.25);
  EXPECT_FALSE(e->mean_of(D::kValence).has_value());
}

TEST(MergeLexicons, SurfaceFormsSharingAStem) {
  // gato and gatos both stem to "gat" in the reference stemmer.
  const auto m = merge_lexicons({table("A", {{"gato", D::kArousal, 2}, {"gatos", D::kArousal, 4}})});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_DOUBLE_EQ(*m.lookup("gat")->mean_of(D::kArousal), 3.0);
  EXPECT_FALSE(lookup(m, "perr").has_value());
}

TEST(MergeLexicons, DimensionsAveragedIndependently) {
  auto a = table("A", {{"mar", D::kValence, 4}});
  a.rows[0].mean[index(D::kArousal)] = 2;
  const auto b = table("B", {{"mar", D::kValence, 6}});
  const auto m = merge_lexicons({a, b});
  EXPECT_DOUBLE_EQ(*m.lookup("mar")->mean_of(D::kValence), 5.0);
  EXPECT_DOUBLE_EQ(*m.lookup("mar")->mean_of(D::kArousal), 2.0);
}

TEST(LexiconCsv, ParsesAndChecksRanges) {
  const auto t = parse_lexicon_csv("word,valence_mean,valence_sd,anger_mean\nAmor,7.5,1.2,\n\"sol\",6,,2\n");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].word, "amor");
  EXPECT_EQ(*t.rows[0].sd_of(D::kValence), 1.2);
  EXPECT_FALSE(t.rows[0].mean_of(D::kAnger).has_value());
  EXPECT_EQ(*t.rows[1].mean_of(D::kAnger), 2.0);
  EXPECT_THROW(parse_lexicon_csv("word,anger_mean\nira,6\n"), RangeError);
  EXPECT_THROW(parse_lexicon_csv("word,colour_mean\nrojo,3\n"), ParseError);
  EXPECT_THROW(parse_lexicon_csv("word,valence_mean\nsol\n"), ParseError);
}

TEST(Coverage, HalfOfTheStems) {
  const auto corpus = load_corpus((testing::data_dir() / "fixture" / "coverage_corpus.json").string());
  const auto lex = merge_lexicons({load_lexicon_csv((testing::data_dir() / "fixture" / "coverage_lexicon.csv").string())});
  EXPECT_DOUBLE_EQ(coverage(corpus, lex, default_stopwords(), CoverageWeighting::kTypes), 0.5);
  EXPECT_DOUBLE_EQ(coverage(corpus, MergedLexicon{}, default_stopwords(), CoverageWeighting::kTypes), 0.0);
}

TEST(Coverage, TokenWeighting) {
  ProcessedSonnet p{"x", {{"rosa", "ros", 0}, {"rosas", "ros", 1}, {"mar", "mar", 2}, {"sombra", "sombr", 3}}};
  MergedLexicon lex;
  LexiconEntry e;
  e.word = "ros";
  lex.insert(e);
  EXPECT_DOUBLE_EQ(coverage({p}, lex, CoverageWeighting::kTokens), 0.5);
  EXPECT_DOUBLE_EQ(coverage({p}, lex, CoverageWeighting::kTypes), 1.0 / 3.0);
}

TEST(Spearman, WorkedExamples) {
  const std::vector<double> x{1, 2, 3};
  EXPECT_DOUBLE_EQ(spearman(x, std::vector<double>{3, 2, 1}), -1.0);
  EXPECT_DOUBLE_EQ(spearman(x, std::vector<double>{1, 3, 2}), 0.5);
  EXPECT_EQ(spearman(x, std::vector<double>{4, 4, 4}), 0.0);
  EXPECT_EQ(spearman(std::vector<double>{1}, std::vector<double>{1}), 0.0);
}

TEST(Spearman, TiesUseAverageRanks) {
  // ranks x = (1.5, 1.5, 3), y = (1, 2, 3): Pearson on ranks = sqrt(3)/2
  EXPECT_NEAR(spearman(std::vector<double>{1, 1, 2}, std::vector<double>{1, 2, 3}), std::sqrt(3.0) / 2.0, 1e-12);
}

TEST(GamFeatures, HandBuiltFixture) {
  const auto f = extract_features(testing::gam_fixture_sonnet(), testing::gam_fixture_lexicon());
  const auto want = testing::gam_fixture_expected();
  for (std::size_t i = 0; i < kNumGamFeatures; ++i) {
    EXPECT_NEAR(f.values[i], want[i], 1e-9) << kGamFeatureNames[i];
  }
  EXPECT_EQ(f.matched_count, 4u);
  EXPECT_EQ(f.token_count, 6u);
  EXPECT_FALSE(f.no_matches);
  EXPECT_EQ(f.get("sigma_aro"), f.get("arousal_mean") * std::sqrt(6.0));
}

TEST(GamFeatures, TwoTokenArousal) {
  MergedLexicon lex;
  for (auto [w, a] : {std::pair{"a", 2.0}, std::pair{"b", 4.0}}) {
    LexiconEntry e;
    e.word = w;
    e.mean[index(D::kArousal)] = a;
    lex.insert(e);
  }
  const ProcessedSonnet p{"t", {{"a", "a", 0}, {"b", "b", 1}}};
  const auto f = extract_features(p, lex);
  EXPECT_DOUBLE_EQ(f.get("arousal_mean"), 3.0);
  EXPECT_DOUBLE_EQ(f.get("max_arousal"), 4.0);
  EXPECT_DOUBLE_EQ(f.get("min_arousal"), 2.0);
  EXPECT_DOUBLE_EQ(f.get("arousal_span"), 2.0);
  EXPECT_NEAR(f.get("sigma_aro"), 4.2426406871, 1e-9);
  EXPECT_DOUBLE_EQ(f.get("CorAro"), 1.0);
  EXPECT_DOUBLE_EQ(f.get("AbsCorAro"), 1.0);
}

TEST(GamFeatures, SingleMatchIsDegenerate) {
  const ProcessedSonnet p{"t", {{"sol", "sol", 0}, {"x", "x", 1}}};
  const auto f = extract_features(p, testing::gam_fixture_lexicon());
  EXPECT_EQ(f.get("CorAro"), 0.0);
  EXPECT_EQ(f.get("CorVal"), 0.0);
  EXPECT_EQ(f.get("arousal_span"), 0.0);
  EXPECT_TRUE(f.cor_aro_degenerate);
  EXPECT_TRUE(f.cor_val_degenerate);
}

TEST(GamFeatures, NoMatchesGiveZeros) {
  const ProcessedSonnet p{"t", {{"x", "x", 0}, {"y", "y", 1}}};
  const auto f = extract_features(p, testing::gam_fixture_lexicon());
  EXPECT_TRUE(f.no_matches);
  for (double v : f.values) EXPECT_EQ(v, 0.0);
}

TEST(GamFeatures, SigmaIdentityOnCorpus) {
  const auto corpus = load_corpus((testing::data_dir() / "synthetic" / "corpus.json").string());
  const auto lex = merge_lexicons({load_lexicon_csv((testing::data_dir() / "synthetic" / "lexicon_affect.csv").string()),
                                   load_lexicon_csv((testing::data_dir() / "synthetic" / "lexicon_semantic.csv").string())});
  for (const auto& p : preprocess_all(corpus, default_stopwords())) {
    const auto f = extract_features(p, lex);
    const double n = static_cast<double>(f.token_count);
    EXPECT_EQ(f.get("sigma_aro"), f.get("arousal_mean") * std::sqrt(n)) << p.id;
    EXPECT_EQ(f.get("sigma_val"), f.get("valence_mean") * std::sqrt(n)) << p.id;
  }
}

}  // namespace
}  // namespace sonnetssl
