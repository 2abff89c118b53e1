#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sonnetssl/core/random.hpp"
#include "sonnetssl/eval/metrics.hpp"
#include "sonnetssl/eval/stats.hpp"

namespace sonnetssl {
namespace {

using V = std::vector<int>;
using S = std::vector<double>;

TEST(F1Weighted, WorkedExamples) {
  EXPECT_EQ(f1_weighted(V{0, 1, 2, 1}, V{0, 1, 2, 1}), 1.0);
  // per-class F1 (0.8, 2/3) weighted by supports (3, 1)
  EXPECT_NEAR(f1_weighted(V{0, 0, 0, 1}, V{0, 0, 1, 1}), 0.7666666666666667, 1e-12);
  EXPECT_NEAR(f1_weighted(V{0, 0, 1, 1}, V{0, 0, 0, 0}), 1.0 / 3.0, 1e-12);
}

TEST(F1Weighted, Errors) {
  EXPECT_THROW(f1_weighted(V{0, 1}, V{0}), LengthMismatchError);
  EXPECT_THROW(f1_weighted(V{}, V{}), LengthMismatchError);
}

TEST(Kappa, WorkedExamples) {
  EXPECT_EQ(cohens_kappa(V{0, 1, 1, 2}, V{0, 1, 1, 2}), 1.0);
  // confusion [[6,2],[1,3]]: p_o = 0.75, p_e = 76/144
  V t, p;
  auto add = [&](int a, int b, int n) {
    for (int i = 0; i < n; ++i) {
      t.push_back(a);
      p.push_back(b);
    }
  };
  add(0, 0, 6);
  add(0, 1, 2);
  add(1, 0, 1);
  add(1, 1, 3);
  EXPECT_NEAR(cohens_kappa(t, p), (0.75 - 76.0 / 144.0) / (1.0 - 76.0 / 144.0), 1e-12);
  EXPECT_NEAR(cohens_kappa(t, p), 0.4706, 5e-5);
  EXPECT_EQ(cohens_kappa(V{1, 1, 1}, V{1, 1, 1}), 0.0);  // p_e == 1
}

TEST(Kappa, IndependentPredictionsAverageZero) {
  const V truth{0, 0, 1, 1};
  V pred{0, 0, 1, 1};
  double sum = 0.0;
  int count = 0;
  std::sort(pred.begin(), pred.end());
  std::vector<int> idx{0, 1, 2, 3};
  do {
    V perm;
    for (int i : idx) perm.push_back(pred[static_cast<std::size_t>(i)]);
    sum += cohens_kappa(truth, perm);
    ++count;
  } while (std::next_permutation(idx.begin(), idx.end()));
  EXPECT_EQ(count, 24);
  EXPECT_NEAR(sum / count, 0.0, 1e-12);
}

TEST(AucBinary, WorkedExamples) {
  EXPECT_DOUBLE_EQ(auc_binary(V{0, 0, 1, 1}, S{0.1, 0.4, 0.35, 0.8}), 0.75);
  EXPECT_EQ(auc_binary(V{0, 1, 0, 1}, S{0.3, 0.3, 0.3, 0.3}), 0.5);
  EXPECT_EQ(auc_binary(V{0, 1, 0, 1}, S{0.1, 0.9, 0.2, 0.8}), 1.0);
  EXPECT_THROW(auc_binary(V{1, 1}, S{0.1, 0.2}), SingleClassError);
}

TEST(AucBinary, MonotoneTransformInvariant) {
  Rng rng(1);
  V y;
  S s, t;
  for (int i = 0; i < 40; ++i) {
    y.push_back(i % 3 == 0);
    s.push_back(std::floor(uniform01(rng) * 8.0) / 8.0);
    t.push_back(std::exp(3.0 * s.back()) - 7.0);
  }
  EXPECT_EQ(auc_binary(y, s), auc_binary(y, t));
}

TEST(AucMulticlass, WorkedExamples) {
  const V y{0, 1, 2, 0, 1, 2};
  Matrix onehot(6, 3), uniform(6, 3, 1.0 / 3.0);
  for (std::size_t i = 0; i < 6; ++i) onehot(i, static_cast<std::size_t>(y[i])) = 1.0;
  const V cls{0, 1, 2};
  EXPECT_EQ(auc_multiclass(y, onehot, cls), 1.0);
  EXPECT_EQ(auc_multiclass(y, uniform, cls), 0.5);

  const Matrix p = Matrix::from_rows(
      {{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}, {0.3, 0.3, 0.4}, {0.3, 0.4, 0.3}, {0.5, 0.2, 0.3}, {0.1, 0.3, 0.6}});
  EXPECT_NEAR(auc_multiclass(y, p, cls), oracle::auc_ovr_macro(y, p, cls), 1e-12);
}

TEST(AucMulticlass, BinaryAgreesWithAucBinary) {
  const V y{0, 1, 1, 0, 1};
  const S s{0.2, 0.7, 0.4, 0.4, 0.9};
  Matrix p(5, 2);
  for (std::size_t i = 0; i < 5; ++i) {
    p(i, 1) = s[i];
    p(i, 0) = 1.0 - s[i];
  }
  EXPECT_NEAR(auc_multiclass(y, p, V{0, 1}), auc_binary(y, s), 1e-12);
}

TEST(AucMulticlass, AbsentClassesAreDropped) {
  // class 3 has a column but no rows; class 2 is present without a column
  const V y{1, 2, 1, 2};
  const Matrix p = Matrix::from_rows({{0.9, 0.1}, {0.2, 0.8}, {0.7, 0.3}, {0.4, 0.6}});
  const double want = (oracle::auc_pairs(y, S{0.9, 0.2, 0.7, 0.4}, 1) + 0.5) / 2.0;
  EXPECT_NEAR(auc_multiclass(y, p, V{1, 3}), want, 1e-12);
  EXPECT_THROW(auc_multiclass(V{1, 1}, Matrix(2, 2), V{0, 1}), SingleClassError);
  EXPECT_THROW(auc_multiclass(y, p, V{1}), ShapeError);
}

TEST(Metrics, RandomInstancesMatchOracles) {
  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + uniform_index(rng, 25);
    const int k = 2 + static_cast<int>(uniform_index(rng, 3));
    V y, p;
    for (std::size_t i = 0; i < n; ++i) {
      y.push_back(static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(k))));
      p.push_back(static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(k))));
    }
    EXPECT_NEAR(f1_weighted(y, p), oracle::f1_weighted(y, p), 1e-12);
    EXPECT_NEAR(cohens_kappa(y, p), oracle::cohens_kappa(y, p), 1e-12);
  }
}

// ---------------------------------------------------------------------------

TEST(Wilcoxon, HandRankedExample) {
  // diffs 1, 2, 3, -1: ranks 1.5, 3, 4, 1.5; W- = 1.5
  const S a{1, 2, 3, -1}, b{0, 0, 0, 0};
  const auto r = wilcoxon_signed_rank(a, b, 4);
  EXPECT_EQ(r.statistic, 1.5);
  EXPECT_EQ(r.w_plus, 8.5);
  EXPECT_EQ(r.w_minus, 1.5);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.n, 4u);
  EXPECT_NEAR(r.p_value, oracle::wilcoxon_enumerate(a, b).p_value, 1e-15);
  EXPECT_THROW(wilcoxon_signed_rank(a, b), TooFewPairsError);
}

TEST(Wilcoxon, AllZeroDifferences) {
  const S a{1, 2, 3, 4, 5, 6};
  EXPECT_THROW(wilcoxon_signed_rank(a, a), TooFewPairsError);
}

TEST(Wilcoxon, LargeShiftIsSignificant) {
  Rng rng(3);
  S a, b;
  for (int i = 0; i < 20; ++i) {
    b.push_back(uniform01(rng));
    a.push_back(b.back() + 5.0 + 0.1 * uniform01(rng));
  }
  const auto r = wilcoxon_signed_rank(a, b);
  EXPECT_FALSE(r.exact);
  EXPECT_LT(r.p_value, 0.01);
}

TEST(Wilcoxon, ExactMatchesEnumeration) {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 5 + uniform_index(rng, 8);
    S a, b;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(std::round(uniform01(rng) * 6.0));
      b.push_back(std::round(uniform01(rng) * 6.0));
    }
    const auto want = oracle::wilcoxon_enumerate(a, b);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < n; ++i) nonzero += a[i] != b[i];
    if (nonzero == 0) continue;
    const auto got = wilcoxon_signed_rank(a, b, 1);
    EXPECT_EQ(got.statistic, want.statistic);
    EXPECT_NEAR(got.p_value, want.p_value, 1e-12);
  }
}

TEST(Wilcoxon, NormalApproximationIsSymmetric) {
  S a, b;
  for (int i = 0; i < 15; ++i) {
    a.push_back(i % 2 == 0 ? i : -i);
    b.push_back(0.0);
  }
  a[0] = 0.5;
  const auto r1 = wilcoxon_signed_rank(a, b), r2 = wilcoxon_signed_rank(b, a);
  EXPECT_EQ(r1.p_value, r2.p_value);
  EXPECT_EQ(r1.statistic, r2.statistic);
}

TEST(MinSampleSize, Examples) {
  EXPECT_EQ(min_sample_size(0.1, 0.8, 0.8), 20);
  EXPECT_EQ(min_sample_size(0.05, 0.8, 0.8), 25);
  EXPECT_EQ(min_sample_size(0.05, 0.8, 100.0), 1);
  EXPECT_THROW(min_sample_size(0.0, 0.8, 0.8), DomainError);
  EXPECT_THROW(min_sample_size(0.05, 1.0, 0.8), DomainError);
  EXPECT_THROW(min_sample_size(0.05, 0.8, -1.0), DomainError);
}

}  // namespace
}  // namespace sonnetssl
