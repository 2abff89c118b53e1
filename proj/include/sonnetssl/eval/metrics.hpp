#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "sonnetssl/core/error.hpp"
#include "sonnetssl/core/matrix.hpp"
#include "sonnetssl/learners/classifier.hpp"

namespace sonnetssl {

namespace metrics_detail {

struct Confusion {
  std::vector<int> classes;
  std::vector<std::vector<std::size_t>> m;  // m[true][pred]
  std::size_t n = 0;
};

inline Confusion confusion(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) throw LengthMismatchError("metric: label vectors differ in length");
  Confusion c;
  std::vector<int> all(y_true.begin(), y_true.end());
  all.insert(all.end(), y_pred.begin(), y_pred.end());
  c.classes = sorted_classes(all);
  c.m.assign(c.classes.size(), std::vector<std::size_t>(c.classes.size(), 0));
  auto idx = [&](int v) {
    return static_cast<std::size_t>(std::lower_bound(c.classes.begin(), c.classes.end(), v) -
                                    c.classes.begin());
  };
  for (std::size_t i = 0; i < y_true.size(); ++i) ++c.m[idx(y_true[i])][idx(y_pred[i])];
  c.n = y_true.size();
  return c;
}

}  // namespace metrics_detail

// Support-weighted mean of per-class F1 (a class never predicted and never
// correct scores 0).
inline double f1_weighted(std::span<const int> y_true, std::span<const int> y_pred) {
  const auto c = metrics_detail::confusion(y_true, y_pred);
  if (c.n == 0) throw LengthMismatchError("f1_weighted: empty input");
  double total = 0.0;
  for (std::size_t k = 0; k < c.classes.size(); ++k) {
    std::size_t support = 0, predicted = 0;
    for (std::size_t j = 0; j < c.classes.size(); ++j) {
      support += c.m[k][j];
      predicted += c.m[j][k];
    }
    const std::size_t tp = c.m[k][k];
    const std::size_t denom = support + predicted;  // 2tp + fp + fn
    const double f1 = denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
    total += f1 * static_cast<double>(support);
  }
  return total / static_cast<double>(c.n);
}

inline double cohens_kappa(std::span<const int> y_true, std::span<const int> y_pred) {
  const auto c = metrics_detail::confusion(y_true, y_pred);
  if (c.n == 0) return 0.0;
  const auto n = static_cast<double>(c.n);
  double agree = 0.0, expected = 0.0;
  for (std::size_t k = 0; k < c.classes.size(); ++k) {
    std::size_t row = 0, col = 0;
    for (std::size_t j = 0; j < c.classes.size(); ++j) {
      row += c.m[k][j];
      col += c.m[j][k];
    }
    agree += static_cast<double>(c.m[k][k]);
    expected += static_cast<double>(row) * static_cast<double>(col);
  }
  const double p_o = agree / n;
  const double p_e = expected / (n * n);
  if (p_e == 1.0) return 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

// Mann-Whitney form of the ROC AUC: P(score+ > score-) + 0.5 P(tie), via
// tie-averaged ranks.
inline double auc_binary(std::span<const int> y_true, std::span<const double> scores, int positive = 1) {
  if (y_true.size() != scores.size()) throw LengthMismatchError("auc_binary: length mismatch");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double rank_sum_pos = 0.0;
  std::size_t n_pos = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) {
      if (y_true[order[t]] == positive) {
        rank_sum_pos += r;
        ++n_pos;
      }
    }
    i = j + 1;
  }
  const std::size_t n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw SingleClassError("auc_binary: need both classes");
  const auto np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

// Macro one-vs-rest AUC over the classes present in y_true. Column j of
// proba scores classes[j]; a present class without a column scores 0.
inline double auc_multiclass(std::span<const int> y_true, const Matrix& proba,
                             std::span<const int> classes) {
  if (y_true.size() != proba.rows()) throw LengthMismatchError("auc_multiclass: length mismatch");
  if (classes.size() != proba.cols()) throw ShapeError("auc_multiclass: classes/columns mismatch");
  const auto present = sorted_classes(y_true);
  if (present.size() < 2) throw SingleClassError("auc_multiclass: need at least two classes in y_true");
  double total = 0.0;
  std::vector<double> scores(y_true.size());
  for (int cls : present) {
    const auto it = std::find(classes.begin(), classes.end(), cls);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
      scores[i] = it == classes.end() ? 0.0 : proba(i, static_cast<std::size_t>(it - classes.begin()));
    }
    total += auc_binary(y_true, scores, cls);
  }
  return total / static_cast<double>(present.size());
}

}  // namespace sonnetssl
