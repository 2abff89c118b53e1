#pragma once

#include <memory>
#include <vector>

#include "sonnetssl/core/error.hpp"
#include "sonnetssl/learners/classifier.hpp"
#include "sonnetssl/ssl/problem.hpp"

namespace sonnetssl {

struct SelfTrainParams {
  double threshold = 0.75;
  int max_iter = 10;
};

struct SelfTrainResult {
  std::unique_ptr<Classifier> model;
  std::vector<int> labels;         // original + pseudo labels; kUnlabeled where never assigned
  std::vector<int> labeled_iter;   // 0 for original labels, t >= 1 for rows added in iteration t, -1 never
  std::vector<std::size_t> labeled_sizes;  // labeled-set size before each fit
  int n_iter = 0;
};

// Wrapper-style self-training: fit on the labeled rows, pseudo-label the
// unlabeled rows predicted with probability >= threshold, repeat. Stops when
// nothing new qualifies, nothing is left unlabeled, or after max_iter
// rounds. Original labels are never touched.
inline SelfTrainResult self_train(const Classifier& prototype, const SslProblem& p,
                                  const SelfTrainParams& params = {}) {
  p.validate();
  if (!(params.threshold > 0.5 && params.threshold <= 1.0)) {
    throw DomainError("self_train: threshold must lie in (0.5, 1]");
  }
  SelfTrainResult res;
  res.labels = p.y;
  res.labeled_iter.assign(p.y.size(), -1);
  for (std::size_t i = 0; i < p.y.size(); ++i) {
    if (p.y[i] != kUnlabeled) res.labeled_iter[i] = 0;
  }

  auto fit_current = [&] {
    std::vector<std::size_t> rows;
    std::vector<int> ys;
    for (std::size_t i = 0; i < res.labels.size(); ++i) {
      if (res.labels[i] == kUnlabeled) continue;
      rows.push_back(i);
      ys.push_back(res.labels[i]);
    }
    res.labeled_sizes.push_back(rows.size());
    auto model = prototype.clone_unfitted();
    model->fit(p.X.select_rows(rows), ys);
    return model;
  };

  res.model = fit_current();
  while (res.n_iter < params.max_iter) {
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < res.labels.size(); ++i) {
      if (res.labels[i] == kUnlabeled) pending.push_back(i);
    }
    if (pending.empty()) break;
    const Matrix proba = res.model->predict_proba(p.X.select_rows(pending));
    ++res.n_iter;
    std::size_t added = 0;
    for (std::size_t r = 0; r < pending.size(); ++r) {
      const auto row = proba.row(r);
      const std::size_t best = argmax(row);
      if (row[best] < params.threshold) continue;
      res.labels[pending[r]] = res.model->classes()[best];
      res.labeled_iter[pending[r]] = res.n_iter;
      ++added;
    }
    if (added == 0) break;
    res.model = fit_current();
  }
  return res;
}

}  // namespace sonnetssl
