#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sonnetssl/core/random.hpp"
#include "sonnetssl/learners/classifier.hpp"
#include "sonnetssl/ssl/label_spreading.hpp"
#include "sonnetssl/ssl/smote.hpp"

namespace sonnetssl {

struct PretrainParams {
  SpreadParams spread;
  bool use_smote = false;
  int smote_k = 5;
  // Train the supervised model on every row (default) or only on rows the
  // spreading actually reached.
  bool reached_rows_only = false;
};

struct PretrainResult {
  std::unique_ptr<Classifier> model;
  SpreadResult spread;
  std::map<int, std::size_t> train_class_counts;  // what the base model was fitted on
  std::vector<std::string> warnings;
};

// Label spreading as a pre-training step: spread labels over all rows, then
// fit the supervised base model on the spread hard labels, optionally after
// SMOTE balancing.
inline PretrainResult ls_pretrain_pipeline(const SslProblem& p, const Classifier& prototype,
                                           const PretrainParams& params, std::uint64_t seed) {
  PretrainResult res;
  res.spread = label_spreading(p, params.spread);

  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < p.X.rows(); ++i) {
    if (!params.reached_rows_only || res.spread.reached[i]) rows.push_back(i);
  }
  Matrix X = p.X.select_rows(rows);
  std::vector<int> y;
  y.reserve(rows.size());
  for (std::size_t i : rows) y.push_back(res.spread.hard_labels[i]);

  if (sorted_classes(y).size() < 2) {
    throw DegenerateDataError("ls_pretrain_pipeline: spreading produced a single class");
  }
  if (params.use_smote) {
    Rng rng(seed);
    auto balanced = smote_balance(X, y, params.smote_k, rng);
    X = std::move(balanced.X);
    y = std::move(balanced.y);
    res.warnings = std::move(balanced.warnings);
  }
  res.train_class_counts = class_counts(y);
  res.model = prototype.clone_unfitted();
  res.model->fit(X, y);
  return res;
}

}  // namespace sonnetssl
