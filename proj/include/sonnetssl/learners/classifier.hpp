#pragma once

#include <algorithm>
#include <memory>
#include <span>
#include <vector>

#include "sonnetssl/core/matrix.hpp"

namespace sonnetssl {

// Probabilistic classifier over integer labels. predict_proba columns follow
// classes(), which is sorted ascending.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual void fit(const Matrix& X, std::span<const int> y,
                   std::span<const double> sample_weight = {}) = 0;
  virtual Matrix predict_proba(const Matrix& X) const = 0;
  virtual const std::vector<int>& classes() const = 0;
  // Fresh, unfitted copy carrying the same hyperparameters.
  virtual std::unique_ptr<Classifier> clone_unfitted() const = 0;
};

// Index of the largest entry; ties go to the lowest index.
inline std::size_t argmax(std::span<const double> row) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < row.size(); ++j) {
    if (row[j] > row[best]) best = j;
  }
  return best;
}

inline std::vector<int> predict_labels(const Classifier& clf, const Matrix& X) {
  const Matrix p = clf.predict_proba(X);
  std::vector<int> out(p.rows());
  for (std::size_t i = 0; i < p.rows(); ++i) out[i] = clf.classes()[argmax(p.row(i))];
  return out;
}

inline std::vector<int> sorted_classes(std::span<const int> y) {
  std::vector<int> c(y.begin(), y.end());
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

}  // namespace sonnetssl
