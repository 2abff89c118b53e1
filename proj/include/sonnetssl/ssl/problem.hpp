#pragma once

#include <map>
#include <vector>

#include "sonnetssl/core/error.hpp"
#include "sonnetssl/core/matrix.hpp"
#include "sonnetssl/learners/classifier.hpp"

namespace sonnetssl {

inline constexpr int kUnlabeled = -1;

// Rows of X with y[i] == kUnlabeled are the unlabeled part of the problem.
struct SslProblem {
  Matrix X;
  std::vector<int> y;

  std::vector<std::size_t> labeled_ids() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] != kUnlabeled) out.push_back(i);
    }
    return out;
  }
  std::vector<std::size_t> unlabeled_ids() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == kUnlabeled) out.push_back(i);
    }
    return out;
  }
  std::vector<int> classes() const {
    std::vector<int> lab;
    for (int v : y) {
      if (v != kUnlabeled) lab.push_back(v);
    }
    return sorted_classes(lab);
  }

  void validate() const {
    if (X.rows() != y.size()) throw ShapeError("SslProblem: X rows and y length differ");
    if (classes().size() < 2) {
      throw DegenerateProblemError("SslProblem: labeled rows must hold at least two classes");
    }
  }
};

inline std::map<int, std::size_t> class_counts(std::span<const int> y) {
  std::map<int, std::size_t> counts;
  for (int v : y) {
    if (v != kUnlabeled) ++counts[v];
  }
  return counts;
}

}  // namespace sonnetssl
