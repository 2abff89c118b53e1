#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sonnetssl/core/error.hpp"
#include "sonnetssl/core/matrix.hpp"
#include "sonnetssl/core/random.hpp"
#include "sonnetssl/ssl/problem.hpp"

namespace sonnetssl {

// x + u * (neighbor - x)
inline std::vector<double> smote_interpolate(std::span<const double> x, std::span<const double> neighbor,
                                             double u) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + u * (neighbor[i] - x[i]);
  return out;
}

// Indices of the min(k, n-1) nearest other rows of `minority` to row i,
// closest first, ties broken by lower index.
inline std::vector<std::size_t> nearest_minority(const Matrix& minority, std::size_t i, int k) {
  std::vector<std::pair<double, std::size_t>> d;
  for (std::size_t j = 0; j < minority.rows(); ++j) {
    if (j != i) d.emplace_back(squared_distance(minority.row(i), minority.row(j)), j);
  }
  const auto kk = std::min(static_cast<std::size_t>(k), d.size());
  std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(kk), d.end());
  std::vector<std::size_t> out(kk);
  for (std::size_t t = 0; t < kk; ++t) out[t] = d[t].second;
  return out;
}

// Synthetic minority oversampling: each new row interpolates a random
// minority row towards one of its k nearest minority neighbours.
inline Matrix smote(const Matrix& minority, int k, std::size_t n_synthetic, Rng& rng) {
  if (minority.rows() < 2) throw TooFewSamplesError("smote: need at least two minority rows");
  if (k < 1) throw DomainError("smote: k must be >= 1");
  std::vector<std::vector<std::size_t>> neighbors(minority.rows());
  Matrix out(0, minority.cols());
  for (std::size_t s = 0; s < n_synthetic; ++s) {
    const auto i = static_cast<std::size_t>(uniform_index(rng, minority.rows()));
    if (neighbors[i].empty()) neighbors[i] = nearest_minority(minority, i, k);
    const std::size_t j = neighbors[i][uniform_index(rng, neighbors[i].size())];
    const double u = uniform01(rng);
    out.append_row(smote_interpolate(minority.row(i), minority.row(j), u));
  }
  return out;
}

struct BalancedData {
  Matrix X;
  std::vector<int> y;
  std::map<int, std::size_t> added;  // synthetic rows per class
  std::vector<std::string> warnings;
};

// Oversamples every class up to the majority count. Classes with fewer than
// two rows are left alone and reported in warnings.
inline BalancedData smote_balance(const Matrix& X, std::span<const int> y, int k, Rng& rng) {
  BalancedData out{X, std::vector<int>(y.begin(), y.end()), {}, {}};
  const auto counts = class_counts(y);
  std::size_t majority = 0;
  for (const auto& [cls, n] : counts) majority = std::max(majority, n);
  for (const auto& [cls, n] : counts) {
    if (n >= majority) continue;
    if (n < 2) {
      out.warnings.push_back("smote: class " + std::to_string(cls) + " has " + std::to_string(n) +
                             " row(s); oversampling skipped");
      continue;
    }
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == cls) rows.push_back(i);
    }
    const Matrix synth = smote(X.select_rows(rows), k, majority - n, rng);
    for (std::size_t r = 0; r < synth.rows(); ++r) {
      out.X.append_row(synth.row(r));
      out.y.push_back(cls);
    }
    out.added[cls] = synth.rows();
  }
  return out;
}

}  // namespace sonnetssl
