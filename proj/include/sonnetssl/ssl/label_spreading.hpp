#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "sonnetssl/core/error.hpp"
#include "sonnetssl/core/matrix.hpp"
#include "sonnetssl/learners/classifier.hpp"
#include "sonnetssl/ssl/problem.hpp"

namespace sonnetssl {

struct SpreadKernel {
  enum class Type { kKnn, kRbf };
  Type type = Type::kRbf;
  int k = 7;
  double gamma = 20.0;

  static SpreadKernel knn(int k) { return {Type::kKnn, k, 0.0}; }
  static SpreadKernel rbf(double gamma) { return {Type::kRbf, 0, gamma}; }
};

struct SpreadParams {
  SpreadKernel kernel = SpreadKernel::rbf(20.0);
  double alpha = 0.2;
  int max_iter = 30;
  double tol = 1e-3;
};

struct SpreadResult {
  std::vector<int> classes;  // column labels of F
  Matrix F;                  // row-stochastic label distributions
  std::vector<int> hard_labels;
  std::vector<bool> reached;  // false: no labeled row connects to this one
  int n_iter = 0;
  bool converged = false;
};

// Symmetric affinity graph. Dense for RBF, adjacency lists for KNN.
class Affinity {
 public:
  static Affinity build(const Matrix& X, const SpreadKernel& kernel) {
    Affinity a;
    const std::size_t n = X.rows();
    a.n_ = n;
    if (kernel.type == SpreadKernel::Type::kRbf) {
      a.dense_ = Matrix(n, n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double w = std::exp(-kernel.gamma * squared_distance(X.row(i), X.row(j)));
          a.dense_(i, j) = w;
          a.dense_(j, i) = w;
        }
      }
      return a;
    }
    if (kernel.k < 1 || static_cast<std::size_t>(kernel.k) >= n) {
      throw KernelError("label_spreading: knn needs 1 <= k < n (k=" + std::to_string(kernel.k) +
                        ", n=" + std::to_string(n) + ")");
    }
    a.adj_.assign(n, {});
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t i = 0; i < n; ++i) {
      d.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) d.emplace_back(squared_distance(X.row(i), X.row(j)), j);
      }
      std::partial_sort(d.begin(), d.begin() + kernel.k, d.end());
      for (int t = 0; t < kernel.k; ++t) {
        const std::size_t j = d[static_cast<std::size_t>(t)].second;
        a.adj_[i].push_back(j);
        a.adj_[j].push_back(i);  // max(W, W^T) with unit weights
      }
    }
    for (auto& row : a.adj_) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return a;
  }

  std::size_t size() const { return n_; }
  bool is_dense() const { return !dense_.empty() || adj_.empty(); }

  double weight(std::size_t i, std::size_t j) const {
    if (is_dense()) return n_ == 0 ? 0.0 : dense_(i, j);
    return std::binary_search(adj_[i].begin(), adj_[i].end(), j) ? 1.0 : 0.0;
  }

  std::vector<double> degrees() const {
    std::vector<double> d(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (is_dense()) {
        for (std::size_t j = 0; j < n_; ++j) d[i] += dense_(i, j);
      } else {
        d[i] = static_cast<double>(adj_[i].size());
      }
    }
    return d;
  }

  // out = S * F with S = D^-1/2 W D^-1/2 (given inv_sqrt_d).
  void apply_normalized(const Matrix& F, const std::vector<double>& inv_sqrt_d, Matrix& out) const {
    const std::size_t c = F.cols();
    out = Matrix(n_, c, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      auto o = out.row(i);
      auto add = [&](std::size_t j, double w) {
        const double s = w * inv_sqrt_d[i] * inv_sqrt_d[j];
        const auto fj = F.row(j);
        for (std::size_t k = 0; k < c; ++k) o[k] += s * fj[k];
      };
      if (is_dense()) {
        for (std::size_t j = 0; j < n_; ++j) {
          if (dense_(i, j) != 0.0) add(j, dense_(i, j));
        }
      } else {
        for (std::size_t j : adj_[i]) add(j, 1.0);
      }
    }
  }

 private:
  std::size_t n_ = 0;
  Matrix dense_;
  std::vector<std::vector<std::size_t>> adj_;
};

inline std::vector<double> inverse_sqrt_degrees(const Affinity& w) {
  auto d = w.degrees();
  for (auto& v : d) v = v > 0.0 ? 1.0 / std::sqrt(v) : 0.0;
  return d;
}

// Label spreading with soft clamping: F <- alpha*S*F + (1-alpha)*Y starting
// from F = Y, stopping when the largest entry change drops below tol.
inline SpreadResult label_spreading(const SslProblem& p, const SpreadParams& params) {
  p.validate();
  if (!(params.alpha > 0.0 && params.alpha < 1.0)) {
    throw DomainError("label_spreading: alpha must lie in (0, 1)");
  }
  const std::size_t n = p.X.rows();
  SpreadResult res;
  res.classes = p.classes();
  const std::size_t c = res.classes.size();

  Matrix Y(n, c, 0.0);
  std::vector<std::size_t> counts(c, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.y[i] == kUnlabeled) continue;
    const auto k = static_cast<std::size_t>(
        std::lower_bound(res.classes.begin(), res.classes.end(), p.y[i]) - res.classes.begin());
    Y(i, k) = 1.0;
    ++counts[k];
  }
  const std::size_t majority = static_cast<std::size_t>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());

  const Affinity w = Affinity::build(p.X, params.kernel);
  const auto inv_sqrt_d = inverse_sqrt_degrees(w);

  Matrix F = Y, SF;
  for (res.n_iter = 0; res.n_iter < params.max_iter;) {
    w.apply_normalized(F, inv_sqrt_d, SF);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < c; ++k) {
        const double next = params.alpha * SF(i, k) + (1.0 - params.alpha) * Y(i, k);
        change = std::max(change, std::abs(next - F(i, k)));
        SF(i, k) = next;
      }
    }
    std::swap(F, SF);
    ++res.n_iter;
    if (change < params.tol) {
      res.converged = true;
      break;
    }
  }

  res.reached.assign(n, true);
  res.hard_labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = F.row(i);
    const double s = std::accumulate(row.begin(), row.end(), 0.0);
    if (s > 0.0) {
      for (auto& v : row) v /= s;
    } else {
      std::fill(row.begin(), row.end(), 0.0);
      row[majority] = 1.0;
      res.reached[i] = false;
    }
    res.hard_labels[i] = res.classes[argmax(row)];
  }
  res.F = std::move(F);
  return res;
}

}  // namespace sonnetssl
