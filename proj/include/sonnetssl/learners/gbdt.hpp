#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sonnetssl/core/error.hpp"
#include "sonnetssl/core/matrix.hpp"
#include "sonnetssl/learners/classifier.hpp"

namespace sonnetssl {

// Defaults follow LightGBM's (num_iterations, learning_rate, num_leaves,
// min_data_in_leaf, max_bin, min_sum_hessian_in_leaf, lambda_l2).
struct GbdtParams {
  int n_trees = 100;
  double learning_rate = 0.1;
  int max_leaves = 31;
  int min_samples_leaf = 20;
  int max_bins = 255;
  double min_sum_hessian = 1e-3;
  double lambda_l2 = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const GbdtParams&, const GbdtParams&) = default;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;

  double predict(std::span<const double> x) const {
    int n = 0;
    while (nodes[n].feature >= 0) {
      const auto& node = nodes[n];
      n = x[node.feature] <= node.threshold ? node.left : node.right;
    }
    return nodes[n].value;
  }
  std::size_t leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& t) { return t.feature < 0; }));
  }

  friend bool operator==(const RegressionTree&, const RegressionTree&) = default;
};

// Binary problems use one ensemble on the log-odds of classes[1]; K > 2
// classes use K ensembles combined by softmax. trees is round-major:
// trees[round * ensembles() + k].
struct GbdtModel {
  GbdtParams params;
  std::vector<int> classes;
  std::vector<double> base_score;
  std::vector<RegressionTree> trees;
  std::size_t n_features = 0;
  std::vector<double> train_loss;  // mean training loss after each round; not serialized

  std::size_t ensembles() const { return classes.size() == 2 ? 1 : classes.size(); }
  std::size_t rounds() const { return ensembles() == 0 ? 0 : trees.size() / ensembles(); }
};

namespace gbdt_detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline void softmax_inplace(std::span<double> z) {
  const double m = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (auto& v : z) {
    v = std::exp(v - m);
    s += v;
  }
  for (auto& v : z) v /= s;
}

// Per-feature cut points. A value x falls in bin b = #cuts strictly below x,
// so "bin <= b" is exactly "x <= cuts[b]".
struct Binner {
  std::vector<std::vector<double>> cuts;

  static double midpoint(double a, double b) {
    const double m = a + (b - a) / 2.0;
    return (m >= b) ? a : m;
  }

  static Binner fit(const Matrix& X, int max_bins) {
    Binner bn;
    bn.cuts.resize(X.cols());
    std::vector<double> col(X.rows());
    for (std::size_t f = 0; f < X.cols(); ++f) {
      for (std::size_t i = 0; i < X.rows(); ++i) col[i] = X(i, f);
      std::sort(col.begin(), col.end());
      std::vector<double> distinct;
      std::vector<std::size_t> counts;
      for (double v : col) {
        if (distinct.empty() || v != distinct.back()) {
          distinct.push_back(v);
          counts.push_back(0);
        }
        ++counts.back();
      }
      auto& cuts = bn.cuts[f];
      if (distinct.size() <= static_cast<std::size_t>(max_bins)) {
        for (std::size_t k = 0; k + 1 < distinct.size(); ++k) {
          cuts.push_back(midpoint(distinct[k], distinct[k + 1]));
        }
        continue;
      }
      // Equal-frequency packing of distinct values into max_bins bins.
      const double per_bin = static_cast<double>(X.rows()) / max_bins;
      double filled = 0.0;
      for (std::size_t k = 0; k + 1 < distinct.size(); ++k) {
        filled += static_cast<double>(counts[k]);
        if (filled >= per_bin * static_cast<double>(cuts.size() + 1) &&
            cuts.size() + 1 < static_cast<std::size_t>(max_bins)) {
          cuts.push_back(midpoint(distinct[k], distinct[k + 1]));
        }
      }
    }
    return bn;
  }

  std::uint16_t bin(std::size_t f, double x) const {
    const auto& c = cuts[f];
    return static_cast<std::uint16_t>(std::lower_bound(c.begin(), c.end(), x) - c.begin());
  }
  std::size_t n_bins(std::size_t f) const { return cuts[f].size() + 1; }
};

struct Split {
  double gain = 0.0;
  int feature = -1;
  std::size_t bin = 0;
  bool valid() const { return feature >= 0; }
};

struct Leaf {
  std::vector<std::size_t> rows;
  double g = 0.0, h = 0.0;
  int node = 0;
  Split best;
};

class TreeBuilder {
 public:
  TreeBuilder(const GbdtParams& p, const Binner& binner, const std::vector<std::uint16_t>& binned,
              std::size_t n_features)
      : p_(p), binner_(binner), binned_(binned), n_features_(n_features) {}

  RegressionTree build(std::span<const double> grad, std::span<const double> hess) {
    grad_ = grad;
    hess_ = hess;
    RegressionTree tree;
    tree.nodes.emplace_back();
    std::vector<Leaf> leaves(1);
    leaves[0].rows.resize(grad.size());
    std::iota(leaves[0].rows.begin(), leaves[0].rows.end(), std::size_t{0});
    finish_leaf(leaves[0]);

    while (leaves.size() < static_cast<std::size_t>(p_.max_leaves)) {
      std::size_t pick = leaves.size();
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (!leaves[i].best.valid()) continue;
        if (pick == leaves.size() || leaves[i].best.gain > leaves[pick].best.gain) pick = i;
      }
      if (pick == leaves.size()) break;

      Leaf parent = std::move(leaves[pick]);
      const auto f = static_cast<std::size_t>(parent.best.feature);
      Leaf left, right;
      for (std::size_t r : parent.rows) {
        (binned_[r * n_features_ + f] <= parent.best.bin ? left.rows : right.rows).push_back(r);
      }
      left.node = static_cast<int>(tree.nodes.size());
      right.node = left.node + 1;
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      auto& pn = tree.nodes[static_cast<std::size_t>(parent.node)];
      pn.feature = parent.best.feature;
      pn.threshold = binner_.cuts[f][parent.best.bin];
      pn.left = left.node;
      pn.right = right.node;
      finish_leaf(left);
      finish_leaf(right);
      // Children replace the parent in place, so leaf order (and therefore
      // tie-breaking among equal gains) is deterministic.
      leaves[pick] = std::move(left);
      leaves.insert(leaves.begin() + static_cast<std::ptrdiff_t>(pick) + 1, std::move(right));
    }
    for (const auto& lf : leaves) {
      tree.nodes[static_cast<std::size_t>(lf.node)].value =
          lf.h > 0.0 ? -p_.learning_rate * lf.g / (lf.h + p_.lambda_l2) : 0.0;
    }
    return tree;
  }

 private:
  void finish_leaf(Leaf& leaf) {
    leaf.g = leaf.h = 0.0;
    for (std::size_t r : leaf.rows) {
      leaf.g += grad_[r];
      leaf.h += hess_[r];
    }
    leaf.best = find_split(leaf);
  }

  Split find_split(const Leaf& leaf) const {
    Split best;
    const auto min_leaf = static_cast<std::size_t>(std::max(1, p_.min_samples_leaf));
    if (leaf.rows.size() < 2 * min_leaf) return best;
    const double parent_score = leaf.g * leaf.g / (leaf.h + p_.lambda_l2);
    std::vector<double> hg, hh;
    std::vector<std::size_t> hc;
    for (std::size_t f = 0; f < n_features_; ++f) {
      const std::size_t nb = binner_.n_bins(f);
      if (nb < 2) continue;
      hg.assign(nb, 0.0);
      hh.assign(nb, 0.0);
      hc.assign(nb, 0);
      for (std::size_t r : leaf.rows) {
        const auto b = binned_[r * n_features_ + f];
        hg[b] += grad_[r];
        hh[b] += hess_[r];
        ++hc[b];
      }
      double gl = 0.0, hl = 0.0;
      std::size_t cl = 0;
      for (std::size_t b = 0; b + 1 < nb; ++b) {
        gl += hg[b];
        hl += hh[b];
        cl += hc[b];
        const std::size_t cr = leaf.rows.size() - cl;
        if (cl < min_leaf) continue;
        if (cr < min_leaf) break;
        const double gr = leaf.g - gl, hr = leaf.h - hl;
        if (hl < p_.min_sum_hessian || hr < p_.min_sum_hessian) continue;
        const double gain =
            gl * gl / (hl + p_.lambda_l2) + gr * gr / (hr + p_.lambda_l2) - parent_score;
        // Strict comparison keeps the lowest (feature, threshold) on ties.
        if (gain > best.gain) best = {gain, static_cast<int>(f), b};
      }
    }
    return best;
  }

  const GbdtParams& p_;
  const Binner& binner_;
  const std::vector<std::uint16_t>& binned_;
  std::size_t n_features_;
  std::span<const double> grad_, hess_;
};

}  // namespace gbdt_detail

inline Matrix gbdt_raw_scores(const GbdtModel& m, const Matrix& X) {
  const std::size_t k = m.ensembles();
  Matrix raw(X.rows(), k);
  for (std::size_t i = 0; i < X.rows(); ++i) {
    auto r = raw.row(i);
    std::copy(m.base_score.begin(), m.base_score.end(), r.begin());
    const auto x = X.row(i);
    for (std::size_t t = 0; t < m.trees.size(); ++t) r[t % k] += m.trees[t].predict(x);
  }
  return raw;
}

inline Matrix gbdt_predict_proba(const GbdtModel& m, const Matrix& X) {
  if (X.cols() != m.n_features) {
    throw ShapeError("gbdt_predict_proba: expected " + std::to_string(m.n_features) +
                     " columns, got " + std::to_string(X.cols()));
  }
  const Matrix raw = gbdt_raw_scores(m, X);
  Matrix p(X.rows(), m.classes.size());
  for (std::size_t i = 0; i < X.rows(); ++i) {
    if (m.ensembles() == 1) {
      const double p1 = gbdt_detail::sigmoid(raw(i, 0));
      p(i, 0) = 1.0 - p1;
      p(i, 1) = p1;
    } else {
      auto r = p.row(i);
      std::copy(raw.row(i).begin(), raw.row(i).end(), r.begin());
      gbdt_detail::softmax_inplace(r);
    }
  }
  return p;
}

// Gradient boosting with Newton leaf values: logistic loss for two classes,
// softmax cross-entropy otherwise. Trees grow leaf-wise (best gain first) up
// to max_leaves over histogram bins. No sampling is involved, so the result
// is a pure function of the inputs.
inline GbdtModel gbdt_fit(const Matrix& X, std::span<const int> y, const GbdtParams& params,
                          std::span<const double> sample_weight = {}) {
  if (X.rows() != y.size()) throw ShapeError("gbdt_fit: X rows and y length differ");
  if (!sample_weight.empty() && sample_weight.size() != y.size()) {
    throw ShapeError("gbdt_fit: sample_weight length differs from y");
  }
  if (y.size() < 2) throw DegenerateDataError("gbdt_fit: need at least two rows");
  if (params.max_bins < 2 || params.max_bins > 65535) throw ShapeError("gbdt_fit: max_bins out of range");

  GbdtModel m;
  m.params = params;
  m.classes = sorted_classes(y);
  m.n_features = X.cols();
  if (m.classes.size() < 2) throw DegenerateDataError("gbdt_fit: training labels hold a single class");

  const std::size_t n = y.size();
  const std::size_t n_cls = m.classes.size();
  const std::size_t k = m.ensembles();
  std::vector<std::size_t> yi(n);
  for (std::size_t i = 0; i < n; ++i) {
    yi[i] = static_cast<std::size_t>(
        std::lower_bound(m.classes.begin(), m.classes.end(), y[i]) - m.classes.begin());
  }
  auto weight = [&](std::size_t i) { return sample_weight.empty() ? 1.0 : sample_weight[i]; };

  std::vector<double> prior(n_cls, 0.0);
  double wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    prior[yi[i]] += weight(i);
    wsum += weight(i);
  }
  for (auto& v : prior) v /= wsum;
  if (k == 1) {
    m.base_score = {std::log(prior[1] / prior[0])};
  } else {
    for (double pk : prior) m.base_score.push_back(std::log(std::max(pk, 1e-300)));
  }

  const auto binner = gbdt_detail::Binner::fit(X, params.max_bins);
  std::vector<std::uint16_t> binned(n * X.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < X.cols(); ++f) binned[i * X.cols() + f] = binner.bin(f, X(i, f));
  }

  Matrix raw(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(m.base_score.begin(), m.base_score.end(), raw.row(i).begin());
  }
  std::vector<double> grad(n), hess(n), prob(n * n_cls);
  auto refresh_probs = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      std::span<double> pr(prob.data() + i * n_cls, n_cls);
      if (k == 1) {
        pr[1] = gbdt_detail::sigmoid(raw(i, 0));
        pr[0] = 1.0 - pr[1];
      } else {
        std::copy(raw.row(i).begin(), raw.row(i).end(), pr.begin());
        gbdt_detail::softmax_inplace(pr);
      }
    }
  };
  auto mean_loss = [&] {
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      loss -= weight(i) * std::log(std::max(prob[i * n_cls + yi[i]], 1e-300));
    }
    return loss / wsum;
  };

  gbdt_detail::TreeBuilder builder(params, binner, binned, X.cols());
  refresh_probs();
  for (int round = 0; round < params.n_trees; ++round) {
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t cls = k == 1 ? 1 : c;
      for (std::size_t i = 0; i < n; ++i) {
        const double pc = prob[i * n_cls + cls];
        const double target = yi[i] == cls ? 1.0 : 0.0;
        grad[i] = weight(i) * (pc - target);
        hess[i] = weight(i) * std::max(pc * (1.0 - pc), 1e-16);
      }
      m.trees.push_back(builder.build(grad, hess));
    }
    // Apply the round's trees only after all classes were fitted on the same
    // probabilities.
    for (std::size_t c = 0; c < k; ++c) {
      const auto& tree = m.trees[m.trees.size() - k + c];
      for (std::size_t i = 0; i < n; ++i) raw(i, c) += tree.predict(X.row(i));
    }
    refresh_probs();
    m.train_loss.push_back(mean_loss());
  }
  return m;
}

// ---------------------------------------------------------------------------
// JSON tree dump.

inline nlohmann::json to_json(const GbdtModel& m) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : m.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& nd : t.nodes) {
      if (nd.feature < 0) {
        nodes.push_back({{"leaf", nd.value}});
      } else {
        nodes.push_back({{"feature", nd.feature},
                         {"threshold", nd.threshold},
                         {"left", nd.left},
                         {"right", nd.right}});
      }
    }
    trees.push_back(std::move(nodes));
  }
  const auto& p = m.params;
  return {{"type", "gbdt"},
          {"params",
           {{"n_trees", p.n_trees},
            {"learning_rate", p.learning_rate},
            {"max_leaves", p.max_leaves},
            {"min_samples_leaf", p.min_samples_leaf},
            {"max_bins", p.max_bins},
            {"min_sum_hessian", p.min_sum_hessian},
            {"lambda_l2", p.lambda_l2},
            {"seed", p.seed}}},
          {"classes", m.classes},
          {"base_score", m.base_score},
          {"n_features", m.n_features},
          {"trees", std::move(trees)}};
}

inline GbdtModel gbdt_from_json(const nlohmann::json& j) {
  try {
    GbdtModel m;
    const auto& p = j.at("params");
    m.params.n_trees = p.at("n_trees").get<int>();
    m.params.learning_rate = p.at("learning_rate").get<double>();
    m.params.max_leaves = p.at("max_leaves").get<int>();
    m.params.min_samples_leaf = p.at("min_samples_leaf").get<int>();
    m.params.max_bins = p.at("max_bins").get<int>();
    m.params.min_sum_hessian = p.at("min_sum_hessian").get<double>();
    m.params.lambda_l2 = p.at("lambda_l2").get<double>();
    m.params.seed = p.at("seed").get<std::uint64_t>();
    m.classes = j.at("classes").get<std::vector<int>>();
    m.base_score = j.at("base_score").get<std::vector<double>>();
    m.n_features = j.at("n_features").get<std::size_t>();
    for (const auto& jt : j.at("trees")) {
      RegressionTree t;
      for (const auto& jn : jt) {
        TreeNode nd;
        if (jn.contains("leaf")) {
          nd.value = jn.at("leaf").get<double>();
        } else {
          nd.feature = jn.at("feature").get<int>();
          nd.threshold = jn.at("threshold").get<double>();
          nd.left = jn.at("left").get<int>();
          nd.right = jn.at("right").get<int>();
        }
        t.nodes.push_back(nd);
      }
      m.trees.push_back(std::move(t));
    }
    if (m.classes.size() < 2 || m.base_score.size() != m.ensembles()) {
      throw SchemaError("gbdt model: inconsistent classes/base_score");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("gbdt model: ") + e.what());
  }
}

// Classifier adapter.
class GbdtClassifier : public Classifier {
 public:
  explicit GbdtClassifier(GbdtParams params = {}) : params_(params) {}
  explicit GbdtClassifier(GbdtModel model) : params_(model.params), model_(std::move(model)) {}

  void fit(const Matrix& X, std::span<const int> y, std::span<const double> w = {}) override {
    model_ = gbdt_fit(X, y, params_, w);
  }
  Matrix predict_proba(const Matrix& X) const override { return gbdt_predict_proba(model_, X); }
  const std::vector<int>& classes() const override { return model_.classes; }
  std::unique_ptr<Classifier> clone_unfitted() const override {
    return std::make_unique<GbdtClassifier>(params_);
  }

  const GbdtModel& model() const { return model_; }
  const GbdtParams& params() const { return params_; }

 private:
  GbdtParams params_;
  GbdtModel model_;
};

}  // namespace sonnetssl
