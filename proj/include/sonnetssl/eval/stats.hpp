#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "sonnetssl/core/error.hpp"

namespace sonnetssl {

struct WilcoxonResult {
  double statistic = 0.0;  // min(W+, W-)
  double w_plus = 0.0;
  double w_minus = 0.0;
  double p_value = 1.0;    // two-sided
  std::size_t n = 0;       // pairs left after dropping zero differences
  bool exact = false;
};

inline constexpr std::size_t kWilcoxonExactMaxN = 12;

// Exact two-sided p-value of min(W+, W-) under the null that every sign is
// equally likely. Ranks may be tie-averaged, so they are doubled to integers
// and the null distribution of 2*W+ is built by dynamic programming.
inline double wilcoxon_exact_p(std::span<const double> ranks, double statistic) {
  std::vector<long> doubled;
  long total = 0;
  for (double r : ranks) {
    doubled.push_back(std::lround(2.0 * r));
    total += doubled.back();
  }
  std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
  ways[0] = 1.0;
  long reach = 0;
  for (long r : doubled) {
    for (long v = reach; v >= 0; --v) ways[static_cast<std::size_t>(v + r)] += ways[static_cast<std::size_t>(v)];
    reach += r;
  }
  const long t2 = std::lround(2.0 * statistic);
  double hits = 0.0;
  for (long v = 0; v <= total; ++v) {
    if (std::min(v, total - v) <= t2) hits += ways[static_cast<std::size_t>(v)];
  }
  return std::min(1.0, hits / std::ldexp(1.0, static_cast<int>(ranks.size())));
}

// Paired two-sided Wilcoxon signed-rank test. Zero differences are dropped,
// tied |differences| share their average rank. Exact null distribution up to
// 12 pairs, normal approximation with tie correction beyond.
inline WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                           std::size_t min_pairs = 5) {
  if (a.size() != b.size()) throw LengthMismatchError("wilcoxon: samples differ in length");
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) d.push_back(a[i] - b[i]);
  }
  if (d.size() < std::max<std::size_t>(min_pairs, 1)) {
    throw TooFewPairsError("wilcoxon: " + std::to_string(d.size()) + " non-zero differences, need " +
                           std::to_string(std::max<std::size_t>(min_pairs, 1)));
  }
  std::vector<std::size_t> order(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return std::abs(d[x]) < std::abs(d[y]); });
  std::vector<double> rank(d.size());
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) rank[order[t]] = r;
    const auto tsize = static_cast<double>(j - i + 1);
    tie_term += tsize * tsize * tsize - tsize;
    i = j + 1;
  }

  WilcoxonResult res;
  res.n = d.size();
  for (std::size_t k = 0; k < d.size(); ++k) (d[k] > 0 ? res.w_plus : res.w_minus) += rank[k];
  res.statistic = std::min(res.w_plus, res.w_minus);

  const auto n = static_cast<double>(res.n);
  if (res.n <= kWilcoxonExactMaxN) {
    res.exact = true;
    res.p_value = wilcoxon_exact_p(rank, res.statistic);
  } else {
    const double mean = n * (n + 1.0) / 4.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    const double z = var > 0.0 ? (res.statistic - mean) / std::sqrt(var) : 0.0;
    res.p_value = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
  }
  return res;
}

// Per-group sample size for a two-sample, two-sided comparison at effect
// size d: ceil(2 * ((z_{1-alpha/2} + z_{power}) / d)^2).
inline int min_sample_size(double alpha, double power, double cohens_d) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("min_sample_size: alpha must lie in (0, 1)");
  if (!(power > 0.0 && power < 1.0)) throw DomainError("min_sample_size: power must lie in (0, 1)");
  if (!(cohens_d > 0.0) || !std::isfinite(cohens_d)) throw DomainError("min_sample_size: d must be positive");
  const boost::math::normal standard;
  const double z_alpha = boost::math::quantile(standard, 1.0 - alpha / 2.0);
  const double z_power = boost::math::quantile(standard, power);
  const double ratio = (z_alpha + z_power) / cohens_d;
  return static_cast<int>(std::ceil(2.0 * ratio * ratio));
}

}  // namespace sonnetssl
