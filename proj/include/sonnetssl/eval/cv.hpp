#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sonnetssl/core/random.hpp"
#include "sonnetssl/corpus.hpp"

namespace sonnetssl {

enum class CvMode {
  kUnion,        // one shared labeled pool per repeat
  kPerCategory,  // each category trains only on its own draws
};

struct CvSplit {
  CvMode mode = CvMode::kUnion;
  std::set<std::string> annotated;
  std::set<std::string> train_ids;  // union of all draws
  std::set<std::string> test_ids;   // annotated minus train_ids
  // category -> value -> ids drawn for it (in draw order)
  std::map<std::string, std::map<int, std::vector<std::string>>> draws;
  std::vector<std::string> warnings;
  int repeat_index = 0;
  std::uint64_t seed = 0;

  // Labeled ids for one category under the split's mode.
  std::set<std::string> train_for(const std::string& category) const {
    if (mode == CvMode::kUnion) return train_ids;
    std::set<std::string> out;
    auto it = draws.find(category);
    if (it == draws.end()) return out;
    for (const auto& [value, ids] : it->second) out.insert(ids.begin(), ids.end());
    return out;
  }

  std::set<std::string> test_for(const std::string& category) const {
    if (mode == CvMode::kUnion) return test_ids;
    const auto train = train_for(category);
    std::set<std::string> out;
    std::set_difference(annotated.begin(), annotated.end(), train.begin(), train.end(),
                        std::inserter(out, out.end()));
    return out;
  }
};

// Draws n_per_value ids uniformly without replacement for every (category,
// observed value). Categories are visited in name order, values ascending and
// candidates in id order, so a seed fixes the split completely.
inline CvSplit cv_sample(const LabelTable& labels, int n_per_value, std::uint64_t seed,
                         CvMode mode = CvMode::kUnion, int repeat_index = 0) {
  CvSplit split;
  split.mode = mode;
  split.seed = seed;
  split.repeat_index = repeat_index;
  Rng rng(seed);
  const auto quota = static_cast<std::size_t>(std::max(n_per_value, 0));

  for (const auto& [category, column] : labels) {
    std::map<int, std::vector<std::string>> by_value;
    for (const auto& [id, value] : column) {
      by_value[value].push_back(id);
      split.annotated.insert(id);
    }
    for (auto& [value, pool] : by_value) {
      const std::size_t take = std::min(quota, pool.size());
      if (take < quota) {
        split.warnings.push_back(category + "=" + std::to_string(value) + ": only " +
                                 std::to_string(pool.size()) + " sonnet(s), wanted " +
                                 std::to_string(quota));
      }
      // Partial Fisher-Yates: the first `take` slots become the sample.
      for (std::size_t i = 0; i < take; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_index(rng, pool.size() - i));
        std::swap(pool[i], pool[j]);
      }
      auto& drawn = split.draws[category][value];
      drawn.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
      split.train_ids.insert(drawn.begin(), drawn.end());
    }
  }
  std::set_difference(split.annotated.begin(), split.annotated.end(), split.train_ids.begin(),
                      split.train_ids.end(), std::inserter(split.test_ids, split.test_ids.end()));
  return split;
}

}  // namespace sonnetssl
