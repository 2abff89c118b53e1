#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sonnetssl/text/utf8.hpp"

namespace sonnetssl {

using StopwordSet = std::unordered_set<std::string>;

// Splits on Unicode whitespace, trims non-alphanumeric characters from both
// ends of each piece (so ¡ ¿ « » and friends go), lowercases, and keeps only
// pieces that still contain at least one letter. Internal apostrophes and
// hyphens survive.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  const std::u32string chars = utf8::decode(text);
  std::size_t i = 0;
  while (i < chars.size()) {
    while (i < chars.size() && utf8::is_space(chars[i])) ++i;
    std::size_t j = i;
    while (j < chars.size() && !utf8::is_space(chars[j])) ++j;
    if (j == i) break;
    std::size_t b = i, e = j;
    auto alnum = [](char32_t c) { return utf8::is_letter(c) || utf8::is_digit(c); };
    while (b < e && !alnum(chars[b])) ++b;
    while (e > b && !alnum(chars[e - 1])) --e;
    bool has_letter = false;
    for (std::size_t k = b; k < e && !has_letter; ++k) has_letter = utf8::is_letter(chars[k]);
    if (has_letter) {
      tokens.push_back(utf8::encode(utf8::to_lower(chars.substr(b, e - b))));
    }
    i = j;
  }
  return tokens;
}

inline std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                                 const StopwordSet& stoplist) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stoplist.contains(t)) kept.push_back(t);
  }
  return kept;
}

}  // namespace sonnetssl
