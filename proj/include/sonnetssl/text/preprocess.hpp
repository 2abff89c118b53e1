#pragma once

#include <string>
#include <vector>

#include "sonnetssl/corpus.hpp"
#include "sonnetssl/text/spanish_stemmer.hpp"
#include "sonnetssl/text/tokenize.hpp"

namespace sonnetssl {

struct Token {
  std::string surface;
  std::string stem;
  std::size_t position = 0;  // index among retained (non-stopword) tokens

  friend bool operator==(const Token&, const Token&) = default;
};

struct ProcessedSonnet {
  std::string id;
  std::vector<Token> tokens;
};

// tokenize -> drop stopwords -> stem. Lines are processed in reading order.
inline ProcessedSonnet preprocess(const Sonnet& s, const StopwordSet& stoplist) {
  const SpanishStemmer stemmer;
  ProcessedSonnet out{s.id, {}};
  for (const auto& stanza : s.stanzas) {
    for (const auto& line : stanza) {
      for (auto& tok : remove_stopwords(tokenize(line), stoplist)) {
        std::string st = stemmer(tok);
        const std::size_t pos = out.tokens.size();
        out.tokens.push_back({std::move(tok), std::move(st), pos});
      }
    }
  }
  return out;
}

inline std::vector<ProcessedSonnet> preprocess_all(const Corpus& c, const StopwordSet& stoplist) {
  std::vector<ProcessedSonnet> out;
  out.reserve(c.sonnets.size());
  for (const auto& s : c.sonnets) out.push_back(preprocess(s, stoplist));
  return out;
}

}  // namespace sonnetssl
