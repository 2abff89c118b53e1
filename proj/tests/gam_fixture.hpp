#pragma once

// Six retained tokens, four lexicon stems, expected features worked out by
// hand.
//
//   position  0     1      2     3     4      5
//   stem      sol   nube   mar   luz   roca   ola
//   entry     A     -      B     C     -      D
//
//   A: valence 7/1.0  arousal 2/0.5  happiness 4/0.8  anger 1/0.2
//      sadness 2/0.4  fear 1/0.3     disgust 1/0.1
//   B: valence 3/1.5  arousal 6/1.0  happiness 2/0.6  anger 3/0.9
//      sadness 4/1.1  fear 2/0.7     disgust 2/0.5
//   C: valence 5/2.0  arousal 4/1.2  concreteness 6/0.9  imageability 5/1.1
//      context_availability 4/1.3
//   D: concreteness 2/0.5  imageability 3/0.7  context_availability 8/0.9
//
// Arousal along positions 0,2,3 is 2,6,4: ranks (1,3,2) against (1,2,3),
// sum d^2 = 2, rho = 1 - 6*2/(3*8) = 0.5. Valence is 7,3,5: ranks (3,1,2),
// sum d^2 = 6, rho = -0.5. N = 6.

#include <array>
#include <cmath>

#include "sonnetssl/lexicon.hpp"
#include "sonnetssl/text/preprocess.hpp"

namespace sonnetssl::testing {

inline ProcessedSonnet gam_fixture_sonnet() {
  ProcessedSonnet p{"fixture", {}};
  const char* stems[] = {"sol", "nube", "mar", "luz", "roca", "ola"};
  for (std::size_t i = 0; i < 6; ++i) p.tokens.push_back({stems[i], stems[i], i});
  return p;
}

inline MergedLexicon gam_fixture_lexicon() {
  using D = Dimension;
  auto entry = [](const char* word, std::initializer_list<std::tuple<D, double, double>> dims) {
    LexiconEntry e;
    e.word = word;
    for (const auto& [d, m, s] : dims) {
      e.mean[index(d)] = m;
      e.sd[index(d)] = s;
    }
    return e;
  };
  MergedLexicon lex;
  lex.insert(entry("sol", {{D::kValence, 7, 1.0}, {D::kArousal, 2, 0.5}, {D::kHappiness, 4, 0.8},
                           {D::kAnger, 1, 0.2}, {D::kSadness, 2, 0.4}, {D::kFear, 1, 0.3},
                           {D::kDisgust, 1, 0.1}}));
  lex.insert(entry("mar", {{D::kValence, 3, 1.5}, {D::kArousal, 6, 1.0}, {D::kHappiness, 2, 0.6},
                           {D::kAnger, 3, 0.9}, {D::kSadness, 4, 1.1}, {D::kFear, 2, 0.7},
                           {D::kDisgust, 2, 0.5}}));
  lex.insert(entry("luz", {{D::kValence, 5, 2.0}, {D::kArousal, 4, 1.2}, {D::kConcreteness, 6, 0.9},
                           {D::kImageability, 5, 1.1}, {D::kContextAvailability, 4, 1.3}}));
  lex.insert(entry("ola", {{D::kConcreteness, 2, 0.5}, {D::kImageability, 3, 0.7},
                           {D::kContextAvailability, 8, 0.9}}));
  return lex;
}

// In kGamFeatureNames order.
inline std::array<double, 32> gam_fixture_expected() {
  const double r6 = std::sqrt(6.0);
  return {
      5.0, 1.5,    // valence: (7+3+5)/3, (1.0+1.5+2.0)/3
      4.0, 0.9,    // arousal: (2+6+4)/3, (0.5+1.0+1.2)/3
      3.0, 0.7,    // happiness
      2.0, 0.55,   // anger
      3.0, 0.75,   // sadness
      1.5, 0.5,    // fear
      1.5, 0.3,    // disgust
      4.0, 0.7,    // concreteness: (6+2)/2, (0.9+0.5)/2
      4.0, 0.9,    // imageability
      6.0, 1.1,    // context availability
      6.0, 2.0,    // max/min arousal
      7.0, 3.0,    // max/min valence
      4.0, 4.0,    // arousal span, valence span
      0.5, -0.5,   // CorAro, CorVal
      0.5, 0.5,    // |CorAro|, |CorVal|
      4.0 * r6,    // sigma_aro
      5.0 * r6,    // sigma_val
  };
}

}  // namespace sonnetssl::testing
