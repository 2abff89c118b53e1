#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

#include "sonnetssl/text/utf8.hpp"

namespace sonnetssl {

// Snowball Spanish stemmer. Works on code points; input is expected to be a
// lowercase, NFC-normalized word.
//
// Regions follow the usual Snowball definitions:
//   RV  - see mark_regions() below,
//   R1  - after the first non-vowel following a vowel,
//   R2  - R1 computed again inside R1.
// Every suffix table lookup picks the longest matching suffix first and only
// then tests the region condition; a failed condition does not fall back to a
// shorter suffix.
class SpanishStemmer {
 public:
  std::string operator()(std::string_view word) const { return stem(word); }

  std::string stem(std::string_view word) const {
    Word w{utf8::decode(word)};
    w.mark_regions();
    attached_pronoun(w);
    if (!standard_suffix(w) && !y_verb_suffix(w)) verb_suffix(w);
    residual_suffix(w);
    remove_acute_accents(w.s);
    return utf8::encode(w.s);
  }

 private:
  struct Suffix {
    std::u32string_view text;
    int group;
  };

  struct Word {
    std::u32string s;
    std::size_t rv = 0, r1 = 0, r2 = 0;

    static bool vowel(char32_t c) {
      switch (c) {
        case U'a': case U'e': case U'i': case U'o': case U'u':
        case U'á': case U'é': case U'í': case U'ó': case U'ú': case U'ü':
          return true;
        default:
          return false;
      }
    }

    // Index just past the first position >= from where pred holds, or npos.
    template <typename Pred>
    std::size_t past(std::size_t from, Pred pred) const {
      for (std::size_t i = from; i < s.size(); ++i) {
        if (pred(s[i])) return i + 1;
      }
      return std::u32string::npos;
    }

    void mark_regions() {
      const std::size_t n = s.size();
      const auto is_v = [](char32_t c) { return vowel(c); };
      const auto non_v = [](char32_t c) { return !vowel(c); };
      rv = r1 = r2 = n;
      if (n >= 2) {
        std::size_t p = std::u32string::npos;
        if (vowel(s[0])) {
          // vowel + consonant: after the next vowel; two vowels: after the next consonant.
          p = vowel(s[1]) ? past(2, non_v) : past(2, is_v);
        } else if (!vowel(s[1])) {
          p = past(2, is_v);
        } else if (n >= 3) {
          p = 3;
        }
        if (p != std::u32string::npos) rv = p;
      }
      std::size_t p = past(0, is_v);
      if (p != std::u32string::npos) p = past(p, non_v);
      if (p == std::u32string::npos) return;
      r1 = p;
      p = past(r1, is_v);
      if (p != std::u32string::npos) p = past(p, non_v);
      if (p != std::u32string::npos) r2 = p;
    }

    bool ends_with(std::u32string_view suf, std::size_t end) const {
      return suf.size() <= end && std::u32string_view(s).substr(end - suf.size(), suf.size()) == suf;
    }

    // Longest suffix of s[0, end) from the table whose start is >= limit.
    template <std::size_t N>
    const Suffix* longest(const Suffix (&table)[N], std::size_t end, std::size_t limit = 0) const {
      const Suffix* best = nullptr;
      for (const auto& suf : table) {
        if (suf.text.size() > end || end - suf.text.size() < limit) continue;
        if (!ends_with(suf.text, end)) continue;
        if (best == nullptr || suf.text.size() > best->text.size()) best = &suf;
      }
      return best;
    }

    std::size_t start_of(const Suffix& suf) const { return s.size() - suf.text.size(); }
    void truncate(std::size_t at) { s.resize(at); }
    void replace_tail(std::size_t at, std::u32string_view with) {
      s.resize(at);
      s.append(with);
    }
    char32_t at_or_nul(std::size_t i) const { return i < s.size() ? s[i] : U'\0'; }
  };

  static constexpr Suffix kPronouns[] = {
      {U"me", 0},  {U"se", 0},   {U"sela", 0}, {U"selo", 0}, {U"selas", 0},
      {U"selos", 0}, {U"la", 0}, {U"le", 0},   {U"lo", 0},   {U"las", 0},
      {U"les", 0}, {U"los", 0},  {U"nos", 0},
  };

  // Verb endings that may carry a pronoun. Groups 1-5 lose their accent once
  // the pronoun is gone, 6 just drops the pronoun, 7 needs a preceding 'u'.
  static constexpr Suffix kPronounHosts[] = {
      {U"iéndo", 1}, {U"ándo", 2}, {U"ár", 3},   {U"ér", 4}, {U"ír", 5},
      {U"ando", 6},  {U"iendo", 6}, {U"ar", 6},  {U"er", 6}, {U"ir", 6},
      {U"yendo", 7},
  };

  static constexpr Suffix kStandard[] = {
      {U"anza", 1},     {U"anzas", 1},    {U"ico", 1},      {U"ica", 1},
      {U"icos", 1},     {U"icas", 1},     {U"ismo", 1},     {U"ismos", 1},
      {U"able", 1},     {U"ables", 1},    {U"ible", 1},     {U"ibles", 1},
      {U"ista", 1},     {U"istas", 1},    {U"oso", 1},      {U"osa", 1},
      {U"osos", 1},     {U"osas", 1},     {U"amiento", 1},  {U"amientos", 1},
      {U"imiento", 1},  {U"imientos", 1},
      {U"adora", 2},    {U"ador", 2},     {U"ación", 2},    {U"acion", 2},
      {U"adoras", 2},   {U"adores", 2},   {U"aciones", 2},  {U"ante", 2},
      {U"antes", 2},    {U"ancia", 2},    {U"ancias", 2},
      {U"logía", 3},    {U"logías", 3},
      {U"ución", 4},    {U"ucion", 4},    {U"uciones", 4},
      {U"encia", 5},    {U"encias", 5},
      {U"amente", 6},
      {U"mente", 7},
      {U"idad", 8},     {U"idades", 8},
      {U"iva", 9},      {U"ivo", 9},      {U"ivas", 9},     {U"ivos", 9},
  };

  static constexpr Suffix kAfterAmente[] = {{U"ic", 0}, {U"ad", 0}, {U"os", 0}, {U"iv", 1}};
  static constexpr Suffix kAfterMente[] = {{U"able", 0}, {U"ible", 0}, {U"ante", 0}};
  static constexpr Suffix kAfterIdad[] = {{U"ic", 0}, {U"abil", 0}, {U"iv", 0}};

  static constexpr Suffix kYVerb[] = {
      {U"ya", 0},   {U"ye", 0},   {U"yan", 0},  {U"yen", 0},   {U"yeron", 0}, {U"yendo", 0},
      {U"yo", 0},   {U"yas", 0},  {U"yes", 0},  {U"yais", 0},  {U"yamos", 0}, {U"yó", 0},
  };

  // Group 1 endings drop a preceding "u" when it follows "g".
  static constexpr Suffix kVerb[] = {
      {U"en", 1},     {U"es", 1},     {U"éis", 1},    {U"emos", 1},
      {U"arían", 2},  {U"arías", 2},  {U"arán", 2},   {U"arás", 2},   {U"aríais", 2},
      {U"aría", 2},   {U"aréis", 2},  {U"aríamos", 2}, {U"aremos", 2}, {U"ará", 2},
      {U"aré", 2},    {U"erían", 2},  {U"erías", 2},  {U"erán", 2},   {U"erás", 2},
      {U"eríais", 2}, {U"ería", 2},   {U"eréis", 2},  {U"eríamos", 2}, {U"eremos", 2},
      {U"erá", 2},    {U"eré", 2},    {U"irían", 2},  {U"irías", 2},  {U"irán", 2},
      {U"irás", 2},   {U"iríais", 2}, {U"iría", 2},   {U"iréis", 2},  {U"iríamos", 2},
      {U"iremos", 2}, {U"irá", 2},    {U"iré", 2},    {U"aba", 2},    {U"ada", 2},
      {U"ida", 2},    {U"ía", 2},     {U"ara", 2},    {U"iera", 2},   {U"ad", 2},
      {U"ed", 2},     {U"id", 2},     {U"ase", 2},    {U"iese", 2},   {U"aste", 2},
      {U"iste", 2},   {U"an", 2},     {U"aban", 2},   {U"ían", 2},    {U"aran", 2},
      {U"ieran", 2},  {U"asen", 2},   {U"iesen", 2},  {U"aron", 2},   {U"ieron", 2},
      {U"ado", 2},    {U"ido", 2},    {U"ando", 2},   {U"iendo", 2},  {U"ió", 2},
      {U"ar", 2},     {U"er", 2},     {U"ir", 2},     {U"as", 2},     {U"abas", 2},
      {U"adas", 2},   {U"idas", 2},   {U"ías", 2},    {U"aras", 2},   {U"ieras", 2},
      {U"ases", 2},   {U"ieses", 2},  {U"ís", 2},     {U"áis", 2},    {U"abais", 2},
      {U"íais", 2},   {U"arais", 2},  {U"ierais", 2}, {U"aseis", 2},  {U"ieseis", 2},
      {U"asteis", 2}, {U"isteis", 2}, {U"ados", 2},   {U"idos", 2},   {U"amos", 2},
      {U"ábamos", 2}, {U"íamos", 2},  {U"imos", 2},   {U"áramos", 2}, {U"iéramos", 2},
      {U"iésemos", 2}, {U"ásemos", 2},
  };

  static constexpr Suffix kResidual[] = {
      {U"os", 1}, {U"a", 1}, {U"o", 1}, {U"á", 1}, {U"í", 1}, {U"ó", 1}, {U"e", 2}, {U"é", 2},
  };

  static void attached_pronoun(Word& w) {
    const Suffix* pron = w.longest(kPronouns, w.s.size());
    if (pron == nullptr) return;
    const std::size_t pron_start = w.start_of(*pron);
    const Suffix* host = w.longest(kPronounHosts, pron_start);
    if (host == nullptr) return;
    const std::size_t host_start = pron_start - host->text.size();
    if (host_start < w.rv) return;
    static constexpr std::u32string_view kPlain[] = {U"", U"iendo", U"ando", U"ar", U"er", U"ir"};
    switch (host->group) {
      case 6:
        w.truncate(pron_start);
        break;
      case 7:
        if (host_start == 0 || w.s[host_start - 1] != U'u') return;
        w.truncate(pron_start);
        break;
      default:
        w.replace_tail(host_start, kPlain[host->group]);
        break;
    }
  }

  static bool standard_suffix(Word& w) {
    const Suffix* suf = w.longest(kStandard, w.s.size());
    if (suf == nullptr) return false;
    const std::size_t start = w.start_of(*suf);
    // Optional further deletion of a preceding suffix lying in R2.
    auto strip_r2 = [&w](std::u32string_view tail) {
      const std::size_t end = w.s.size();
      if (w.ends_with(tail, end) && end - tail.size() >= w.r2) {
        w.truncate(end - tail.size());
        return true;
      }
      return false;
    };
    switch (suf->group) {
      case 1:
        if (start < w.r2) return false;
        w.truncate(start);
        break;
      case 2:
        if (start < w.r2) return false;
        w.truncate(start);
        strip_r2(U"ic");
        break;
      case 3:
        if (start < w.r2) return false;
        w.replace_tail(start, U"log");
        break;
      case 4:
        if (start < w.r2) return false;
        w.replace_tail(start, U"u");
        break;
      case 5:
        if (start < w.r2) return false;
        w.replace_tail(start, U"ente");
        break;
      case 6: {
        if (start < w.r1) return false;
        w.truncate(start);
        const Suffix* next = w.longest(kAfterAmente, w.s.size());
        if (next != nullptr && w.start_of(*next) >= w.r2) {
          w.truncate(w.start_of(*next));
          if (next->group == 1) strip_r2(U"at");
        }
        break;
      }
      case 7: {
        if (start < w.r2) return false;
        w.truncate(start);
        const Suffix* next = w.longest(kAfterMente, w.s.size());
        if (next != nullptr && w.start_of(*next) >= w.r2) w.truncate(w.start_of(*next));
        break;
      }
      case 8: {
        if (start < w.r2) return false;
        w.truncate(start);
        const Suffix* next = w.longest(kAfterIdad, w.s.size());
        if (next != nullptr && w.start_of(*next) >= w.r2) w.truncate(w.start_of(*next));
        break;
      }
      case 9:
        if (start < w.r2) return false;
        w.truncate(start);
        strip_r2(U"at");
        break;
    }
    return true;
  }

  static bool y_verb_suffix(Word& w) {
    const Suffix* suf = w.longest(kYVerb, w.s.size(), w.rv);
    if (suf == nullptr) return false;
    const std::size_t start = w.start_of(*suf);
    if (start == 0 || w.s[start - 1] != U'u') return false;
    w.truncate(start);
    return true;
  }

  static bool verb_suffix(Word& w) {
    const Suffix* suf = w.longest(kVerb, w.s.size(), w.rv);
    if (suf == nullptr) return false;
    std::size_t start = w.start_of(*suf);
    if (suf->group == 1 && start >= 2 && w.s[start - 1] == U'u' && w.s[start - 2] == U'g') {
      --start;
    }
    w.truncate(start);
    return true;
  }

  static void residual_suffix(Word& w) {
    const Suffix* suf = w.longest(kResidual, w.s.size());
    if (suf == nullptr) return;
    const std::size_t start = w.start_of(*suf);
    if (start < w.rv) return;
    w.truncate(start);
    if (suf->group == 2 && start >= 2 && w.s[start - 1] == U'u' && w.s[start - 2] == U'g' &&
        start - 1 >= w.rv) {
      w.truncate(start - 1);
    }
  }

  static void remove_acute_accents(std::u32string& s) {
    for (auto& c : s) {
      switch (c) {
        case U'á': c = U'a'; break;
        case U'é': c = U'e'; break;
        case U'í': c = U'i'; break;
        case U'ó': c = U'o'; break;
        case U'ú': c = U'u'; break;
        default: break;
      }
    }
  }
};

inline std::string stem(std::string_view token) { return SpanishStemmer{}.stem(token); }

}  // namespace sonnetssl
