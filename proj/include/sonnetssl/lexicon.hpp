#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sonnetssl/core/error.hpp"
#include "sonnetssl/corpus.hpp"
#include "sonnetssl/text/preprocess.hpp"
#include "sonnetssl/text/spanish_stemmer.hpp"
#include "sonnetssl/text/utf8.hpp"

namespace sonnetssl {

enum class Dimension {
  kValence,
  kArousal,
  kHappiness,
  kAnger,
  kSadness,
  kFear,
  kDisgust,
  kConcreteness,
  kImageability,
  kContextAvailability,
};

inline constexpr std::size_t kNumDimensions = 10;

inline constexpr std::array<Dimension, kNumDimensions> kAllDimensions = {
    Dimension::kValence,      Dimension::kArousal,      Dimension::kHappiness,
    Dimension::kAnger,        Dimension::kSadness,      Dimension::kFear,
    Dimension::kDisgust,      Dimension::kConcreteness, Dimension::kImageability,
    Dimension::kContextAvailability};

inline constexpr std::array<std::string_view, kNumDimensions> kDimensionNames = {
    "valence", "arousal",      "happiness",    "anger",        "sadness",
    "fear",    "disgust",      "concreteness", "imageability", "context_availability"};

inline constexpr std::size_t index(Dimension d) { return static_cast<std::size_t>(d); }

inline std::string_view name(Dimension d) { return kDimensionNames[index(d)]; }

// Rating scale of the source norms: the basic emotions are rated 1..5, the
// rest 1..9.
inline constexpr double dimension_max(Dimension d) {
  switch (d) {
    case Dimension::kHappiness:
    case Dimension::kAnger:
    case Dimension::kSadness:
    case Dimension::kFear:
    case Dimension::kDisgust:
      return 5.0;
    default:
      return 9.0;
  }
}
inline constexpr double dimension_min(Dimension) { return 1.0; }

struct LexiconEntry {
  std::string word;
  std::array<std::optional<double>, kNumDimensions> mean{};
  std::array<std::optional<double>, kNumDimensions> sd{};

  const std::optional<double>& mean_of(Dimension d) const { return mean[index(d)]; }
  const std::optional<double>& sd_of(Dimension d) const { return sd[index(d)]; }

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

// One source lexicon as read from disk, before stemming/merging.
struct LexiconTable {
  std::string name;
  std::vector<LexiconEntry> rows;
};

class MergedLexicon {
 public:
  MergedLexicon() = default;
  explicit MergedLexicon(std::map<std::string, LexiconEntry> entries)
      : entries_(std::move(entries)) {}

  const LexiconEntry* lookup(std::string_view stem) const {
    auto it = entries_.find(std::string(stem));
    return it == entries_.end() ? nullptr : &it->second;
  }
  bool contains(std::string_view stem) const { return lookup(stem) != nullptr; }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, LexiconEntry>& entries() const { return entries_; }

  void insert(LexiconEntry e) {
    auto key = e.word;
    entries_.insert_or_assign(std::move(key), std::move(e));
  }

 private:
  std::map<std::string, LexiconEntry> entries_;
};

inline std::optional<LexiconEntry> lookup(const MergedLexicon& lex, std::string_view stem) {
  if (const auto* e = lex.lookup(stem)) return *e;
  return std::nullopt;
}

inline void check_ranges(const LexiconEntry& e, std::string_view source) {
  for (auto d : kAllDimensions) {
    if (const auto& m = e.mean_of(d); m && (!std::isfinite(*m) || *m < dimension_min(d) ||
                                            *m > dimension_max(d))) {
      throw RangeError(std::string(source) + ": '" + e.word + "' " + std::string(name(d)) +
                       "_mean out of range");
    }
    if (const auto& s = e.sd_of(d); s && (!std::isfinite(*s) || *s < 0.0)) {
      throw RangeError(std::string(source) + ": '" + e.word + "' " + std::string(name(d)) +
                       "_sd negative");
    }
  }
}

// CSV with header `word,<dim>_mean,<dim>_sd,...`. Empty cells mean "not
// provided by this lexicon". Fields may be double-quoted.
inline LexiconTable parse_lexicon_csv(std::string_view text, std::string name = "lexicon") {
  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char ch = line[i];
      if (quoted) {
        if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (ch == '"') {
          quoted = false;
        } else {
          cur += ch;
        }
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        fields.push_back(detail::trim(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(detail::trim(cur));
    return fields;
  };

  LexiconTable table{std::move(name), {}};
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError(table.name + ": empty lexicon file");
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  if (header.empty() || header[0] != "word") {
    throw ParseError(table.name + ": header must start with 'word'");
  }
  struct Column {
    Dimension dim;
    bool is_sd;
  };
  std::vector<std::optional<Column>> columns(header.size());
  for (std::size_t c = 1; c < header.size(); ++c) {
    const auto& h = header[c];
    bool found = false;
    for (auto d : kAllDimensions) {
      const std::string base(sonnetssl::name(d));
      if (h == base + "_mean") columns[c] = Column{d, false};
      else if (h == base + "_sd") columns[c] = Column{d, true};
      else continue;
      found = true;
      break;
    }
    if (!found) throw ParseError(table.name + ": unknown column '" + h + "'");
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw ParseError(table.name + ": line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(header.size()));
    }
    LexiconEntry e;
    e.word = utf8::to_lower(fields[0]);
    if (e.word.empty()) throw ParseError(table.name + ": empty word at line " + std::to_string(line_no));
    for (std::size_t c = 1; c < fields.size(); ++c) {
      if (fields[c].empty()) continue;
      double v = 0.0;
      try {
        std::size_t used = 0;
        v = std::stod(fields[c], &used);
        if (used != fields[c].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ParseError(table.name + ": bad number '" + fields[c] + "' at line " +
                         std::to_string(line_no));
      }
      auto& slot = columns[c]->is_sd ? e.sd[index(columns[c]->dim)] : e.mean[index(columns[c]->dim)];
      slot = v;
    }
    check_ranges(e, table.name);
    table.rows.push_back(std::move(e));
  }
  return table;
}

inline LexiconTable load_lexicon_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open lexicon file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon_csv(buf.str(), path);
}

using StemFn = std::function<std::string(std::string_view)>;

// Keys every row by the stem of its word; all values landing on the same
// (stem, dimension) are averaged, whichever source or surface form they came
// from.
inline MergedLexicon merge_lexicons(const std::vector<LexiconTable>& sources,
                                    const StemFn& stemmer = SpanishStemmer{}) {
  struct Acc {
    std::array<double, kNumDimensions> mean_sum{}, sd_sum{};
    std::array<int, kNumDimensions> mean_n{}, sd_n{};
  };
  std::map<std::string, Acc> acc;
  for (const auto& src : sources) {
    for (const auto& row : src.rows) {
      check_ranges(row, src.name);
      auto& a = acc[stemmer(row.word)];
      for (std::size_t d = 0; d < kNumDimensions; ++d) {
        if (row.mean[d]) {
          a.mean_sum[d] += *row.mean[d];
          ++a.mean_n[d];
        }
        if (row.sd[d]) {
          a.sd_sum[d] += *row.sd[d];
          ++a.sd_n[d];
        }
      }
    }
  }
  std::map<std::string, LexiconEntry> merged;
  for (const auto& [key, a] : acc) {
    LexiconEntry e;
    e.word = key;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      if (a.mean_n[d] > 0) e.mean[d] = a.mean_sum[d] / a.mean_n[d];
      if (a.sd_n[d] > 0) e.sd[d] = a.sd_sum[d] / a.sd_n[d];
    }
    merged.emplace(key, std::move(e));
  }
  return MergedLexicon(std::move(merged));
}

enum class CoverageWeighting { kTypes, kTokens };

inline double coverage(const std::vector<ProcessedSonnet>& processed, const MergedLexicon& lex,
                       CoverageWeighting weighting) {
  if (weighting == CoverageWeighting::kTokens) {
    std::size_t total = 0, matched = 0;
    for (const auto& p : processed) {
      for (const auto& t : p.tokens) {
        ++total;
        if (lex.contains(t.stem)) ++matched;
      }
    }
    return total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
  }
  std::set<std::string> stems;
  for (const auto& p : processed) {
    for (const auto& t : p.tokens) stems.insert(t.stem);
  }
  std::size_t found = 0;
  for (const auto& s : stems) {
    if (lex.contains(s)) ++found;
  }
  return stems.empty() ? 0.0 : static_cast<double>(found) / static_cast<double>(stems.size());
}

// Share of the corpus vocabulary (after stopword removal and stemming) that
// the lexicon covers, by distinct stems or by occurrences.
inline double coverage(const Corpus& corpus, const MergedLexicon& lex, const StopwordSet& stoplist,
                       CoverageWeighting weighting) {
  return coverage(preprocess_all(corpus, stoplist), lex, weighting);
}

namespace detail {

inline std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace detail

// Spearman rank correlation (Pearson on tie-averaged ranks). Returns 0 for
// fewer than two points or when either side has no rank variance.
inline double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw LengthMismatchError("spearman: length mismatch");
  if (xs.size() < 2) return 0.0;
  const auto rx = detail::average_ranks(xs);
  const auto ry = detail::average_ranks(ys);
  const double mean = 0.5 * static_cast<double>(xs.size() + 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean, dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline constexpr std::size_t kNumGamFeatures = 32;

inline constexpr std::array<std::string_view, kNumGamFeatures> kGamFeatureNames = {
    "valence_mean",      "valence_sd",      "arousal_mean",      "arousal_sd",
    "happiness_mean",    "happiness_sd",    "anger_mean",        "anger_sd",
    "sadness_mean",      "sadness_sd",      "fear_mean",         "fear_sd",
    "disgust_mean",      "disgust_sd",      "concreteness_mean", "concreteness_sd",
    "imageability_mean", "imageability_sd", "cont_ava_mean",     "cont_ava_sd",
    "max_arousal",       "min_arousal",     "max_valence",       "min_valence",
    "arousal_span",      "valence_span",    "CorAro",            "CorVal",
    "AbsCorAro",         "AbsCorVal",       "sigma_aro",         "sigma_val"};

struct GamFeatureVector {
  enum Index : std::size_t {
    kValenceMean = 0,
    // <dim>_mean at 2*i, <dim>_sd at 2*i + 1 for i in dimension order.
    kMaxArousal = 20,
    kMinArousal,
    kMaxValence,
    kMinValence,
    kArousalSpan,
    kValenceSpan,
    kCorAro,
    kCorVal,
    kAbsCorAro,
    kAbsCorVal,
    kSigmaAro,
    kSigmaVal,
  };

  std::array<double, kNumGamFeatures> values{};
  std::size_t matched_count = 0;
  std::size_t token_count = 0;
  // Quality flags: Spearman fell back to 0, or no token matched the lexicon.
  bool cor_aro_degenerate = false;
  bool cor_val_degenerate = false;
  bool no_matches = false;

  double operator[](std::size_t i) const { return values[i]; }
  double mean_of(Dimension d) const { return values[2 * index(d)]; }
  double sd_of(Dimension d) const { return values[2 * index(d) + 1]; }
  double get(std::string_view feature) const {
    for (std::size_t i = 0; i < kNumGamFeatures; ++i) {
      if (kGamFeatureNames[i] == feature) return values[i];
    }
    throw std::out_of_range("unknown GAM feature: " + std::string(feature));
  }
};

// The 32 per-sonnet lexicon features. Statistics for a dimension use only the
// matched tokens whose merged record carries that dimension; positions are
// those of the retained tokens, and N in sigma_* is the retained token count.
inline GamFeatureVector extract_features(const ProcessedSonnet& p, const MergedLexicon& lex) {
  GamFeatureVector f;
  f.token_count = p.tokens.size();

  std::array<std::vector<double>, kNumDimensions> means, sds;
  std::array<std::vector<double>, kNumDimensions> positions;
  for (const auto& t : p.tokens) {
    const LexiconEntry* e = lex.lookup(t.stem);
    if (e == nullptr) continue;
    ++f.matched_count;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      if (e->mean[d]) {
        means[d].push_back(*e->mean[d]);
        positions[d].push_back(static_cast<double>(t.position));
      }
      if (e->sd[d]) sds[d].push_back(*e->sd[d]);
    }
  }
  f.no_matches = f.matched_count == 0;

  auto avg = [](const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    f.values[2 * d] = avg(means[d]);
    f.values[2 * d + 1] = avg(sds[d]);
  }

  const auto& aro = means[index(Dimension::kArousal)];
  const auto& val = means[index(Dimension::kValence)];
  auto max_of = [](const std::vector<double>& v) {
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  };
  auto min_of = [](const std::vector<double>& v) {
    return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end());
  };
  f.values[GamFeatureVector::kMaxArousal] = max_of(aro);
  f.values[GamFeatureVector::kMinArousal] = min_of(aro);
  f.values[GamFeatureVector::kMaxValence] = max_of(val);
  f.values[GamFeatureVector::kMinValence] = min_of(val);
  f.values[GamFeatureVector::kArousalSpan] = max_of(aro) - min_of(aro);
  f.values[GamFeatureVector::kValenceSpan] = max_of(val) - min_of(val);

  auto degenerate = [](const std::vector<double>& v) {
    return v.size() < 2 || std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
  };
  const double cor_aro = spearman(aro, positions[index(Dimension::kArousal)]);
  const double cor_val = spearman(val, positions[index(Dimension::kValence)]);
  f.cor_aro_degenerate = degenerate(aro);
  f.cor_val_degenerate = degenerate(val);
  f.values[GamFeatureVector::kCorAro] = cor_aro;
  f.values[GamFeatureVector::kCorVal] = cor_val;
  f.values[GamFeatureVector::kAbsCorAro] = std::abs(cor_aro);
  f.values[GamFeatureVector::kAbsCorVal] = std::abs(cor_val);

  // x / (1/sqrt(N)) == x * sqrt(N)
  const double sqrt_n = std::sqrt(static_cast<double>(f.token_count));
  f.values[GamFeatureVector::kSigmaAro] = f.mean_of(Dimension::kArousal) * sqrt_n;
  f.values[GamFeatureVector::kSigmaVal] = f.mean_of(Dimension::kValence) * sqrt_n;

  if (f.no_matches) f.values.fill(0.0);
  return f;
}

}  // namespace sonnetssl
