#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "sonnetssl/core/error.hpp"
#include "sonnetssl/text/tokenize.hpp"

namespace sonnetssl {

enum class Source { kDisco, kDiscoPal, kXxExtension };

inline std::string_view to_string(Source s) {
  switch (s) {
    case Source::kDisco: return "DISCO";
    case Source::kDiscoPal: return "DISCO_PAL";
    case Source::kXxExtension: return "XX_EXTENSION";
  }
  return "DISCO";
}

inline Source parse_source(std::string_view s) {
  if (s == "DISCO") return Source::kDisco;
  if (s == "DISCO_PAL") return Source::kDiscoPal;
  if (s == "XX_EXTENSION") return Source::kXxExtension;
  throw SchemaError("unknown sonnet source: " + std::string(s));
}

struct Sonnet {
  std::string id;
  std::string author;
  std::string period;
  std::string title;
  std::vector<std::vector<std::string>> stanzas;
  Source source = Source::kDisco;

  std::size_t line_count() const {
    std::size_t n = 0;
    for (const auto& st : stanzas) n += st.size();
    return n;
  }

  // All lines joined with '\n', stanza breaks included as blank lines.
  std::string text() const {
    std::string out;
    for (std::size_t s = 0; s < stanzas.size(); ++s) {
      if (s > 0) out += '\n';
      for (const auto& line : stanzas[s]) {
        out += line;
        out += '\n';
      }
    }
    return out;
  }

  friend bool operator==(const Sonnet&, const Sonnet&) = default;
};

inline constexpr std::array<std::string_view, 21> kPsychologicalCategories = {
    "solitude",      "anxiety",      "illusion",       "anger",        "daydream",
    "instability",   "grandeur",     "idealization",   "pride",        "depression",
    "irritability",  "disappointment", "dramatisation", "prejudice",   "aversion",
    "insecurity",    "helplessness", "vulnerability",  "fear",         "obsession",
    "compulsion"};

inline constexpr std::array<std::string_view, 10> kScaledCategories = {
    "valence", "arousal",      "happiness",    "disgust", "anger",
    "sadness", "fear",         "concreteness", "imageability", "context_availability"};

// Psychological and scaled categories share some names (anger, fear), so a
// category is identified by its group plus name, e.g. "scaled/fear".
struct Category {
  enum class Group { kPsychological, kScaled };
  Group group = Group::kPsychological;
  std::string name;

  bool binary() const { return group == Group::kPsychological; }
  std::string qualified() const {
    return (group == Group::kPsychological ? "psychological/" : "scaled/") + name;
  }
  std::vector<int> values() const {
    return binary() ? std::vector<int>{0, 1} : std::vector<int>{1, 2, 3, 4};
  }

  friend bool operator==(const Category&, const Category&) = default;
};

inline const std::vector<Category>& all_categories() {
  static const std::vector<Category> cats = [] {
    std::vector<Category> out;
    for (auto n : kPsychologicalCategories) {
      out.push_back({Category::Group::kPsychological, std::string(n)});
    }
    for (auto n : kScaledCategories) out.push_back({Category::Group::kScaled, std::string(n)});
    return out;
  }();
  return cats;
}

// Accepts "psychological/<name>" or "scaled/<name>".
inline Category parse_category(std::string_view qualified) {
  for (const auto& c : all_categories()) {
    if (c.qualified() == qualified) return c;
  }
  throw ConfigError("unknown category: " + std::string(qualified));
}

struct AnnotationSet {
  std::map<std::string, int> psychological;
  std::map<std::string, int> scaled;

  int label(const Category& c) const {
    const auto& m = c.binary() ? psychological : scaled;
    return m.at(c.name);
  }

  friend bool operator==(const AnnotationSet&, const AnnotationSet&) = default;
};

struct Corpus {
  std::vector<Sonnet> sonnets;
  std::map<std::string, AnnotationSet> annotations;

  const Sonnet* find(std::string_view id) const {
    for (const auto& s : sonnets) {
      if (s.id == id) return &s;
    }
    return nullptr;
  }

  std::vector<std::string> annotated_ids() const {
    std::vector<std::string> ids;
    for (const auto& s : sonnets) {
      if (annotations.contains(s.id)) ids.push_back(s.id);
    }
    return ids;
  }

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Label table restricted to some categories: category -> id -> value.
// Used by the CV sampler so that toy fixtures need not carry all 31 labels.
using LabelTable = std::map<std::string, std::map<std::string, int>>;

inline LabelTable label_table(const Corpus& c, const std::vector<Category>& cats) {
  LabelTable t;
  for (const auto& cat : cats) {
    auto& col = t[cat.qualified()];
    for (const auto& [id, ann] : c.annotations) col[id] = ann.label(cat);
  }
  return t;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto ws = [](unsigned char ch) { return std::isspace(ch) != 0; };
  std::size_t b = 0, e = s.size();
  while (b < e && ws(s[b])) ++b;
  while (e > b && ws(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

template <typename T>
T required(const nlohmann::json& obj, const char* key, std::string_view where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError(std::string(where) + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(std::string(where) + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace detail

inline void validate(const Corpus& c) {
  std::unordered_set<std::string> seen;
  for (const auto& s : c.sonnets) {
    if (s.id.empty()) throw SchemaError("sonnet with empty id");
    if (!seen.insert(s.id).second) throw DuplicateIdError("duplicate sonnet id: " + s.id);
    for (const auto& stanza : s.stanzas) {
      for (const auto& line : stanza) {
        if (detail::trim(line).empty()) throw SchemaError("empty line in sonnet " + s.id);
      }
    }
  }
  for (const auto& [id, ann] : c.annotations) {
    if (!seen.contains(id)) throw SchemaError("annotation for unknown sonnet: " + id);
    for (auto name : kPsychologicalCategories) {
      auto it = ann.psychological.find(std::string(name));
      if (it == ann.psychological.end()) {
        throw SchemaError(id + ": missing psychological label '" + std::string(name) + "'");
      }
      if (it->second != 0 && it->second != 1) {
        throw SchemaError(id + ": psychological label '" + std::string(name) + "' not in {0,1}");
      }
    }
    for (auto name : kScaledCategories) {
      auto it = ann.scaled.find(std::string(name));
      if (it == ann.scaled.end()) {
        throw SchemaError(id + ": missing scaled label '" + std::string(name) + "'");
      }
      if (it->second < 1 || it->second > 4) {
        throw SchemaError(id + ": scaled label '" + std::string(name) + "' not in 1..4");
      }
    }
    if (ann.psychological.size() != kPsychologicalCategories.size() ||
        ann.scaled.size() != kScaledCategories.size()) {
      throw SchemaError(id + ": unknown category name in annotations");
    }
  }
}

inline Corpus corpus_from_json(const nlohmann::json& j) {
  Corpus c;
  if (!j.is_object() || !j.contains("sonnets") || !j["sonnets"].is_array()) {
    throw SchemaError("corpus: missing 'sonnets' array");
  }
  for (const auto& js : j["sonnets"]) {
    Sonnet s;
    s.id = detail::required<std::string>(js, "id", "sonnet");
    const std::string where = "sonnet " + s.id;
    s.author = detail::required<std::string>(js, "author", where);
    s.period = detail::required<std::string>(js, "period", where);
    s.title = detail::required<std::string>(js, "title", where);
    s.source = parse_source(detail::required<std::string>(js, "source", where));
    s.stanzas = detail::required<std::vector<std::vector<std::string>>>(js, "stanzas", where);
    c.sonnets.push_back(std::move(s));
  }
  if (j.contains("annotations")) {
    const auto& ja = j["annotations"];
    if (!ja.is_object()) throw SchemaError("corpus: 'annotations' must be an object");
    for (const auto& [id, entry] : ja.items()) {
      AnnotationSet a;
      a.psychological = detail::required<std::map<std::string, int>>(entry, "psychological", id);
      a.scaled = detail::required<std::map<std::string, int>>(entry, "scaled", id);
      c.annotations.emplace(id, std::move(a));
    }
  }
  validate(c);
  return c;
}

inline nlohmann::json corpus_to_json(const Corpus& c) {
  nlohmann::json j;
  j["sonnets"] = nlohmann::json::array();
  for (const auto& s : c.sonnets) {
    j["sonnets"].push_back({{"id", s.id},
                            {"author", s.author},
                            {"period", s.period},
                            {"title", s.title},
                            {"source", to_string(s.source)},
                            {"stanzas", s.stanzas}});
  }
  j["annotations"] = nlohmann::json::object();
  for (const auto& [id, a] : c.annotations) {
    j["annotations"][id] = {{"psychological", a.psychological}, {"scaled", a.scaled}};
  }
  return j;
}

inline Corpus parse_corpus(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("corpus JSON: ") + e.what());
  }
  return corpus_from_json(j);
}

inline Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str());
}

inline void save_corpus(const Corpus& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write corpus file: " + path);
  out << corpus_to_json(c).dump(1) << '\n';
}

// Concatenates corpora (e.g. DISCO + annotated subset + extension). Ids must
// stay unique across the inputs.
inline Corpus merge_corpora(const std::vector<Corpus>& parts) {
  Corpus out;
  for (const auto& p : parts) {
    out.sonnets.insert(out.sonnets.end(), p.sonnets.begin(), p.sonnets.end());
    for (const auto& [id, a] : p.annotations) out.annotations.emplace(id, a);
  }
  validate(out);
  return out;
}

inline bool is_single_part(const Sonnet& s) {
  static constexpr std::array<std::size_t, 4> kShape = {4, 4, 3, 3};
  if (s.stanzas.size() != kShape.size()) return false;
  for (std::size_t i = 0; i < kShape.size(); ++i) {
    if (s.stanzas[i].size() != kShape[i]) return false;
  }
  return true;
}

// Keeps 14-line sonnets in the quartet/quartet/tercet/tercet layout.
inline Corpus filter_single_part(const Corpus& c) {
  Corpus out;
  for (const auto& s : c.sonnets) {
    if (!is_single_part(s)) continue;
    out.sonnets.push_back(s);
    if (auto it = c.annotations.find(s.id); it != c.annotations.end()) {
      out.annotations.emplace(it->first, it->second);
    }
  }
  return out;
}

struct CorpusStats {
  std::vector<std::size_t> words_with_stopwords;
  std::vector<std::size_t> words_without_stopwords;
  double mean_with = 0.0, std_with = 0.0;
  double mean_without = 0.0, std_without = 0.0;
  std::map<std::string, std::size_t> per_period;
};

namespace detail {

// Integer moment sums keep the result independent of sonnet order.
inline std::pair<double, double> mean_pop_std(const std::vector<std::size_t>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  unsigned long long sum = 0, sum_sq = 0;
  for (auto x : xs) {
    sum += x;
    sum_sq += static_cast<unsigned long long>(x) * x;
  }
  const auto n = static_cast<unsigned long long>(xs.size());
  const double mean = static_cast<double>(sum) / static_cast<double>(n);
  const double var = static_cast<double>(n * sum_sq - sum * sum) / static_cast<double>(n * n);
  return {mean, std::sqrt(var)};
}

}  // namespace detail

// Word counts per sonnet (histogram inputs) with population
// standard deviation, plus sonnet counts per period label.
inline CorpusStats corpus_stats(const Corpus& c, const StopwordSet& stopwords) {
  CorpusStats st;
  for (const auto& s : c.sonnets) {
    const auto tokens = tokenize(s.text());
    st.words_with_stopwords.push_back(tokens.size());
    st.words_without_stopwords.push_back(remove_stopwords(tokens, stopwords).size());
    ++st.per_period[s.period];
  }
  std::tie(st.mean_with, st.std_with) = detail::mean_pop_std(st.words_with_stopwords);
  std::tie(st.mean_without, st.std_without) = detail::mean_pop_std(st.words_without_stopwords);
  return st;
}

}  // namespace sonnetssl
