#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sonnetssl/core/error.hpp"
#include "sonnetssl/core/matrix.hpp"
#include "sonnetssl/corpus.hpp"
#include "sonnetssl/lexicon.hpp"

namespace sonnetssl {

enum class EmbeddingLevel { kSentence, kToken };

struct SentenceEmbeddingStore {
  std::string model_name;
  std::size_t dim = 0;
  std::vector<std::string> ids;  // file order
  std::map<std::string, std::vector<double>> vectors;

  const std::vector<double>* find(const std::string& id) const {
    auto it = vectors.find(id);
    return it == vectors.end() ? nullptr : &it->second;
  }
  void add(std::string id, std::vector<double> v) {
    if (dim == 0 && vectors.empty()) dim = v.size();
    if (v.size() != dim) throw ShapeError(model_name + ": vector for '" + id + "' has wrong length");
    if (!vectors.emplace(id, std::move(v)).second) {
      throw DuplicateIdError(model_name + ": duplicate embedding id " + id);
    }
    ids.push_back(std::move(id));
  }

  friend bool operator==(const SentenceEmbeddingStore&, const SentenceEmbeddingStore&) = default;
};

struct TokenVector {
  std::string token;
  std::vector<double> vector;

  friend bool operator==(const TokenVector&, const TokenVector&) = default;
};

struct TokenEmbeddingStore {
  std::string model_name;
  std::size_t dim = 0;
  std::vector<std::string> ids;
  std::map<std::string, std::vector<TokenVector>> vectors;

  void add(std::string id, std::vector<TokenVector> tokens) {
    for (const auto& t : tokens) {
      if (t.vector.size() != dim) {
        throw ShapeError(model_name + ": token vector for '" + id + "' has wrong length");
      }
    }
    if (!vectors.emplace(id, std::move(tokens)).second) {
      throw DuplicateIdError(model_name + ": duplicate embedding id " + id);
    }
    ids.push_back(std::move(id));
  }

  friend bool operator==(const TokenEmbeddingStore&, const TokenEmbeddingStore&) = default;
};

// ---------------------------------------------------------------------------
// JSON Lines I/O. First line is a header, then one record per sonnet.

struct EmbeddingHeader {
  std::string model;
  EmbeddingLevel level = EmbeddingLevel::kSentence;
  std::size_t dim = 0;
};

namespace detail {

inline std::string read_file(const std::string& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + std::string(what) + ": " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline nlohmann::json parse_json_line(const std::string& line, std::size_t line_no) {
  try {
    return nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("embedding file line " + std::to_string(line_no) + ": " + e.what());
  }
}

inline std::vector<double> read_vector(const nlohmann::json& j, std::size_t dim,
                                       const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": vector must be an array");
  if (j.size() != dim) {
    throw SchemaError(where + ": vector length " + std::to_string(j.size()) +
                      " does not match header dim " + std::to_string(dim));
  }
  std::vector<double> v;
  v.reserve(dim);
  for (const auto& x : j) {
    if (!x.is_number()) throw SchemaError(where + ": non-numeric vector entry");
    v.push_back(x.get<double>());
  }
  return v;
}

inline EmbeddingHeader parse_header(const nlohmann::json& h) {
  EmbeddingHeader out;
  out.model = required<std::string>(h, "model", "embedding header");
  const auto level = required<std::string>(h, "level", "embedding header");
  if (level == "sentence") out.level = EmbeddingLevel::kSentence;
  else if (level == "token") out.level = EmbeddingLevel::kToken;
  else throw SchemaError("embedding header: unknown level '" + level + "'");
  const auto dim = required<long long>(h, "dim", "embedding header");
  if (dim <= 0) throw SchemaError("embedding header: dim must be positive");
  out.dim = static_cast<std::size_t>(dim);
  return out;
}

template <typename Fn>
EmbeddingHeader for_each_record(std::string_view text, Fn&& fn) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<EmbeddingHeader> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto j = parse_json_line(line, line_no);
    if (!header) {
      header = parse_header(j);
      continue;
    }
    fn(*header, j);
  }
  if (!header) throw ParseError("embedding file is empty");
  return *header;
}

inline std::string dump_line(const nlohmann::json& j) { return j.dump() + "\n"; }

}  // namespace detail

inline EmbeddingHeader parse_embedding_header(std::string_view text) {
  const auto nl = text.find('\n');
  std::string first(text.substr(0, nl));
  if (!first.empty() && first.back() == '\r') first.pop_back();
  return detail::parse_header(detail::parse_json_line(first, 1));
}

inline SentenceEmbeddingStore parse_sentence_embeddings(std::string_view text) {
  SentenceEmbeddingStore store;
  const auto header = detail::for_each_record(text, [&](const EmbeddingHeader& h, const nlohmann::json& j) {
    if (h.level != EmbeddingLevel::kSentence) {
      throw SchemaError("expected a sentence-level embedding file");
    }
    if (store.model_name.empty()) {
      store.model_name = h.model;
      store.dim = h.dim;
    }
    auto id = detail::required<std::string>(j, "id", "embedding record");
    if (!j.contains("vector")) throw SchemaError("embedding record " + id + ": missing 'vector'");
    store.add(id, detail::read_vector(j["vector"], h.dim, "embedding record " + id));
  });
  if (header.level != EmbeddingLevel::kSentence) {
    throw SchemaError("expected a sentence-level embedding file");
  }
  store.model_name = header.model;
  store.dim = header.dim;
  return store;
}

inline TokenEmbeddingStore parse_token_embeddings(std::string_view text) {
  TokenEmbeddingStore store;
  const auto header = detail::for_each_record(text, [&](const EmbeddingHeader& h, const nlohmann::json& j) {
    if (h.level != EmbeddingLevel::kToken) throw SchemaError("expected a token-level embedding file");
    store.model_name = h.model;
    store.dim = h.dim;
    auto id = detail::required<std::string>(j, "id", "embedding record");
    if (!j.contains("tokens") || !j["tokens"].is_array()) {
      throw SchemaError("embedding record " + id + ": missing 'tokens'");
    }
    std::vector<TokenVector> toks;
    for (const auto& jt : j["tokens"]) {
      TokenVector tv;
      tv.token = detail::required<std::string>(jt, "t", "token record in " + id);
      if (!jt.contains("v")) throw SchemaError("token record in " + id + ": missing 'v'");
      tv.vector = detail::read_vector(jt["v"], h.dim, "token record in " + id);
      toks.push_back(std::move(tv));
    }
    store.add(id, std::move(toks));
  });
  if (header.level != EmbeddingLevel::kToken) throw SchemaError("expected a token-level embedding file");
  store.model_name = header.model;
  store.dim = header.dim;
  return store;
}

// nlohmann/json prints doubles with the shortest representation that parses
// back to the same bits, so write -> read is exact.
inline std::string serialize(const SentenceEmbeddingStore& s) {
  std::string out = detail::dump_line({{"model", s.model_name}, {"level", "sentence"}, {"dim", s.dim}});
  for (const auto& id : s.ids) {
    out += detail::dump_line({{"id", id}, {"vector", s.vectors.at(id)}});
  }
  return out;
}

inline std::string serialize(const TokenEmbeddingStore& s) {
  std::string out = detail::dump_line({{"model", s.model_name}, {"level", "token"}, {"dim", s.dim}});
  for (const auto& id : s.ids) {
    nlohmann::json toks = nlohmann::json::array();
    for (const auto& t : s.vectors.at(id)) toks.push_back({{"t", t.token}, {"v", t.vector}});
    out += detail::dump_line({{"id", id}, {"tokens", std::move(toks)}});
  }
  return out;
}

template <typename Store>
void write_embeddings(const Store& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write embedding file: " + path);
  out << serialize(s);
}

inline EmbeddingHeader read_embedding_header(const std::string& path) {
  return parse_embedding_header(detail::read_file(path, "embedding file"));
}
inline SentenceEmbeddingStore read_sentence_embeddings(const std::string& path) {
  return parse_sentence_embeddings(detail::read_file(path, "embedding file"));
}
inline TokenEmbeddingStore read_token_embeddings(const std::string& path) {
  return parse_token_embeddings(detail::read_file(path, "embedding file"));
}

// ---------------------------------------------------------------------------
// Affective-weighted pooling.

using WordWeights = std::map<std::string, double>;

// Min-max scales each mean dimension over the lexicon and gives every stem
// the largest of its scaled values. A dimension that is constant across the
// lexicon scales to 0.
inline WordWeights normalize_lexicon(const MergedLexicon& lex) {
  if (lex.empty()) throw EmptyLexiconError("normalize_lexicon: lexicon is empty");
  std::array<double, kNumDimensions> lo, hi;
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const auto& [stem, e] : lex.entries()) {
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      if (!e.mean[d]) continue;
      lo[d] = std::min(lo[d], *e.mean[d]);
      hi[d] = std::max(hi[d], *e.mean[d]);
    }
  }
  WordWeights w;
  for (const auto& [stem, e] : lex.entries()) {
    double best = 0.0;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      if (!e.mean[d] || hi[d] <= lo[d]) continue;
      best = std::max(best, (*e.mean[d] - lo[d]) / (hi[d] - lo[d]));
    }
    w.emplace(stem, best);
  }
  return w;
}

// sum_k v(k) * w(k) / N over all N tokens; tokens missing from the weight
// table contribute nothing but still count in N.
inline std::vector<double> affective_weighted_pool(const std::vector<TokenVector>& tokens,
                                                   const WordWeights& weights,
                                                   const StemFn& stemmer = SpanishStemmer{}) {
  if (tokens.empty()) throw EmptyTokenListError("affective_weighted_pool: no tokens");
  std::vector<double> out(tokens.front().vector.size(), 0.0);
  for (const auto& t : tokens) {
    if (t.vector.size() != out.size()) throw ShapeError("affective_weighted_pool: ragged vectors");
    const auto it = weights.find(stemmer(utf8::to_lower(t.token)));
    const double w = it == weights.end() ? 0.0 : it->second;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t.vector[i] * w;
  }
  const auto n = static_cast<double>(tokens.size());
  for (auto& x : out) x /= n;
  return out;
}

// Pools every sonnet of a token store into a sentence store named after the
// source model. Sonnets without tokens get a zero vector.
inline SentenceEmbeddingStore pool_token_store(const TokenEmbeddingStore& tokens,
                                               const WordWeights& weights,
                                               const StemFn& stemmer = SpanishStemmer{}) {
  SentenceEmbeddingStore out;
  out.model_name = tokens.model_name;
  out.dim = tokens.dim;
  for (const auto& id : tokens.ids) {
    const auto& toks = tokens.vectors.at(id);
    out.add(id, toks.empty() ? std::vector<double>(tokens.dim, 0.0)
                             : affective_weighted_pool(toks, weights, stemmer));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Design matrices.

struct FeatureScaling {
  double mean = 0.0;
  double sd = 0.0;  // population sd over the fitting rows; 0 => column zeroed

  double apply(double x) const { return sd > 0.0 ? (x - mean) / sd : 0.0; }

  friend bool operator==(const FeatureScaling&, const FeatureScaling&) = default;
};

struct DesignMatrix {
  std::vector<std::string> ids;
  Matrix X;
  std::vector<std::string> feature_names;
  std::vector<FeatureScaling> scaling_stats;  // one per GAM column, empty when GAM is off
  std::size_t embedding_dim = 0;

  std::size_t row_of(const std::string& id) const {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] == id) return i;
    }
    throw MissingEmbeddingError("design matrix has no row for " + id);
  }
};

using GamTable = std::map<std::string, GamFeatureVector>;

inline std::vector<FeatureScaling> fit_scaling(const GamTable& gam, const std::set<std::string>& fit_ids) {
  std::vector<FeatureScaling> stats(kNumGamFeatures);
  std::size_t n = 0;
  std::array<double, kNumGamFeatures> sum{};
  // std::set iteration is sorted, so the accumulation order (and the
  // resulting bits) does not depend on row order.
  for (const auto& id : fit_ids) {
    auto it = gam.find(id);
    if (it == gam.end()) throw MissingEmbeddingError("no GAM features for fitting id " + id);
    for (std::size_t f = 0; f < kNumGamFeatures; ++f) sum[f] += it->second.values[f];
    ++n;
  }
  if (n == 0) return stats;
  for (std::size_t f = 0; f < kNumGamFeatures; ++f) stats[f].mean = sum[f] / static_cast<double>(n);
  std::array<double, kNumGamFeatures> ss{};
  for (const auto& id : fit_ids) {
    const auto& v = gam.at(id).values;
    for (std::size_t f = 0; f < kNumGamFeatures; ++f) {
      const double d = v[f] - stats[f].mean;
      ss[f] += d * d;
    }
  }
  for (std::size_t f = 0; f < kNumGamFeatures; ++f) {
    const double sd = std::sqrt(ss[f] / static_cast<double>(n));
    // Relative threshold: treat round-off-level spread of a constant column as zero.
    stats[f].sd = sd > 1e-12 * std::max(1.0, std::abs(stats[f].mean)) ? sd : 0.0;
  }
  return stats;
}

// Builds [embedding | standardized GAM] rows for ids in the given order. The
// GAM scaling is fitted on fit_ids only, unless explicit statistics are
// supplied (prediction with a saved model).
inline DesignMatrix assemble_design_matrix(const std::vector<std::string>& ids,
                                           const SentenceEmbeddingStore& store,
                                           const GamTable* gam,
                                           const std::set<std::string>& fit_ids,
                                           const std::vector<FeatureScaling>* fixed_scaling = nullptr) {
  std::vector<std::string> missing;
  for (const auto& id : ids) {
    if (store.find(id) == nullptr) missing.push_back(id);
  }
  if (!missing.empty()) {
    std::string msg = store.model_name + ": missing embeddings for";
    for (const auto& id : missing) msg += " " + id;
    throw MissingEmbeddingError(msg);
  }

  DesignMatrix dm;
  dm.ids = ids;
  dm.embedding_dim = store.dim;
  for (std::size_t i = 0; i < store.dim; ++i) dm.feature_names.push_back("emb_" + std::to_string(i));
  std::size_t cols = store.dim;
  if (gam != nullptr) {
    for (auto n : kGamFeatureNames) dm.feature_names.emplace_back(n);
    cols += kNumGamFeatures;
    if (fixed_scaling != nullptr) {
      if (fixed_scaling->size() != kNumGamFeatures) throw ShapeError("scaling stats must have 32 entries");
      dm.scaling_stats = *fixed_scaling;
    } else {
      dm.scaling_stats = fit_scaling(*gam, fit_ids);
    }
  }

  dm.X = Matrix(ids.size(), cols);
  for (std::size_t r = 0; r < ids.size(); ++r) {
    auto row = dm.X.row(r);
    const auto& v = *store.find(ids[r]);
    std::copy(v.begin(), v.end(), row.begin());
    if (gam == nullptr) continue;
    auto it = gam->find(ids[r]);
    if (it == gam->end()) throw MissingEmbeddingError("no GAM features for " + ids[r]);
    for (std::size_t f = 0; f < kNumGamFeatures; ++f) {
      row[store.dim + f] = dm.scaling_stats[f].apply(it->second.values[f]);
    }
  }
  return dm;
}

inline DesignMatrix assemble_design_matrix(const Corpus& corpus, const SentenceEmbeddingStore& store,
                                           const GamTable* gam, const std::set<std::string>& fit_ids) {
  std::vector<std::string> ids;
  for (const auto& s : corpus.sonnets) ids.push_back(s.id);
  return assemble_design_matrix(ids, store, gam, fit_ids);
}

}  // namespace sonnetssl
