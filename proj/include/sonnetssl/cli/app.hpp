#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sonnetssl/cli/config.hpp"
#include "sonnetssl/corpus.hpp"
#include "sonnetssl/embeddings.hpp"
#include "sonnetssl/eval/benchmark.hpp"
#include "sonnetssl/eval/report.hpp"
#include "sonnetssl/lexicon.hpp"
#include "sonnetssl/text/preprocess.hpp"
#include "sonnetssl/text/stopwords.hpp"

namespace sonnetssl::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Fully resolved run configuration: config file, then --set overrides, then
// dedicated flags.
struct RunConfig {
  std::vector<std::string> corpus_paths;
  std::vector<std::string> lexicon_paths;
  std::vector<std::string> embedding_paths;
  std::string stopwords_path;  // empty = built-in list
  bool single_part_only = true;
  std::string output_dir = "out";
  bool svg = true;
  BenchmarkConfig bench;
};

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "data.corpus", "data.lexicons", "data.embeddings", "data.stopwords", "data.single_part_only",
      "grid.semantic_models", "grid.predictive_models", "grid.categories",
      "protocol.n_repeats", "protocol.n_per_value", "protocol.seed", "protocol.cv_mode", "protocol.use_gam",
      "protocol.baselines", "protocol.variant_no_gam", "protocol.variant_disco_only", "protocol.jobs",
      "gbdt.n_trees", "gbdt.learning_rate", "gbdt.max_leaves", "gbdt.min_samples_leaf", "gbdt.max_bins",
      "gbdt.min_sum_hessian", "gbdt.lambda_l2",
      "spreading.alpha", "spreading.knn_k", "spreading.rbf_gamma", "spreading.max_iter", "spreading.tol",
      "spreading.reached_rows_only",
      "self_training.threshold", "self_training.max_iter",
      "smote.k",
      "output.dir", "output.svg"};
  return keys;
}

inline RunConfig resolve_config(const ConfigFile& f) {
  for (const auto& [key, value] : f.values()) {
    if (!known_keys().contains(key)) throw ConfigError("unknown config key: " + key);
  }
  RunConfig rc;
  auto paths = [&](const std::string& key) {
    std::vector<std::string> out;
    for (const auto& p : f.get_list(key)) out.push_back(f.resolve_path(p));
    return out;
  };
  rc.corpus_paths = paths("data.corpus");
  rc.lexicon_paths = paths("data.lexicons");
  rc.embedding_paths = paths("data.embeddings");
  rc.stopwords_path = f.resolve_path(f.get_string("data.stopwords", ""));
  rc.single_part_only = f.get_bool("data.single_part_only", true);
  // Without a config value the output lands in ./out of the working directory.
  rc.output_dir = f.has("output.dir") ? f.resolve_path(f.get_string("output.dir", "")) : "out";
  rc.svg = f.get_bool("output.svg", true);

  auto& b = rc.bench;
  b.semantic_models = f.get_list("grid.semantic_models");
  b.predictive_models = f.get_list("grid.predictive_models", b.predictive_models);
  b.categories = f.get_list("grid.categories");
  b.n_repeats = static_cast<int>(f.get_int("protocol.n_repeats", b.n_repeats));
  b.n_per_value = static_cast<int>(f.get_int("protocol.n_per_value", b.n_per_value));
  b.seed = static_cast<std::uint64_t>(f.get_int("protocol.seed", static_cast<long long>(b.seed)));
  const auto mode = f.get_string("protocol.cv_mode", "union");
  if (mode == "union") b.cv_mode = CvMode::kUnion;
  else if (mode == "per_category") b.cv_mode = CvMode::kPerCategory;
  else throw ConfigError("protocol.cv_mode must be union or per_category");
  b.use_gam = f.get_bool("protocol.use_gam", b.use_gam);
  b.baselines = f.get_bool("protocol.baselines", b.baselines);
  b.variant_no_gam = f.get_bool("protocol.variant_no_gam", b.variant_no_gam);
  b.variant_disco_only = f.get_bool("protocol.variant_disco_only", b.variant_disco_only);
  b.jobs = static_cast<int>(f.get_int("protocol.jobs", b.jobs));
  b.gbdt.n_trees = static_cast<int>(f.get_int("gbdt.n_trees", b.gbdt.n_trees));
  b.gbdt.learning_rate = f.get_double("gbdt.learning_rate", b.gbdt.learning_rate);
  b.gbdt.max_leaves = static_cast<int>(f.get_int("gbdt.max_leaves", b.gbdt.max_leaves));
  b.gbdt.min_samples_leaf = static_cast<int>(f.get_int("gbdt.min_samples_leaf", b.gbdt.min_samples_leaf));
  b.gbdt.max_bins = static_cast<int>(f.get_int("gbdt.max_bins", b.gbdt.max_bins));
  b.gbdt.min_sum_hessian = f.get_double("gbdt.min_sum_hessian", b.gbdt.min_sum_hessian);
  b.gbdt.lambda_l2 = f.get_double("gbdt.lambda_l2", b.gbdt.lambda_l2);
  b.alpha = f.get_double("spreading.alpha", b.alpha);
  b.knn_k = static_cast<int>(f.get_int("spreading.knn_k", b.knn_k));
  b.rbf_gamma = f.get_double("spreading.rbf_gamma", b.rbf_gamma);
  b.spread_max_iter = static_cast<int>(f.get_int("spreading.max_iter", b.spread_max_iter));
  b.spread_tol = f.get_double("spreading.tol", b.spread_tol);
  b.reached_rows_only = f.get_bool("spreading.reached_rows_only", b.reached_rows_only);
  b.self_train.threshold = f.get_double("self_training.threshold", b.self_train.threshold);
  b.self_train.max_iter = static_cast<int>(f.get_int("self_training.max_iter", b.self_train.max_iter));
  b.smote_k = static_cast<int>(f.get_int("smote.k", b.smote_k));
  return rc;
}

inline nlohmann::json to_json(const RunConfig& rc) {
  return {{"data",
           {{"corpus", rc.corpus_paths},
            {"lexicons", rc.lexicon_paths},
            {"embeddings", rc.embedding_paths},
            {"stopwords", rc.stopwords_path},
            {"single_part_only", rc.single_part_only}}},
          {"benchmark", to_json(rc.bench)}};
}

inline void require_paths(const std::vector<std::string>& paths, std::string_view what) {
  if (paths.empty()) throw ConfigError(std::string("no ") + std::string(what) + " configured");
  for (const auto& p : paths) {
    if (!fs::exists(p)) throw ConfigError(std::string(what) + " not found: " + p);
  }
}

// ---------------------------------------------------------------------------
// Loading.

inline Corpus load_corpora(const RunConfig& rc) {
  require_paths(rc.corpus_paths, "corpus file");
  std::vector<Corpus> parts;
  for (const auto& p : rc.corpus_paths) parts.push_back(load_corpus(p));
  Corpus c = merge_corpora(parts);
  return rc.single_part_only ? filter_single_part(c) : c;
}

inline StopwordSet load_stoplist(const RunConfig& rc) {
  if (rc.stopwords_path.empty()) return default_stopwords();
  if (!fs::exists(rc.stopwords_path)) throw ConfigError("stopword file not found: " + rc.stopwords_path);
  return load_stopwords(rc.stopwords_path);
}

inline MergedLexicon load_lexicons(const RunConfig& rc) {
  require_paths(rc.lexicon_paths, "lexicon file");
  std::vector<LexiconTable> tables;
  for (const auto& p : rc.lexicon_paths) tables.push_back(load_lexicon_csv(p));
  return merge_lexicons(tables);
}

// Sentence files are read as-is; token files are pooled with the lexicon
// weights. The lexicon is loaded lazily, only if a token file shows up.
inline std::vector<SentenceEmbeddingStore> load_semantic(const RunConfig& rc,
                                                         std::optional<MergedLexicon>& lex) {
  require_paths(rc.embedding_paths, "embedding file");
  std::vector<SentenceEmbeddingStore> out;
  for (const auto& p : rc.embedding_paths) {
    if (read_embedding_header(p).level == EmbeddingLevel::kSentence) {
      out.push_back(read_sentence_embeddings(p));
      continue;
    }
    if (!lex) lex = load_lexicons(rc);
    out.push_back(pool_token_store(read_token_embeddings(p), normalize_lexicon(*lex)));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (out[i].model_name == out[j].model_name) {
        throw ConfigError("two embedding files name the same model: " + out[i].model_name);
      }
    }
  }
  return out;
}

inline GamTable gam_table(const Corpus& corpus, const StopwordSet& stop, const MergedLexicon& lex) {
  GamTable gam;
  for (const auto& p : preprocess_all(corpus, stop)) gam.emplace(p.id, extract_features(p, lex));
  return gam;
}

inline BenchmarkData load_benchmark_data(const RunConfig& rc) {
  BenchmarkData data;
  data.corpus = load_corpora(rc);
  std::optional<MergedLexicon> lex;
  if (rc.bench.use_gam) lex = load_lexicons(rc);
  data.semantic = load_semantic(rc, lex);
  if (rc.bench.use_gam) data.gam = gam_table(data.corpus, load_stoplist(rc), *lex);
  return data;
}

// ---------------------------------------------------------------------------
// Subcommands.

inline std::string num(double x) { return nlohmann::json(x).dump(); }

inline void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  write_text(path, text);
}

inline int cmd_preprocess(const RunConfig& rc, std::ostream& out) {
  const Corpus corpus = load_corpora(rc);
  std::string text;
  for (const auto& p : preprocess_all(corpus, load_stoplist(rc))) {
    nlohmann::json toks = nlohmann::json::array();
    for (const auto& t : p.tokens) toks.push_back({{"surface", t.surface}, {"stem", t.stem}, {"position", t.position}});
    text += nlohmann::json{{"id", p.id}, {"tokens", toks}}.dump() + "\n";
  }
  const auto path = fs::path(rc.output_dir) / "processed.jsonl";
  write_file(path, text);
  out << path.string() << "\n";
  return kExitOk;
}

inline int cmd_features(const RunConfig& rc, std::ostream& out) {
  const Corpus corpus = load_corpora(rc);
  const GamTable gam = gam_table(corpus, load_stoplist(rc), load_lexicons(rc));
  std::string text = "id,token_count,matched_count";
  for (auto n : kGamFeatureNames) text += "," + std::string(n);
  text += "\n";
  for (const auto& s : corpus.sonnets) {
    const auto& f = gam.at(s.id);
    text += report_detail::csv_field(s.id) + "," + std::to_string(f.token_count) + "," +
            std::to_string(f.matched_count);
    for (double v : f.values) text += "," + num(v);
    text += "\n";
  }
  const auto path = fs::path(rc.output_dir) / "features.csv";
  write_file(path, text);
  out << path.string() << "\n";
  return kExitOk;
}

inline int cmd_pool(const RunConfig& rc, std::ostream& out) {
  require_paths(rc.embedding_paths, "embedding file");
  const WordWeights weights = normalize_lexicon(load_lexicons(rc));
  for (const auto& p : rc.embedding_paths) {
    if (read_embedding_header(p).level != EmbeddingLevel::kToken) {
      throw ConfigError("pool expects token-level embedding files: " + p);
    }
    const auto pooled = pool_token_store(read_token_embeddings(p), weights);
    const auto path = fs::path(rc.output_dir) / (file_stem(pooled.model_name) + ".pooled.jsonl");
    write_file(path, serialize(pooled));
    out << path.string() << "\n";
  }
  return kExitOk;
}

inline int cmd_coverage(const RunConfig& rc, const std::string& mode, std::ostream& out) {
  CoverageWeighting w;
  if (mode == "types") w = CoverageWeighting::kTypes;
  else if (mode == "tokens") w = CoverageWeighting::kTokens;
  else throw ConfigError("--mode must be types or tokens");
  out << num(coverage(load_corpora(rc), load_lexicons(rc), load_stoplist(rc), w)) << "\n";
  return kExitOk;
}

inline std::string bundle_name(const std::string& category, const std::string& semantic, const std::string& model) {
  return file_stem(category) + "__" + file_stem(semantic) + "__" + model;
}

// Trains one bundle per category on every annotated sonnet; the rest of the
// corpus is the unlabeled pool.
inline int cmd_train(const RunConfig& rc, std::string model, std::string semantic, std::ostream& out) {
  const BenchmarkData data = load_benchmark_data(rc);
  if (model.empty()) {
    if (rc.bench.predictive_models.empty()) throw ConfigError("no predictive model given");
    model = rc.bench.predictive_models.front();
  }
  const bool baseline = model == kBaselineModel || model == kBaselineSmoteModel;
  if (!baseline && !is_predictive_model(model)) throw ConfigError("unknown model: " + model);
  if (semantic.empty()) semantic = rc.bench.semantic_models.empty() ? data.semantic.front().model_name
                                                                      : rc.bench.semantic_models.front();
  const auto store = std::find_if(data.semantic.begin(), data.semantic.end(),
                                  [&](const auto& s) { return s.model_name == semantic; });
  if (store == data.semantic.end()) throw ConfigError("no embedding store for semantic model " + semantic);

  std::vector<std::string> cats = rc.bench.categories;
  if (cats.empty()) {
    for (const auto& c : all_categories()) cats.push_back(c.qualified());
  }
  const auto annotated = data.corpus.annotated_ids();
  for (std::size_t ci = 0; ci < cats.size(); ++ci) {
    CellTask task;
    task.category = cats[ci];
    task.predictive_model = model;
    task.variant = model == kBaselineModel        ? Variant::kBaseline
                   : model == kBaselineSmoteModel ? Variant::kBaselineSmote
                                                  : Variant::kFull;
    task.train_ids.insert(annotated.begin(), annotated.end());
    task.seed = derive_seed(rc.bench.seed, ci);
    const FittedCell fit = fit_cell_model(data, *store, rc.bench, task);
    const auto* gbdt = dynamic_cast<const GbdtClassifier*>(fit.model.get());
    if (gbdt == nullptr) throw Error("train: unexpected model type");

    const fs::path dir = fs::path(rc.output_dir) / "models" / bundle_name(task.category, semantic, model);
    nlohmann::json scaling = nlohmann::json::array();
    for (const auto& s : fit.dm.scaling_stats) scaling.push_back({{"mean", s.mean}, {"sd", s.sd}});
    nlohmann::json snapshot = {{"category", task.category},
                               {"semantic_model", semantic},
                               {"predictive_model", model},
                               {"seed", task.seed},
                               {"use_gam", rc.bench.use_gam},
                               {"embedding_dim", fit.dm.embedding_dim},
                               {"n_labeled", fit.n_labeled},
                               {"run_config", to_json(rc)}};
    write_file(dir / "model.json", to_json(gbdt->model()).dump() + "\n");
    write_file(dir / "scaling.json", scaling.dump(2) + "\n");
    write_file(dir / "config.json", snapshot.dump(2) + "\n");
    out << dir.string() << "\n";
  }
  return kExitOk;
}

inline nlohmann::json read_json(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot read " + path.string());
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

// Applies saved bundles to a (possibly new) corpus. Lexicons and stopwords
// come from each bundle's snapshot so features match training.
inline int cmd_predict(const RunConfig& rc, const std::vector<std::string>& bundles, std::ostream& out) {
  if (bundles.empty()) throw ConfigError("predict needs at least one --bundle");
  const Corpus corpus = load_corpora(rc);
  std::string text = "id,category,semantic_model,predictive_model,predicted,class,probability\n";
  for (const auto& b : bundles) {
    const fs::path dir(b);
    if (!fs::exists(dir / "config.json")) throw ConfigError("not a model bundle: " + b);
    const auto snap = read_json(dir / "config.json");
    const GbdtModel model = gbdt_from_json(read_json(dir / "model.json"));
    std::vector<FeatureScaling> scaling;
    for (const auto& s : read_json(dir / "scaling.json")) scaling.push_back({s.at("mean"), s.at("sd")});

    RunConfig trained = rc;
    const auto& data_cfg = snap.at("run_config").at("data");
    trained.lexicon_paths = data_cfg.at("lexicons").get<std::vector<std::string>>();
    trained.stopwords_path = data_cfg.at("stopwords").get<std::string>();
    const bool use_gam = snap.at("use_gam").get<bool>();
    const std::string semantic = snap.at("semantic_model");
    const std::string category = snap.at("category");

    std::optional<MergedLexicon> lex;
    if (use_gam) lex = load_lexicons(trained);
    const auto stores = load_semantic(trained, lex);
    const auto store = std::find_if(stores.begin(), stores.end(),
                                    [&](const auto& s) { return s.model_name == semantic; });
    if (store == stores.end()) throw ConfigError("no embeddings for " + semantic + " among the given files");
    GamTable gam;
    if (use_gam) gam = gam_table(corpus, load_stoplist(trained), *lex);
    std::vector<std::string> ids;
    for (const auto& s : corpus.sonnets) ids.push_back(s.id);
    const auto dm = assemble_design_matrix(ids, *store, use_gam ? &gam : nullptr, {}, use_gam ? &scaling : nullptr);
    const Matrix proba = gbdt_predict_proba(model, dm.X);
    for (std::size_t r = 0; r < ids.size(); ++r) {
      const int predicted = model.classes[argmax(proba.row(r))];
      for (std::size_t k = 0; k < model.classes.size(); ++k) {
        text += report_detail::csv_field(ids[r]) + "," + category + "," + report_detail::csv_field(semantic) + "," +
                snap.at("predictive_model").get<std::string>() + "," + std::to_string(predicted) + "," +
                std::to_string(model.classes[k]) + "," + num(proba(r, k)) + "\n";
      }
    }
  }
  const auto path = fs::path(rc.output_dir) / "predictions.csv";
  write_file(path, text);
  out << path.string() << "\n";
  return kExitOk;
}

inline int cmd_benchmark(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  rc.bench.validate();
  const BenchmarkData data = load_benchmark_data(rc);
  BenchmarkReport rep = run_benchmark(data, rc.bench);
  rep.config = to_json(rc);
  rep.config["seed"] = rc.bench.seed;
  write_report(rep, rc.output_dir, rc.svg);
  for (const auto& w : rep.warnings) err << "warning: " << w << "\n";
  if (!rep.failures.empty()) err << rep.failures.size() << " cell(s) failed; see report.json\n";
  out << (fs::path(rc.output_dir) / "report.json").string() << "\n";
  return kExitOk;
}

inline int cmd_report(const RunConfig& rc, const std::string& input, std::ostream& out) {
  const fs::path in = input.empty() ? fs::path(rc.output_dir) / "report.json" : fs::path(input);
  if (!fs::exists(in)) throw ConfigError("report input not found: " + in.string());
  const BenchmarkReport rep = report_from_json(read_json(in));
  const fs::path dir(rc.output_dir);
  fs::create_directories(dir);
  write_text(dir / "records.csv", records_csv(rep));
  write_text(dir / "aggregates.csv", aggregates_csv(rep));
  if (rc.svg) {
    for (const auto& c : rep.categories) write_text(dir / ("boxplot_" + file_stem(c) + ".svg"), svg_boxplot(rep, c));
  }
  for (const auto& b : rep.best) {
    out << b.category << "\t" << b.semantic_model << "\t" << b.predictive_model << "\tauc=" << num(b.auc) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Semi-supervised affective classification of Spanish sonnets", "sonnetssl"};
  app.require_subcommand(1);

  struct Common {
    std::string config;
    std::vector<std::string> set;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::string out;
    std::vector<std::string> corpus, lexicons, embeddings, categories;
    std::string stopwords;
  } c;
  std::string mode = "types", model, semantic, input;
  std::vector<std::string> bundles;

  auto common = [&](CLI::App* sub, bool data_flags = true) {
    sub->add_option("--config", c.config, "Config file (TOML subset)");
    sub->add_option("--set", c.set, "Override a config key: section.key=value");
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--out", c.out, "Output directory");
    if (!data_flags) return;
    sub->add_option("--corpus", c.corpus, "Corpus JSON file(s)");
    sub->add_option("--lexicon", c.lexicons, "Lexicon CSV file(s)");
    sub->add_option("--stopwords", c.stopwords, "Stopword list file");
  };
  auto* preprocess = app.add_subcommand("preprocess", "Tokenize, drop stopwords and stem the corpus");
  common(preprocess);
  auto* features = app.add_subcommand("features", "Write the 32 lexicon features per sonnet");
  common(features);
  auto* pool = app.add_subcommand("pool", "Affective-weighted pooling of token embeddings");
  common(pool);
  pool->add_option("--tokens", c.embeddings, "Token-level embedding file(s)");
  auto* cov = app.add_subcommand("coverage", "Share of corpus stems found in the lexicon");
  common(cov);
  cov->add_option("--mode", mode, "types or tokens")->check(CLI::IsMember({"types", "tokens"}));
  auto* train = app.add_subcommand("train", "Train model bundles on the annotated sonnets");
  common(train);
  train->add_option("--embeddings", c.embeddings, "Embedding file(s)");
  train->add_option("--category", c.categories, "Qualified category, e.g. scaled/fear");
  train->add_option("--model", model, "Predictive model, e.g. LS-GBDT-RBF");
  train->add_option("--semantic", semantic, "Semantic model name");
  auto* predict = app.add_subcommand("predict", "Apply model bundles to a corpus");
  common(predict);
  predict->add_option("--embeddings", c.embeddings, "Embedding file(s) covering the corpus");
  predict->add_option("--bundle", bundles, "Model bundle directory")->required();
  auto* bench = app.add_subcommand("benchmark", "Run the repeated random-CV benchmark");
  common(bench);
  bench->add_option("--embeddings", c.embeddings, "Embedding file(s)");
  bench->add_option("--category", c.categories, "Restrict to these categories");
  bench->add_option("--jobs", c.jobs, "Parallel cells")->check(CLI::NonNegativeNumber);
  auto* report = app.add_subcommand("report", "Re-emit CSV and SVG from a report.json");
  common(report, false);
  report->add_option("--input", input, "report.json (default: <out>/report.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    ConfigFile file = c.config.empty() ? ConfigFile{} : ConfigFile::load(c.config);
    for (const auto& s : c.set) file.set(s);
    RunConfig rc = resolve_config(file);
    auto absolute = [](const std::vector<std::string>& ps) {
      std::vector<std::string> outp;
      for (const auto& p : ps) outp.push_back(fs::absolute(p).lexically_normal().string());
      return outp;
    };
    if (!c.corpus.empty()) rc.corpus_paths = absolute(c.corpus);
    if (!c.lexicons.empty()) rc.lexicon_paths = absolute(c.lexicons);
    if (!c.embeddings.empty()) rc.embedding_paths = absolute(c.embeddings);
    if (!c.stopwords.empty()) rc.stopwords_path = fs::absolute(c.stopwords).lexically_normal().string();
    if (!c.categories.empty()) rc.bench.categories = c.categories;
    if (!c.out.empty()) rc.output_dir = c.out;
    if (c.seed) rc.bench.seed = *c.seed;
    if (c.jobs) rc.bench.jobs = *c.jobs;

    if (preprocess->parsed()) return cmd_preprocess(rc, out);
    if (features->parsed()) return cmd_features(rc, out);
    if (pool->parsed()) return cmd_pool(rc, out);
    if (cov->parsed()) return cmd_coverage(rc, mode, out);
    if (train->parsed()) return cmd_train(rc, model, semantic, out);
    if (predict->parsed()) return cmd_predict(rc, bundles, out);
    if (bench->parsed()) return cmd_benchmark(rc, out, err);
    if (report->parsed()) return cmd_report(rc, input, out);
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace sonnetssl::cli
