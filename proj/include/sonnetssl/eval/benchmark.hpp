#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "sonnetssl/core/error.hpp"
#include "sonnetssl/core/random.hpp"
#include "sonnetssl/corpus.hpp"
#include "sonnetssl/embeddings.hpp"
#include "sonnetssl/eval/cv.hpp"
#include "sonnetssl/eval/metrics.hpp"
#include "sonnetssl/eval/stats.hpp"
#include "sonnetssl/learners/gbdt.hpp"
#include "sonnetssl/ssl/pipeline.hpp"
#include "sonnetssl/ssl/self_training.hpp"

namespace sonnetssl {

inline constexpr std::array<std::string_view, 5> kPredictiveModels = {
    "ST-GBDT", "LS-GBDT-KNN", "LS-GBDT-RBF", "LS-GBDT-SMOTE-KNN", "LS-GBDT-SMOTE-RBF"};
inline constexpr std::string_view kBaselineModel = "GBDT";
inline constexpr std::string_view kBaselineSmoteModel = "GBDT-SMOTE";

enum class Variant { kFull, kNoGam, kDiscoOnly, kBaseline, kBaselineSmote };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kFull: return "full";
    case Variant::kNoGam: return "no_gam";
    case Variant::kDiscoOnly: return "disco_only";
    case Variant::kBaseline: return "baseline";
    case Variant::kBaselineSmote: return "baseline_smote";
  }
  return "?";
}

inline bool is_predictive_model(std::string_view name) {
  return std::find(kPredictiveModels.begin(), kPredictiveModels.end(), name) != kPredictiveModels.end();
}

struct BenchmarkConfig {
  std::vector<std::string> categories;       // qualified names; empty = all 31
  std::vector<std::string> semantic_models;  // empty = every loaded store
  std::vector<std::string> predictive_models{kPredictiveModels.begin(), kPredictiveModels.end()};
  bool use_gam = true;
  bool baselines = true;
  bool variant_no_gam = true;
  bool variant_disco_only = true;
  int n_repeats = 20;
  int n_per_value = 2;
  std::uint64_t seed = 7;
  CvMode cv_mode = CvMode::kUnion;
  GbdtParams gbdt;
  double alpha = 0.2;
  int knn_k = 7;
  double rbf_gamma = 20.0;
  int spread_max_iter = 30;
  double spread_tol = 1e-3;
  SelfTrainParams self_train;
  int smote_k = 5;
  bool reached_rows_only = false;
  int jobs = 0;  // 0 = min(cells, hardware threads)

  void validate() const {
    if (n_repeats < 1) throw ConfigError("n_repeats must be >= 1");
    if (n_per_value < 1) throw ConfigError("n_per_value must be >= 1");
    if (predictive_models.empty() && !baselines) throw ConfigError("model grid is empty");
    for (const auto& m : predictive_models) {
      if (!is_predictive_model(m)) throw ConfigError("unknown predictive model: " + m);
    }
    for (const auto& c : categories) parse_category(c);
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (knn_k < 1) throw ConfigError("knn_k must be >= 1");
    if (!(rbf_gamma > 0.0)) throw ConfigError("rbf_gamma must be positive");
    if (smote_k < 1) throw ConfigError("smote_k must be >= 1");
    if (jobs < 0) throw ConfigError("jobs must be >= 0");
  }
};

inline std::string to_string(CvMode m) { return m == CvMode::kUnion ? "union" : "per_category"; }

inline nlohmann::json to_json(const BenchmarkConfig& c) {
  return {
      {"categories", c.categories},
      {"semantic_models", c.semantic_models},
      {"predictive_models", c.predictive_models},
      {"use_gam", c.use_gam},
      {"baselines", c.baselines},
      {"variant_no_gam", c.variant_no_gam},
      {"variant_disco_only", c.variant_disco_only},
      {"n_repeats", c.n_repeats},
      {"n_per_value", c.n_per_value},
      {"seed", c.seed},
      {"cv_mode", to_string(c.cv_mode)},
      {"gbdt",
       {{"n_trees", c.gbdt.n_trees},
        {"learning_rate", c.gbdt.learning_rate},
        {"max_leaves", c.gbdt.max_leaves},
        {"min_samples_leaf", c.gbdt.min_samples_leaf},
        {"max_bins", c.gbdt.max_bins},
        {"min_sum_hessian", c.gbdt.min_sum_hessian},
        {"lambda_l2", c.gbdt.lambda_l2}}},
      {"spreading",
       {{"alpha", c.alpha},
        {"knn_k", c.knn_k},
        {"rbf_gamma", c.rbf_gamma},
        {"max_iter", c.spread_max_iter},
        {"tol", c.spread_tol},
        {"reached_rows_only", c.reached_rows_only}}},
      {"self_training", {{"threshold", c.self_train.threshold}, {"max_iter", c.self_train.max_iter}}},
      {"smote_k", c.smote_k},
  };
}

// Everything the runner needs, already loaded and preprocessed.
struct BenchmarkData {
  Corpus corpus;
  std::vector<SentenceEmbeddingStore> semantic;
  GamTable gam;  // may be empty when the config disables the GAM block
};

struct MetricsRecord {
  std::string category;
  std::string semantic_model;
  std::string predictive_model;
  Variant variant = Variant::kFull;
  int repeat = 0;
  double f1_weighted = 0.0;
  double kappa = 0.0;
  double auc = 0.0;
  std::map<int, std::size_t> test_class_counts;
  std::size_t n_labeled = 0;
};

struct CellFailure {
  std::string category;
  std::string semantic_model;
  std::string predictive_model;
  Variant variant = Variant::kFull;
  int repeat = 0;
  std::string message;
};

struct Aggregate {
  std::string category;
  std::string semantic_model;
  std::string predictive_model;
  Variant variant = Variant::kFull;
  std::size_t n = 0;
  double f1_weighted = 0.0;
  double kappa = 0.0;
  double auc = 0.0;
  std::map<int, double> test_class_counts;  // mean over repeats
};

struct Comparison {
  std::string category;
  std::string kind;  // best_vs_baseline, best_vs_baseline_smote, full_vs_no_gam, full_vs_disco_only
  std::string a, b;  // "<semantic>|<predictive>|<variant>"
  std::size_t n_pairs = 0;
  double mean_a = 0.0, mean_b = 0.0;
  double statistic = 0.0;
  double p_value = 1.0;
  bool exact = false;
  bool degenerate = false;  // too few non-zero differences: reported as p = 1
};

struct BenchmarkReport {
  nlohmann::json config;
  std::vector<std::string> categories;
  std::vector<std::string> semantic_models;
  std::vector<MetricsRecord> records;
  std::vector<CellFailure> failures;
  std::vector<Aggregate> aggregates;
  std::vector<Aggregate> best;  // one per category
  std::vector<Comparison> comparisons;
  std::vector<std::string> warnings;
};

// ---------------------------------------------------------------------------
// A single fit-and-score unit.

struct CellTask {
  std::string category;            // qualified
  std::string predictive_model;    // a kPredictiveModels name, or a baseline name
  Variant variant = Variant::kFull;
  std::set<std::string> train_ids;  // labeled pool for this category
  std::set<std::string> test_ids;
  std::uint64_t seed = 0;
};

struct CellPrediction {
  std::vector<std::string> test_ids;  // row order of proba
  std::vector<int> classes;
  Matrix proba;
  std::size_t n_labeled = 0;
};

namespace bench_detail {

inline bool uses_gam(const BenchmarkConfig& cfg, Variant v) {
  return cfg.use_gam && v != Variant::kNoGam;
}

inline std::optional<int> label_of(const Corpus& c, const Category& cat, const std::string& id) {
  auto it = c.annotations.find(id);
  if (it == c.annotations.end()) return std::nullopt;
  return it->second.label(cat);
}

inline SpreadParams spread_params(const BenchmarkConfig& cfg, bool knn) {
  SpreadParams sp;
  sp.kernel = knn ? SpreadKernel::knn(cfg.knn_k) : SpreadKernel::rbf(cfg.rbf_gamma);
  sp.alpha = cfg.alpha;
  sp.max_iter = cfg.spread_max_iter;
  sp.tol = cfg.spread_tol;
  return sp;
}

}  // namespace bench_detail

struct FittedCell {
  std::unique_ptr<Classifier> model;
  DesignMatrix dm;  // rows: problem rows, then test rows for baselines
  std::map<std::string, std::size_t> position;  // id -> dm row
  std::size_t n_labeled = 0;
};

// Fits one model. Labels are read only for task.train_ids, so deleting the
// test annotations from the corpus cannot change the result.
inline FittedCell fit_cell_model(const BenchmarkData& data, const SentenceEmbeddingStore& store,
                                 const BenchmarkConfig& cfg, const CellTask& task) {
  using bench_detail::label_of;
  const Category cat = parse_category(task.category);
  const bool gam_on = bench_detail::uses_gam(cfg, task.variant);
  const bool baseline = task.variant == Variant::kBaseline || task.variant == Variant::kBaselineSmote;

  auto zero_match = [&](const std::string& id) {
    if (!gam_on) return false;
    auto it = data.gam.find(id);
    return it == data.gam.end() || it->second.no_matches;
  };

  // Rows of the problem: labeled pool first (in id order), then everything
  // else the variant may see unlabeled. Baselines see the labeled pool only.
  std::vector<std::string> rows;
  std::vector<int> y;
  std::set<std::string> labeled;
  for (const auto& id : task.train_ids) {
    if (zero_match(id)) continue;
    const auto v = label_of(data.corpus, cat, id);
    if (!v) continue;
    rows.push_back(id);
    y.push_back(*v);
    labeled.insert(id);
  }
  const std::size_t n_labeled = rows.size();
  if (!baseline) {
    for (const auto& s : data.corpus.sonnets) {
      if (labeled.contains(s.id)) continue;
      if (task.variant == Variant::kDiscoOnly && s.source == Source::kXxExtension &&
          !task.test_ids.contains(s.id)) {
        continue;
      }
      rows.push_back(s.id);
      y.push_back(kUnlabeled);
    }
  }

  // GAM scaling is fitted on every non-test row of the problem.
  std::set<std::string> fit_ids;
  for (const auto& id : rows) {
    if (!task.test_ids.contains(id) && !zero_match(id)) fit_ids.insert(id);
  }
  std::vector<std::string> test_rows(task.test_ids.begin(), task.test_ids.end());
  std::vector<std::string> all_ids = rows;
  if (baseline) all_ids.insert(all_ids.end(), test_rows.begin(), test_rows.end());
  DesignMatrix dm = assemble_design_matrix(all_ids, store, gam_on ? &data.gam : nullptr, fit_ids);
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < all_ids.size(); ++i) position.emplace(all_ids[i], i);

  SslProblem problem;
  if (baseline) {
    std::vector<std::size_t> head(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) head[i] = i;
    problem.X = dm.X.select_rows(head);
  } else {
    problem.X = dm.X;
  }
  problem.y = y;

  GbdtParams gp = cfg.gbdt;
  gp.seed = task.seed;
  const GbdtClassifier prototype(gp);
  std::unique_ptr<Classifier> model;
  const std::string& name = task.predictive_model;

  if (baseline) {
    Matrix X = problem.X;
    std::vector<int> yy = y;
    if (task.variant == Variant::kBaselineSmote) {
      Rng rng(task.seed);
      auto bal = smote_balance(X, yy, cfg.smote_k, rng);
      X = std::move(bal.X);
      yy = std::move(bal.y);
    }
    model = prototype.clone_unfitted();
    model->fit(X, yy);
  } else if (name == "ST-GBDT") {
    model = self_train(prototype, problem, cfg.self_train).model;
  } else {
    PretrainParams pp;
    pp.spread = bench_detail::spread_params(cfg, name.ends_with("KNN"));
    pp.use_smote = name.find("SMOTE") != std::string::npos;
    pp.smote_k = cfg.smote_k;
    pp.reached_rows_only = cfg.reached_rows_only;
    problem.validate();
    model = ls_pretrain_pipeline(problem, prototype, pp, task.seed).model;
  }

  return FittedCell{std::move(model), std::move(dm), std::move(position), n_labeled};
}

// Fits one model and predicts the test rows, in id order.
inline CellPrediction fit_predict(const BenchmarkData& data, const SentenceEmbeddingStore& store,
                                  const BenchmarkConfig& cfg, const CellTask& task) {
  const FittedCell fit = fit_cell_model(data, store, cfg, task);
  CellPrediction out;
  out.test_ids.assign(task.test_ids.begin(), task.test_ids.end());
  std::vector<std::size_t> test_index;
  for (const auto& id : out.test_ids) test_index.push_back(fit.position.at(id));
  out.classes = fit.model->classes();
  out.proba = fit.model->predict_proba(fit.dm.X.select_rows(test_index));
  out.n_labeled = fit.n_labeled;
  return out;
}

inline MetricsRecord score_prediction(const Corpus& corpus, const CellTask& task, const CellPrediction& pred) {
  const Category cat = parse_category(task.category);
  std::vector<int> y_true;
  for (const auto& id : pred.test_ids) {
    const auto v = bench_detail::label_of(corpus, cat, id);
    if (!v) throw DegenerateDataError("test id without annotation: " + id);
    y_true.push_back(*v);
  }
  std::vector<int> y_pred;
  for (std::size_t r = 0; r < pred.proba.rows(); ++r) y_pred.push_back(pred.classes[argmax(pred.proba.row(r))]);

  MetricsRecord rec;
  rec.category = task.category;
  rec.predictive_model = task.predictive_model;
  rec.variant = task.variant;
  rec.f1_weighted = f1_weighted(y_true, y_pred);
  rec.kappa = cohens_kappa(y_true, y_pred);
  rec.auc = auc_multiclass(y_true, pred.proba, pred.classes);
  rec.test_class_counts = class_counts(y_true);
  rec.n_labeled = pred.n_labeled;
  return rec;
}

// ---------------------------------------------------------------------------
// The full protocol.

namespace bench_detail {

struct Cell {
  int repeat = 0;
  std::size_t semantic = 0;
  std::size_t category = 0;
};

struct CellOutput {
  std::vector<MetricsRecord> records;
  std::vector<CellFailure> failures;
};

inline std::string combo_key(const std::string& sem, const std::string& pred, Variant v) {
  return sem + "|" + pred + "|" + std::string(to_string(v));
}

// Every (model, variant) pair a cell runs, in report order.
inline std::vector<std::pair<std::string, Variant>> cell_plan(const BenchmarkConfig& cfg) {
  std::vector<std::pair<std::string, Variant>> plan;
  for (const auto& m : cfg.predictive_models) plan.emplace_back(m, Variant::kFull);
  if (cfg.baselines) {
    plan.emplace_back(std::string(kBaselineModel), Variant::kBaseline);
    plan.emplace_back(std::string(kBaselineSmoteModel), Variant::kBaselineSmote);
  }
  if (cfg.variant_no_gam && cfg.use_gam) {
    for (const auto& m : cfg.predictive_models) plan.emplace_back(m, Variant::kNoGam);
  }
  if (cfg.variant_disco_only) {
    for (const auto& m : cfg.predictive_models) plan.emplace_back(m, Variant::kDiscoOnly);
  }
  return plan;
}

inline std::vector<Aggregate> aggregate(const std::vector<MetricsRecord>& records) {
  std::map<std::tuple<std::string, std::string, std::string, int>, std::size_t> slot;
  std::vector<Aggregate> out;
  for (const auto& r : records) {
    const auto key = std::make_tuple(r.category, r.semantic_model, r.predictive_model, static_cast<int>(r.variant));
    auto [it, fresh] = slot.try_emplace(key, out.size());
    if (fresh) out.push_back({r.category, r.semantic_model, r.predictive_model, r.variant, 0, 0, 0, 0, {}});
    auto& a = out[it->second];
    ++a.n;
    a.f1_weighted += r.f1_weighted;
    a.kappa += r.kappa;
    a.auc += r.auc;
    for (const auto& [cls, n] : r.test_class_counts) a.test_class_counts[cls] += static_cast<double>(n);
  }
  for (auto& a : out) {
    const auto n = static_cast<double>(a.n);
    a.f1_weighted /= n;
    a.kappa /= n;
    a.auc /= n;
    for (auto& [cls, v] : a.test_class_counts) v /= n;
  }
  return out;
}

inline Comparison compare(const std::vector<MetricsRecord>& records, const std::string& category,
                          const std::string& kind, const std::string& sem_a, const std::string& pred_a,
                          Variant var_a, const std::string& sem_b, const std::string& pred_b, Variant var_b) {
  std::map<int, double> a, b;
  for (const auto& r : records) {
    if (r.category != category) continue;
    if (r.semantic_model == sem_a && r.predictive_model == pred_a && r.variant == var_a) a[r.repeat] = r.auc;
    if (r.semantic_model == sem_b && r.predictive_model == pred_b && r.variant == var_b) b[r.repeat] = r.auc;
  }
  std::vector<double> xa, xb;
  for (const auto& [rep, v] : a) {
    auto it = b.find(rep);
    if (it == b.end()) continue;
    xa.push_back(v);
    xb.push_back(it->second);
  }
  Comparison c;
  c.category = category;
  c.kind = kind;
  c.a = combo_key(sem_a, pred_a, var_a);
  c.b = combo_key(sem_b, pred_b, var_b);
  c.n_pairs = xa.size();
  if (!xa.empty()) {
    for (std::size_t i = 0; i < xa.size(); ++i) {
      c.mean_a += xa[i];
      c.mean_b += xb[i];
    }
    c.mean_a /= static_cast<double>(xa.size());
    c.mean_b /= static_cast<double>(xb.size());
  }
  try {
    const auto w = wilcoxon_signed_rank(xa, xb);
    c.statistic = w.statistic;
    c.p_value = w.p_value;
    c.exact = w.exact;
  } catch (const TooFewPairsError&) {
    c.degenerate = true;
    c.p_value = 1.0;
  }
  return c;
}

}  // namespace bench_detail

inline BenchmarkReport run_benchmark(const BenchmarkData& data, const BenchmarkConfig& cfg) {
  cfg.validate();
  BenchmarkReport rep;
  rep.config = to_json(cfg);

  // Resolve the grid.
  std::vector<const SentenceEmbeddingStore*> stores;
  if (cfg.semantic_models.empty()) {
    for (const auto& s : data.semantic) stores.push_back(&s);
  } else {
    for (const auto& name : cfg.semantic_models) {
      auto it = std::find_if(data.semantic.begin(), data.semantic.end(),
                             [&](const auto& s) { return s.model_name == name; });
      if (it == data.semantic.end()) throw ConfigError("no embedding store for semantic model " + name);
      stores.push_back(&*it);
    }
  }
  if (stores.empty()) throw ConfigError("no semantic models to benchmark");
  for (const auto* s : stores) rep.semantic_models.push_back(s->model_name);

  std::vector<Category> cats;
  if (cfg.categories.empty()) {
    cats = all_categories();
  } else {
    for (const auto& c : cfg.categories) cats.push_back(parse_category(c));
  }
  for (const auto& c : cats) rep.categories.push_back(c.qualified());
  if (cfg.use_gam && data.gam.empty()) throw ConfigError("GAM block enabled but no GAM features supplied");

  const LabelTable labels = label_table(data.corpus, cats);
  std::vector<CvSplit> splits;
  for (int r = 0; r < cfg.n_repeats; ++r) {
    splits.push_back(cv_sample(labels, cfg.n_per_value, derive_seed(cfg.seed, 0x5eed'c0deULL, r), cfg.cv_mode, r));
    for (const auto& w : splits.back().warnings) rep.warnings.push_back("repeat " + std::to_string(r) + ": " + w);
  }

  std::vector<bench_detail::Cell> cells;
  for (int r = 0; r < cfg.n_repeats; ++r) {
    for (std::size_t m = 0; m < stores.size(); ++m) {
      for (std::size_t c = 0; c < cats.size(); ++c) cells.push_back({r, m, c});
    }
  }
  const auto plan = bench_detail::cell_plan(cfg);

  std::vector<bench_detail::CellOutput> outputs(cells.size());
  auto run_cell = [&](std::size_t index) {
    const auto& cell = cells[index];
    const auto& split = splits[static_cast<std::size_t>(cell.repeat)];
    const std::string category = rep.categories[cell.category];
    auto& out = outputs[index];
    for (std::size_t p = 0; p < plan.size(); ++p) {
      CellTask task;
      task.category = category;
      task.predictive_model = plan[p].first;
      task.variant = plan[p].second;
      task.train_ids = split.train_for(category);
      task.test_ids = split.test_for(category);
      task.seed = derive_seed(cfg.seed, cell.repeat, cell.semantic, cell.category, p);
      try {
        auto pred = fit_predict(data, *stores[cell.semantic], cfg, task);
        auto rec = score_prediction(data.corpus, task, pred);
        rec.semantic_model = stores[cell.semantic]->model_name;
        rec.repeat = cell.repeat;
        out.records.push_back(std::move(rec));
      } catch (const std::exception& e) {
        out.failures.push_back({category, stores[cell.semantic]->model_name, task.predictive_model,
                                task.variant, cell.repeat, e.what()});
      }
    }
  };

  std::size_t jobs = cfg.jobs > 0 ? static_cast<std::size_t>(cfg.jobs)
                                  : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  jobs = std::min(jobs, cells.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  // Merge in cell order, independent of completion order.
  for (auto& o : outputs) {
    std::move(o.records.begin(), o.records.end(), std::back_inserter(rep.records));
    std::move(o.failures.begin(), o.failures.end(), std::back_inserter(rep.failures));
  }

  rep.aggregates = bench_detail::aggregate(rep.records);
  for (const auto& category : rep.categories) {
    const Aggregate* best = nullptr;
    for (const auto& a : rep.aggregates) {
      if (a.category != category || a.variant != Variant::kFull) continue;
      if (best == nullptr || a.auc > best->auc) best = &a;
    }
    if (best == nullptr) continue;
    rep.best.push_back(*best);
    auto add = [&](const std::string& kind, const std::string& pred_b, Variant var_b) {
      rep.comparisons.push_back(bench_detail::compare(rep.records, category, kind, best->semantic_model,
                                                      best->predictive_model, Variant::kFull,
                                                      best->semantic_model, pred_b, var_b));
    };
    if (cfg.baselines) {
      add("best_vs_baseline", std::string(kBaselineModel), Variant::kBaseline);
      add("best_vs_baseline_smote", std::string(kBaselineSmoteModel), Variant::kBaselineSmote);
    }
    if (cfg.variant_no_gam && cfg.use_gam) add("full_vs_no_gam", best->predictive_model, Variant::kNoGam);
    if (cfg.variant_disco_only) add("full_vs_disco_only", best->predictive_model, Variant::kDiscoOnly);
  }
  return rep;
}

}  // namespace sonnetssl
