// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "../gam_fixture.hpp"
#include "../oracles.hpp"
#include "../test_support.hpp"
#include "sonnetssl/cli/app.hpp"
#include "sonnetssl/core/random.hpp"
#include "sonnetssl/embeddings.hpp"
#include "sonnetssl/eval/benchmark.hpp"
#include "sonnetssl/eval/cv.hpp"
#include "sonnetssl/eval/metrics.hpp"
#include "sonnetssl/eval/stats.hpp"
#include "sonnetssl/ssl/label_spreading.hpp"
#include "sonnetssl/ssl/smote.hpp"

namespace ss = sonnetssl;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// A check returns an empty string on success, otherwise what went wrong.
using Check = std::function<std::string()>;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------

std::string label_spreading_oracle() {
  const auto t0 = Clock::now();
  ss::Rng rng(2024);
  int done = 0, attempts = 0;
  double worst = 0.0;
  while (done < 200) {
    if (++attempts > 5000) return "could not draw 200 connected instances";
    const std::size_t n = 8 + ss::uniform_index(rng, 43);
    const std::size_t dim = 1 + ss::uniform_index(rng, 4);
    const int n_classes = 2 + static_cast<int>(ss::uniform_index(rng, 3));
    ss::SslProblem p;
    p.X = ss::Matrix(n, dim);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < dim; ++j) p.X(i, j) = ss::uniform01(rng);
      p.y.push_back(ss::kUnlabeled);
    }
    // every class gets at least one label, plus a few extra
    for (int c = 0; c < n_classes; ++c) p.y[static_cast<std::size_t>(c)] = c;
    for (std::size_t i = static_cast<std::size_t>(n_classes); i < n; ++i) {
      if (ss::uniform01(rng) < 0.2) p.y[i] = static_cast<int>(ss::uniform_index(rng, static_cast<std::uint64_t>(n_classes)));
    }
    const bool knn = done % 2 == 0;
    const int k = 2 + static_cast<int>(ss::uniform_index(rng, 5));
    const double gamma = 0.5 + 4.0 * ss::uniform01(rng);
    const auto W = knn ? ss::oracle::knn_affinity(p.X, k) : ss::oracle::rbf_affinity(p.X, gamma);
    if (!ss::oracle::connected(W)) continue;
    const double alpha = 0.05 + 0.9 * ss::uniform01(rng);

    ss::SpreadParams sp;
    sp.kernel = knn ? ss::SpreadKernel::knn(k) : ss::SpreadKernel::rbf(gamma);
    sp.alpha = alpha;
    sp.max_iter = 100000;
    sp.tol = 1e-14;
    const auto got = ss::label_spreading(p, sp);
    const auto want = ss::oracle::spreading_closed_form(W, p.y, alpha);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < got.F.cols(); ++c) {
        worst = std::max(worst, std::abs(got.F(i, c) - want(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c))));
      }
    }
    ++done;
  }
  const double secs = seconds_since(t0);
  if (worst > 1e-6) return "max abs deviation " + fmt(worst);
  if (secs >= 10.0) return "took " + fmt(secs) + " s";
  return {};
}

std::string metric_oracles() {
  using V = std::vector<int>;
  ss::Rng rng(77);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + ss::uniform_index(rng, 30);
    const int k = 2 + static_cast<int>(ss::uniform_index(rng, 3));
    V y, pred;
    ss::Matrix proba(n, static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < n; ++i) {
      y.push_back(i < static_cast<std::size_t>(k) ? static_cast<int>(i)
                                                  : static_cast<int>(ss::uniform_index(rng, static_cast<std::uint64_t>(k))));
      pred.push_back(static_cast<int>(ss::uniform_index(rng, static_cast<std::uint64_t>(k))));
      double s = 0.0;
      for (int c = 0; c < k; ++c) {
        // coarse grid so ties happen
        proba(i, static_cast<std::size_t>(c)) = std::floor(ss::uniform01(rng) * 5.0) + 1.0;
        s += proba(i, static_cast<std::size_t>(c));
      }
      for (int c = 0; c < k; ++c) proba(i, static_cast<std::size_t>(c)) /= s;
    }
    V classes(static_cast<std::size_t>(k));
    std::iota(classes.begin(), classes.end(), 0);
    const std::vector<std::pair<double, double>> pairs = {
        {ss::f1_weighted(y, pred), ss::oracle::f1_weighted(y, pred)},
        {ss::cohens_kappa(y, pred), ss::oracle::cohens_kappa(y, pred)},
        {ss::auc_multiclass(y, proba, classes), ss::oracle::auc_ovr_macro(y, proba, classes)}};
    for (const auto& [got, want] : pairs) {
      if (std::abs(got - want) > 1e-12) return "instance " + std::to_string(t) + ": " + fmt(got) + " vs " + fmt(want);
    }
    V bin;
    std::vector<double> score;
    for (std::size_t i = 0; i < n; ++i) {
      bin.push_back(y[i] == 0);
      score.push_back(proba(i, 0));
    }
    const double got = ss::auc_binary(bin, score), want = ss::oracle::auc_pairs(bin, score, 1);
    if (std::abs(got - want) > 1e-12) return "binary instance " + std::to_string(t);
  }

  if (std::abs(ss::f1_weighted(V{0, 0, 0, 1}, V{0, 0, 1, 1}) - 0.7667) >= 5e-5) return "f1 worked example";
  V t, p;
  for (auto [a, b, c] : std::vector<std::array<int, 3>>{{0, 0, 6}, {0, 1, 2}, {1, 0, 1}, {1, 1, 3}}) {
    for (int i = 0; i < c; ++i) {
      t.push_back(a);
      p.push_back(b);
    }
  }
  if (std::abs(ss::cohens_kappa(t, p) - 0.4706) >= 5e-5) return "kappa worked example";
  if (ss::auc_binary(V{0, 0, 1, 1}, std::vector<double>{0.1, 0.4, 0.35, 0.8}) != 0.75) return "auc worked example";
  return {};
}

std::string wilcoxon_oracle() {
  ss::Rng rng(99);
  int checked = 0;
  while (checked < 100) {
    const std::size_t n = 1 + ss::uniform_index(rng, 12);
    std::vector<double> a, b;
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(std::round(ss::uniform01(rng) * 8.0) / 2.0);
      b.push_back(std::round(ss::uniform01(rng) * 8.0) / 2.0);
      nonzero = nonzero || a.back() != b.back();
    }
    if (!nonzero) continue;
    const auto got = ss::wilcoxon_signed_rank(a, b, 1);
    const auto want = ss::oracle::wilcoxon_enumerate(a, b);
    if (!got.exact || got.statistic != want.statistic || std::abs(got.p_value - want.p_value) > 1e-12) {
      return "sample " + std::to_string(checked) + ": p " + fmt(got.p_value) + " vs " + fmt(want.p_value);
    }
    ++checked;
  }
  const auto r = ss::wilcoxon_signed_rank(std::vector<double>{1, 2, 3, -1}, std::vector<double>{0, 0, 0, 0}, 4);
  if (r.statistic != 1.5) return "statistic " + fmt(r.statistic) + " for diffs [1,2,3,-1]";
  return {};
}

std::string min_sample_size_values() {
  const int a = ss::min_sample_size(0.1, 0.8, 0.8), b = ss::min_sample_size(0.05, 0.8, 0.8);
  if (a != 20 || b != 25) return "got " + std::to_string(a) + " and " + std::to_string(b);
  return {};
}

std::string gam_fixture() {
  const auto f = ss::extract_features(ss::testing::gam_fixture_sonnet(), ss::testing::gam_fixture_lexicon());
  const auto want = ss::testing::gam_fixture_expected();
  for (std::size_t k = 0; k < ss::kNumGamFeatures; ++k) {
    if (std::abs(f.values[k] - want[k]) > 1e-9) {
      return std::string(ss::kGamFeatureNames[k]) + " = " + fmt(f.values[k]) + ", expected " + fmt(want[k]);
    }
  }
  if (std::abs(f.get("sigma_aro") - f.get("arousal_mean") * std::sqrt(6.0)) > 1e-9) return "sigma_aro identity";
  if (std::abs(f.get("CorAro") - 0.5) > 1e-9) return "CorAro";
  return {};
}

std::string pooling() {
  auto identity = [](std::string_view s) { return std::string(s); };
  ss::Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + ss::uniform_index(rng, 20), dim = 1 + ss::uniform_index(rng, 16);
    std::vector<ss::TokenVector> toks;
    ss::WordWeights w;
    for (std::size_t i = 0; i < n; ++i) {
      ss::TokenVector tv{"t" + std::to_string(i), {}};
      for (std::size_t d = 0; d < dim; ++d) tv.vector.push_back(4.0 * ss::uniform01(rng) - 2.0);
      w[tv.token] = 1.0;
      toks.push_back(tv);
    }
    const auto v = ss::affective_weighted_pool(toks, w, identity);
    for (std::size_t d = 0; d < dim; ++d) {
      double mean = 0.0;
      for (const auto& tv : toks) mean += tv.vector[d];
      mean /= static_cast<double>(n);
      if (std::abs(v[d] - mean) > 1e-12) return "unit weights differ from the mean";
    }
  }
  const std::vector<ss::TokenVector> toks = {{"x", {1, 0}}, {"y", {0, 1}}};
  if (ss::affective_weighted_pool(toks, {{"x", 0.5}, {"y", 1.0}}, identity) != std::vector<double>{0.25, 0.5}) {
    return "worked example";
  }
  return {};
}

std::string smote_segments() {
  ss::Rng rng(31);
  const std::size_t m = 12, dim = 5;
  ss::Matrix minority(m, dim);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < dim; ++j) minority(i, j) = 10.0 * ss::uniform01(rng) - 5.0;
  }
  ss::Rng a(123), b(123);
  const auto s = ss::smote(minority, 5, 1000, a);
  if (s.rows() != 1000) return "expected 1000 rows";
  double worst = 0.0;
  for (std::size_t r = 0; r < s.rows(); ++r) {
    const std::vector<double> p(s.row(r).begin(), s.row(r).end());
    worst = std::max(worst, ss::oracle::distance_to_any_segment(p, minority));
  }
  if (worst >= 1e-9) return "max distance to a segment " + fmt(worst);
  if (!(ss::smote(minority, 5, 1000, b) == s)) return "same seed, different output";
  return {};
}

std::string planted_benchmark() {
  const auto t0 = Clock::now();
  const auto rc = ss::cli::resolve_config(ss::ConfigFile::load(ss::testing::data_dir() / "synthetic" / "planted.toml"));
  const auto data = ss::cli::load_benchmark_data(rc);
  const auto rep = ss::run_benchmark(data, rc.bench);
  const double secs = seconds_since(t0);
  if (!rep.failures.empty()) return std::to_string(rep.failures.size()) + " failed cells: " + rep.failures[0].message;
  double ls = -1.0, base = -1.0;
  for (const auto& a : rep.aggregates) {
    if (a.predictive_model == "LS-GBDT-RBF" && a.variant == ss::Variant::kFull) ls = a.auc;
    if (a.variant == ss::Variant::kBaseline) base = a.auc;
  }
  const std::string summary = "LS-GBDT-RBF " + fmt(ls) + ", GBDT " + fmt(base) + ", " + fmt(secs) + " s";
  if (ls < 0.0 || base < 0.0) return "missing aggregates (" + summary + ")";
  if (!(ls > 0.8) || !(ls >= base) || secs >= 300.0) return summary;
  std::printf("  planted: %s\n", summary.c_str());
  return {};
}

std::string determinism() {
  const std::string cfg = (ss::testing::data_dir() / "fixture" / "benchmark.toml").string();
  std::vector<fs::path> dirs;
  for (const char* name : {"accept_det_a", "accept_det_b"}) {
    dirs.push_back(ss::testing::scratch_dir(name));
    const std::string out = dirs.back().string();
    const char* argv[] = {"sonnetssl", "benchmark", "--config", cfg.c_str(), "--out", out.c_str()};
    std::ostringstream o, e;
    if (const int code = ss::cli::run(6, argv, o, e); code != 0) return "benchmark exited " + std::to_string(code) + ": " + e.str();
  }
  for (const char* f : {"report.json", "records.csv", "aggregates.csv"}) {
    if (!fs::exists(dirs[0] / f)) return std::string(f) + " not written";
    if (ss::testing::slurp(dirs[0] / f) != ss::testing::slurp(dirs[1] / f)) return std::string(f) + " differs";
  }
  return {};
}

std::string cv_protocol() {
  const auto rc = ss::cli::resolve_config(ss::ConfigFile::load(ss::testing::data_dir() / "fixture" / "benchmark.toml"));
  const auto data = ss::cli::load_benchmark_data(rc);
  const auto labels = ss::label_table(data.corpus, ss::all_categories());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (int per : {1, 2, 4}) {
      const auto s = ss::cv_sample(labels, per, seed);
      for (const auto& [cat, column] : labels) {
        std::map<int, std::size_t> avail;
        for (const auto& [id, v] : column) ++avail[v];
        for (const auto& [value, count] : avail) {
          const auto& ids = s.draws.at(cat).at(value);
          if (ids.size() != std::min<std::size_t>(count, static_cast<std::size_t>(per))) {
            return cat + " value " + std::to_string(value) + ": drew " + std::to_string(ids.size());
          }
          for (const auto& id : ids) {
            if (column.at(id) != value || !s.train_ids.contains(id)) return "bad draw " + id;
          }
        }
      }
      std::set<std::string> all;
      for (const auto& id : s.test_ids) {
        if (s.train_ids.contains(id)) return "train/test overlap on " + id;
      }
      all.insert(s.train_ids.begin(), s.train_ids.end());
      all.insert(s.test_ids.begin(), s.test_ids.end());
      if (all != s.annotated) return "train and test do not cover the annotated set";
    }
  }

  // leakage: hiding test labels and deleting them give the same predictions
  auto cfg = rc.bench;
  const std::string cat = "psychological/solitude";
  const auto split = ss::cv_sample(ss::label_table(data.corpus, {ss::parse_category(cat)}), cfg.n_per_value, 17);
  ss::BenchmarkData erased = data;
  for (const auto& id : split.test_ids) erased.corpus.annotations.erase(id);
  for (const auto& model : ss::kPredictiveModels) {
    const ss::CellTask task{cat, std::string(model), ss::Variant::kFull, split.train_ids, split.test_ids, 5};
    for (std::size_t m = 0; m < data.semantic.size(); ++m) {
      const auto a = ss::fit_predict(data, data.semantic[m], cfg, task);
      const auto b = ss::fit_predict(erased, erased.semantic[m], cfg, task);
      if (!(a.proba == b.proba)) return "predictions differ for " + std::string(model);
    }
  }
  return {};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> checks = {
      {"label spreading matches closed form on 200 connected instances", label_spreading_oracle},
      {"metrics match brute-force oracles on 500 instances", metric_oracles},
      {"wilcoxon exact p matches enumeration for n <= 12", wilcoxon_oracle},
      {"min_sample_size gives 20 and 25", min_sample_size_values},
      {"32 lexicon features match the hand-computed fixture", gam_fixture},
      {"weighted pooling: unit weights equal the mean, worked example", pooling},
      {"SMOTE points lie on minority segments, reproducible", smote_segments},
      {"planted benchmark: LS-GBDT-RBF AUC > 0.8 and >= GBDT", planted_benchmark},
      {"benchmark reports are byte-identical across runs", determinism},
      {"cv_sample draws, partition and label leakage", cv_protocol},
  };
  int failed = 0;
  for (const auto& [name, check] : checks) {
    std::string why;
    const auto t0 = Clock::now();
    try {
      why = check();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    if (why.empty()) {
      std::printf("PASS  %s  (%.1f s)\n", name.c_str(), secs);
    } else {
      ++failed;
      std::printf("FAIL  %s  (%.1f s): %s\n", name.c_str(), secs, why.c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
