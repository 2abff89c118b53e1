#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sonnetssl/core/error.hpp"
#include "sonnetssl/eval/benchmark.hpp"

namespace sonnetssl {

inline Variant parse_variant(std::string_view s) {
  for (auto v : {Variant::kFull, Variant::kNoGam, Variant::kDiscoOnly, Variant::kBaseline,
                 Variant::kBaselineSmote}) {
    if (to_string(v) == s) return v;
  }
  throw SchemaError("unknown variant: " + std::string(s));
}

namespace report_detail {

inline nlohmann::json counts_json(const auto& counts) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [cls, n] : counts) j[std::to_string(cls)] = n;
  return j;
}

template <typename T>
std::map<int, T> counts_from(const nlohmann::json& j) {
  std::map<int, T> out;
  for (const auto& [k, v] : j.items()) out[std::stoi(k)] = v.template get<T>();
  return out;
}

// Shortest round-trip decimal, same text the JSON writer emits.
inline std::string num(double x) { return nlohmann::json(x).dump(); }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace report_detail

inline nlohmann::json to_json(const MetricsRecord& r) {
  return {{"category", r.category},
          {"semantic_model", r.semantic_model},
          {"predictive_model", r.predictive_model},
          {"variant", to_string(r.variant)},
          {"repeat", r.repeat},
          {"f1_weighted", r.f1_weighted},
          {"kappa", r.kappa},
          {"auc", r.auc},
          {"n_labeled", r.n_labeled},
          {"test_class_counts", report_detail::counts_json(r.test_class_counts)}};
}

inline nlohmann::json to_json(const Aggregate& a) {
  return {{"category", a.category},
          {"semantic_model", a.semantic_model},
          {"predictive_model", a.predictive_model},
          {"variant", to_string(a.variant)},
          {"n", a.n},
          {"f1_weighted", a.f1_weighted},
          {"kappa", a.kappa},
          {"auc", a.auc},
          {"test_class_counts", report_detail::counts_json(a.test_class_counts)}};
}

inline nlohmann::json to_json(const BenchmarkReport& rep) {
  nlohmann::json j;
  j["config"] = rep.config;
  j["categories"] = rep.categories;
  j["semantic_models"] = rep.semantic_models;
  j["records"] = nlohmann::json::array();
  for (const auto& r : rep.records) j["records"].push_back(to_json(r));
  j["aggregates"] = nlohmann::json::array();
  for (const auto& a : rep.aggregates) j["aggregates"].push_back(to_json(a));
  j["best"] = nlohmann::json::array();
  for (const auto& a : rep.best) j["best"].push_back(to_json(a));
  j["comparisons"] = nlohmann::json::array();
  for (const auto& c : rep.comparisons) {
    j["comparisons"].push_back({{"category", c.category},
                                {"kind", c.kind},
                                {"a", c.a},
                                {"b", c.b},
                                {"n_pairs", c.n_pairs},
                                {"mean_auc_a", c.mean_a},
                                {"mean_auc_b", c.mean_b},
                                {"statistic", c.statistic},
                                {"p_value", c.p_value},
                                {"exact", c.exact},
                                {"degenerate", c.degenerate}});
  }
  j["failures"] = nlohmann::json::array();
  for (const auto& f : rep.failures) {
    j["failures"].push_back({{"category", f.category},
                             {"semantic_model", f.semantic_model},
                             {"predictive_model", f.predictive_model},
                             {"variant", to_string(f.variant)},
                             {"repeat", f.repeat},
                             {"message", f.message}});
  }
  j["warnings"] = rep.warnings;
  return j;
}

// Reads back what to_json(BenchmarkReport) wrote.
inline BenchmarkReport report_from_json(const nlohmann::json& j) {
  try {
    BenchmarkReport rep;
    rep.config = j.at("config");
    rep.categories = j.at("categories").get<std::vector<std::string>>();
    rep.semantic_models = j.at("semantic_models").get<std::vector<std::string>>();
    auto read_agg = [](const nlohmann::json& a) {
      Aggregate out;
      out.category = a.at("category");
      out.semantic_model = a.at("semantic_model");
      out.predictive_model = a.at("predictive_model");
      out.variant = parse_variant(a.at("variant").get<std::string>());
      out.n = a.at("n");
      out.f1_weighted = a.at("f1_weighted");
      out.kappa = a.at("kappa");
      out.auc = a.at("auc");
      out.test_class_counts = report_detail::counts_from<double>(a.at("test_class_counts"));
      return out;
    };
    for (const auto& r : j.at("records")) {
      MetricsRecord m;
      m.category = r.at("category");
      m.semantic_model = r.at("semantic_model");
      m.predictive_model = r.at("predictive_model");
      m.variant = parse_variant(r.at("variant").get<std::string>());
      m.repeat = r.at("repeat");
      m.f1_weighted = r.at("f1_weighted");
      m.kappa = r.at("kappa");
      m.auc = r.at("auc");
      m.n_labeled = r.at("n_labeled");
      m.test_class_counts = report_detail::counts_from<std::size_t>(r.at("test_class_counts"));
      rep.records.push_back(std::move(m));
    }
    for (const auto& a : j.at("aggregates")) rep.aggregates.push_back(read_agg(a));
    for (const auto& a : j.at("best")) rep.best.push_back(read_agg(a));
    for (const auto& c : j.at("comparisons")) {
      Comparison x;
      x.category = c.at("category");
      x.kind = c.at("kind");
      x.a = c.at("a");
      x.b = c.at("b");
      x.n_pairs = c.at("n_pairs");
      x.mean_a = c.at("mean_auc_a");
      x.mean_b = c.at("mean_auc_b");
      x.statistic = c.at("statistic");
      x.p_value = c.at("p_value");
      x.exact = c.at("exact");
      x.degenerate = c.at("degenerate");
      rep.comparisons.push_back(std::move(x));
    }
    for (const auto& f : j.at("failures")) {
      rep.failures.push_back({f.at("category"), f.at("semantic_model"), f.at("predictive_model"),
                              parse_variant(f.at("variant").get<std::string>()), f.at("repeat"),
                              f.at("message")});
    }
    rep.warnings = j.at("warnings").get<std::vector<std::string>>();
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("benchmark report: ") + e.what());
  }
}

inline std::string records_csv(const BenchmarkReport& rep) {
  using report_detail::csv_field;
  using report_detail::num;
  std::string out =
      "category,semantic_model,predictive_model,variant,repeat,f1_weighted,kappa,auc,n_labeled,test_class_counts\n";
  for (const auto& r : rep.records) {
    std::string counts;
    for (const auto& [cls, n] : r.test_class_counts) {
      if (!counts.empty()) counts += ';';
      counts += std::to_string(cls) + ":" + std::to_string(n);
    }
    out += csv_field(r.category) + "," + csv_field(r.semantic_model) + "," + csv_field(r.predictive_model) +
           "," + std::string(to_string(r.variant)) + "," + std::to_string(r.repeat) + "," + num(r.f1_weighted) +
           "," + num(r.kappa) + "," + num(r.auc) + "," + std::to_string(r.n_labeled) + "," + counts + "\n";
  }
  return out;
}

inline std::string aggregates_csv(const BenchmarkReport& rep) {
  using report_detail::csv_field;
  using report_detail::num;
  std::string out = "category,semantic_model,predictive_model,variant,n,f1_weighted,kappa,auc,best\n";
  for (const auto& a : rep.aggregates) {
    const bool is_best = std::any_of(rep.best.begin(), rep.best.end(), [&](const Aggregate& b) {
      return b.category == a.category && b.semantic_model == a.semantic_model &&
             b.predictive_model == a.predictive_model && b.variant == a.variant;
    });
    out += csv_field(a.category) + "," + csv_field(a.semantic_model) + "," + csv_field(a.predictive_model) +
           "," + std::string(to_string(a.variant)) + "," + std::to_string(a.n) + "," + num(a.f1_weighted) + "," +
           num(a.kappa) + "," + num(a.auc) + "," + (is_best ? "1" : "0") + "\n";
  }
  return out;
}

// Linear-interpolation quantile of sorted data.
inline double quantile_sorted(const std::vector<double>& xs, double q) {
  if (xs.empty()) return 0.0;
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

// One box per (semantic, predictive, variant) over the repeat AUCs of a
// category. Whiskers span min..max.
inline std::string svg_boxplot(const BenchmarkReport& rep, const std::string& category) {
  std::vector<std::string> keys;
  std::map<std::string, std::vector<double>> values;
  for (const auto& r : rep.records) {
    if (r.category != category) continue;
    const auto key = r.semantic_model + " | " + r.predictive_model + " | " + std::string(to_string(r.variant));
    if (!values.contains(key)) keys.push_back(key);
    values[key].push_back(r.auc);
  }
  const int box_w = 28, gap = 22, left = 50, top = 30, plot_h = 300, label_h = 260;
  const int width = left + static_cast<int>(keys.size()) * (box_w + gap) + gap;
  const int height = top + plot_h + label_h;
  auto ypos = [&](double v) { return top + (1.0 - std::clamp(v, 0.0, 1.0)) * plot_h; };
  using report_detail::num;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s << "<text x=\"" << left << "\" y=\"18\" font-size=\"14\">AUC: " << report_detail::xml_escape(category)
    << "</text>\n";
  for (int t = 0; t <= 10; t += 2) {
    const double v = t / 10.0;
    s << "<line x1=\"" << left << "\" x2=\"" << width << "\" y1=\"" << num(ypos(v)) << "\" y2=\""
      << num(ypos(v)) << "\" stroke=\"#ddd\"/>\n";
    s << "<text x=\"" << left - 6 << "\" y=\"" << num(ypos(v) + 4) << "\" text-anchor=\"end\">" << num(v)
      << "</text>\n";
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto xs = values[keys[i]];
    std::sort(xs.begin(), xs.end());
    const double x0 = left + gap + static_cast<double>(i) * (box_w + gap);
    const double xm = x0 + box_w / 2.0;
    const double q1 = quantile_sorted(xs, 0.25), med = quantile_sorted(xs, 0.5), q3 = quantile_sorted(xs, 0.75);
    s << "<line x1=\"" << num(xm) << "\" x2=\"" << num(xm) << "\" y1=\"" << num(ypos(xs.back())) << "\" y2=\""
      << num(ypos(xs.front())) << "\" stroke=\"#333\"/>\n";
    s << "<rect x=\"" << num(x0) << "\" y=\"" << num(ypos(q3)) << "\" width=\"" << box_w << "\" height=\""
      << num(ypos(q1) - ypos(q3)) << "\" fill=\"#9ecae1\" stroke=\"#333\"/>\n";
    s << "<line x1=\"" << num(x0) << "\" x2=\"" << num(x0 + box_w) << "\" y1=\"" << num(ypos(med)) << "\" y2=\""
      << num(ypos(med)) << "\" stroke=\"#000\" stroke-width=\"2\"/>\n";
    const double ly = top + plot_h + 10;
    s << "<text transform=\"translate(" << num(xm + 4) << "," << num(ly) << ") rotate(60)\">"
      << report_detail::xml_escape(keys[i]) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

// "psychological/solitude" -> "psychological_solitude"
inline std::string file_stem(const std::string& category) {
  std::string out;
  for (char c : category) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-') ? c : '_';
  return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
}

// report.json, records.csv, aggregates.csv and one SVG per category.
inline void write_report(const BenchmarkReport& rep, const std::filesystem::path& dir, bool svg = true) {
  std::filesystem::create_directories(dir);
  write_text(dir / "report.json", to_json(rep).dump(2) + "\n");
  write_text(dir / "records.csv", records_csv(rep));
  write_text(dir / "aggregates.csv", aggregates_csv(rep));
  if (!svg) return;
  for (const auto& c : rep.categories) write_text(dir / ("boxplot_" + file_stem(c) + ".svg"), svg_boxplot(rep, c));
}

}  // namespace sonnetssl
