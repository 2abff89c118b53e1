#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sonnetssl/core/error.hpp"

namespace sonnetssl {

// A small TOML subset:
//
//   # comment
//   [section]
//   key = "string" | 'string' | 42 | 0.5 | true | false | ["a", "b", 3]
//
// Keys are flattened to "section.key". Arrays must fit on one line. Strings
// support the escapes \" \\ \n \t. Later assignments override earlier ones.
struct ConfigValue {
  enum class Kind { kString, kNumber, kBool, kList };
  Kind kind = Kind::kString;
  std::string text;                // scalar text (unquoted)
  std::vector<std::string> items;  // list elements, unquoted

  friend bool operator==(const ConfigValue&, const ConfigValue&) = default;
};

class ConfigFile {
 public:
  static ConfigFile parse(std::string_view text, std::filesystem::path base_dir = {}) {
    ConfigFile cfg;
    cfg.base_dir_ = std::move(base_dir);
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      const std::string line = strip(uncomment(raw));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "unterminated section header");
        section = strip(line.substr(1, line.size() - 2));
        if (!valid_key(section)) fail(line_no, "bad section name '" + section + "'");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail(line_no, "expected key = value");
      const std::string key = strip(line.substr(0, eq));
      if (!valid_key(key)) fail(line_no, "bad key '" + key + "'");
      cfg.values_[section.empty() ? key : section + "." + key] = parse_value(strip(line.substr(eq + 1)), line_no);
    }
    return cfg;
  }

  static ConfigFile load(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse(buf.str(), path.parent_path());
  }

  // Applies a "--set section.key=value" override; value uses file syntax,
  // bare words are taken as strings.
  void set(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ConfigError("override must look like key=value: " + std::string(assignment));
    const std::string key = strip(std::string(assignment.substr(0, eq)));
    std::string value = strip(std::string(assignment.substr(eq + 1)));
    ConfigValue v;
    try {
      v = parse_value(value, 0);
    } catch (const ConfigError&) {
      v = ConfigValue{ConfigValue::Kind::kString, value, {}};
    }
    values_[key] = std::move(v);
  }

  bool has(const std::string& key) const { return values_.contains(key); }
  const std::map<std::string, ConfigValue>& values() const { return values_; }
  const std::filesystem::path& base_dir() const { return base_dir_; }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.kind == ConfigValue::Kind::kList) throw ConfigError(key + ": expected a scalar");
    return it->second.text;
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return to_double(key, it->second.text);
  }

  long long get_int(const std::string& key, long long fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    long long out = 0;
    const auto& t = it->second.text;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc() || p != t.data() + t.size()) throw ConfigError(key + ": expected an integer, got '" + t + "'");
    return out;
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.text == "true") return true;
    if (it->second.text == "false") return false;
    throw ConfigError(key + ": expected true or false");
  }

  // A scalar is accepted as a one-element list.
  std::vector<std::string> get_list(const std::string& key, std::vector<std::string> fallback = {}) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.kind == ConfigValue::Kind::kList) return it->second.items;
    return {it->second.text};
  }

  // Paths are resolved against the directory of the config file.
  std::string resolve_path(const std::string& p) const {
    if (p.empty()) return p;
    const std::filesystem::path path(p);
    if (path.is_absolute() || base_dir_.empty()) return path.lexically_normal().string();
    return (base_dir_ / path).lexically_normal().string();
  }

 private:
  std::map<std::string, ConfigValue> values_;
  std::filesystem::path base_dir_;

  [[noreturn]] static void fail(std::size_t line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
  }

  static std::string strip(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
  }

  // Drops a trailing comment, ignoring '#' inside quotes.
  static std::string uncomment(std::string_view s) {
    char quote = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char c = s[i];
      if (quote != 0) {
        if (c == '\\' && quote == '"') ++i;
        else if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '#') {
        return std::string(s.substr(0, i));
      }
    }
    return std::string(s);
  }

  static bool valid_key(std::string_view k) {
    if (k.empty()) return false;
    for (char c : k) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
    }
    return true;
  }

  static double to_double(const std::string& key, const std::string& t) {
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(key + ": expected a number, got '" + t + "'");
  }

  // Reads one scalar starting at s[i]; advances i past it.
  static std::pair<ConfigValue::Kind, std::string> scalar(std::string_view s, std::size_t& i, std::size_t line) {
    if (s[i] == '"' || s[i] == '\'') {
      const char q = s[i++];
      std::string out;
      while (i < s.size() && s[i] != q) {
        if (q == '"' && s[i] == '\\' && i + 1 < s.size()) {
          const char e = s[++i];
          out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        } else {
          out += s[i];
        }
        ++i;
      }
      if (i >= s.size()) fail(line, "unterminated string");
      ++i;
      return {ConfigValue::Kind::kString, out};
    }
    const std::size_t start = i;
    while (i < s.size() && s[i] != ',' && s[i] != ']') ++i;
    const std::string word = strip(s.substr(start, i - start));
    if (word == "true" || word == "false") return {ConfigValue::Kind::kBool, word};
    if (word.empty()) fail(line, "missing value");
    to_double_or_fail(word, line);
    return {ConfigValue::Kind::kNumber, word};
  }

  static void to_double_or_fail(const std::string& word, std::size_t line) {
    try {
      std::size_t used = 0;
      (void)std::stod(word, &used);
      if (used == word.size()) return;
    } catch (const std::exception&) {
    }
    fail(line, "cannot parse value '" + word + "' (strings need quotes)");
  }

  static ConfigValue parse_value(const std::string& s, std::size_t line) {
    if (s.empty()) fail(line, "missing value");
    ConfigValue v;
    std::size_t i = 0;
    if (s.front() != '[') {
      auto [kind, text] = scalar(s, i, line);
      if (!strip(std::string_view(s).substr(i)).empty()) fail(line, "trailing characters after value");
      v.kind = kind;
      v.text = std::move(text);
      return v;
    }
    v.kind = ConfigValue::Kind::kList;
    ++i;
    auto skip_ws = [&] {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    };
    skip_ws();
    if (i < s.size() && s[i] == ']') {
      ++i;
    } else {
      while (true) {
        skip_ws();
        if (i >= s.size()) fail(line, "unterminated list");
        if (s[i] == ']') {  // trailing comma
          ++i;
          break;
        }
        v.items.push_back(scalar(s, i, line).second);
        skip_ws();
        if (i >= s.size()) fail(line, "unterminated list");
        if (s[i] == ',') {
          ++i;
          continue;
        }
        if (s[i] == ']') {
          ++i;
          break;
        }
        fail(line, "expected , or ] in list");
      }
    }
    if (!strip(std::string_view(s).substr(i)).empty()) fail(line, "trailing characters after list");
    return v;
  }
};

}  // namespace sonnetssl
