#include "tsgl/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tsgl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, const std::string& key, const std::string& source) {
  const auto t = trim(text);
  double value = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || t.empty() || !std::isfinite(value)) {
    throw ConfigError(source + ": key '" + key + "' expects a number, got '" + std::string(t) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || seps.find(s[i]) != std::string_view::npos) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text, std::string source) {
  KeyValueConfig cfg;
  cfg.source_ = std::move(source);
  std::size_t line_no = 0;
  for (auto raw : split(text, "\n")) {
    ++line_no;
    auto line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = cfg.source_ + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (!cfg.entries_.emplace(key, value).second) {
      throw ConfigError(where + ": duplicate key '" + key + "'");
    }
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

KeyValueConfig KeyValueConfig::from_argument(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return load(arg);
  if (arg.find('=') == std::string::npos) {
    throw ConfigError("'" + arg + "' is neither a config file nor an inline key=value list");
  }
  std::string text = arg;
  std::replace(text.begin(), text.end(), ';', '\n');
  return parse(text, "<inline>");
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.count(key) != 0; }

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(source_ + ": missing required key '" + key + "'");
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  return parse_number(get_string(key), key, source_);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::size_t KeyValueConfig::get_count(const std::string& key, std::size_t fallback) const {
  if (!has(key)) return fallback;
  const double x = get_double(key);
  if (x < 0.0 || std::floor(x) != x) {
    throw ConfigError(source_ + ": key '" + key + "' expects a non-negative integer");
  }
  return static_cast<std::size_t>(x);
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
  std::vector<double> out;
  const auto text = get_string(key);
  for (auto item : split(text, ", \t")) {
    if (trim(item).empty()) continue;
    out.push_back(parse_number(item, key, source_));
  }
  if (out.empty()) throw ConfigError(source_ + ": key '" + key + "' has an empty list");
  return out;
}

std::vector<std::string> KeyValueConfig::get_list(const std::string& key) const {
  std::vector<std::string> out;
  const auto text = get_string(key);
  for (auto item : split(text, ",")) {
    auto t = trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

void KeyValueConfig::require_known(const std::vector<std::string>& known) const {
  for (const auto& [key, value] : entries_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(source_ + ": unknown key '" + key + "'");
    }
  }
}

const std::vector<std::string>& model_keys() {
  static const std::vector<std::string> keys{"family", "alpha", "beta", "gamma_poly"};
  return keys;
}

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = [] {
    auto k = model_keys();
    k.insert(k.end(), {"G", "c", "L", "d"});
    return k;
  }();
  return keys;
}

BreachModel model_from_config(const KeyValueConfig& cfg) {
  const auto family = cfg.get_string("family");
  try {
    if (family == "gl1") {
      return BreachModel::gl_class1(cfg.get_double("alpha"), cfg.get_double("beta"));
    }
    if (family == "gl2") return BreachModel::gl_class2(cfg.get_double("alpha"));
    if (family == "custom") {
      return BreachModel::custom_polynomial(cfg.get_double("alpha", 1.0),
                                            cfg.get_double_list("gamma_poly"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(cfg.source() + ": " + e.what());
  }
  throw ConfigError(cfg.source() + ": unknown family '" + family + "' (expected gl1, gl2 or custom)");
}

Scenario scenario_from_config(const KeyValueConfig& cfg) {
  auto model = model_from_config(cfg);
  try {
    return Scenario(std::move(model), AttackerParams(cfg.get_double("G"), cfg.get_double("c")),
                    DefenderParams(cfg.get_double("L"), cfg.get_double("d")));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(cfg.source() + ": " + e.what());
  }
}

}  // namespace tsgl
