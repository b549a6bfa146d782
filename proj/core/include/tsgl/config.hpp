#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsgl/scenario.hpp"

namespace tsgl {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*
 * Flat key-value configuration.
 *
 *   # comment
 *   family = gl1        # trailing comments allowed
 *   gamma_poly = 0.875, 0.75, -0.5
 *
 * Inline form (command line): "family=gl1;alpha=1;beta=1". Keys are case
 * sensitive; repeating a key is an error.
 */
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text, std::string source = "<inline>");
  static KeyValueConfig load(const std::filesystem::path& path);
  /// An existing file path, or an inline list when the argument contains '='.
  static KeyValueConfig from_argument(const std::string& arg);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::size_t get_count(const std::string& key, std::size_t fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<std::string> get_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  /// Throws ConfigError naming the first key not in `known`.
  void require_known(const std::vector<std::string>& known) const;

  const std::string& source() const noexcept { return source_; }
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
  std::string source_;
};

/// Keys: family = gl1|gl2|custom, alpha, beta (gl1), gamma_poly (custom).
BreachModel model_from_config(const KeyValueConfig& cfg);
/// Model keys plus G, c, L, d.
Scenario scenario_from_config(const KeyValueConfig& cfg);

const std::vector<std::string>& model_keys();
const std::vector<std::string>& scenario_keys();

}  // namespace tsgl
