#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qfric/observables.hpp"

namespace qfric {

/// Invalid configuration; key() names the offending entry (empty for syntax errors).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  /// Same error with a location prefix ("file:line: ...").
  ConfigError located(const std::string& where) const {
    ConfigError e("", where + ": " + what());
    e.key_ = key_;
    return e;
  }
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class KeyType { number, integer, text, choice, number_list, boolean };

struct KeyInfo {
  std::string name;
  KeyType type;
  std::string default_value;  // empty: no default
  std::string unit;
  std::string doc;
  std::vector<std::string> choices;  // KeyType::choice only
};

/// Every recognised key, in documentation order.
const std::vector<KeyInfo>& config_keys();

/// Markdown table of config_keys().
std::string config_reference();

/// Flat "key = value" configuration. Later assignments override earlier ones.
class KeyValueConfig {
 public:
  /// '#' starts a comment; blank lines are ignored. origin is used in error messages.
  static KeyValueConfig parse(std::string_view text, const std::string& origin = "<text>");
  static KeyValueConfig load(const std::string& path);

  /// Sets a key after checking it is known and its value has the declared type.
  void set(const std::string& key, const std::string& value);
  /// "key=value" form used on the command line.
  void apply_override(const std::string& assignment);
  void merge(const KeyValueConfig& other);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  /// Value or the documented default; throws ConfigError when neither exists.
  std::string get(const std::string& key) const;
  double get_number(const std::string& key) const;
  long get_integer(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  /// Canonical text form (sorted keys), parseable by parse().
  std::string to_text() const;

 private:
  std::map<std::string, std::string> entries_;
};

std::vector<std::string> preset_names();
/// Throws ConfigError for unknown names.
KeyValueConfig preset(const std::string& name);

enum class SweepAxis { velocity, distance };

struct SweepConfig {
  Scenario base;
  SweepAxis axis = SweepAxis::velocity;
  std::vector<double> values;  // SI: m/s or m
  Provenance provenance = Provenance::full;
  bool with_spin = true;
  unsigned threads = 0;  // 0: hardware concurrency
  std::string output;    // empty: stdout

  void validate() const;
  /// Scenario for the i-th sweep value.
  Scenario point(std::size_t i) const;
};

/// Material, atom, solver and tolerance keys only.
Scenario build_scenario(const KeyValueConfig& cfg);
SweepConfig build_sweep(const KeyValueConfig& cfg);

}  // namespace qfric
