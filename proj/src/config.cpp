#include "qfric/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qfric/constants.hpp"

namespace qfric {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [p, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && p == last && std::isfinite(out);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) items.push_back(trim(cur));
  return items;
}

const KeyInfo* find_key(const std::string& name) {
  for (const KeyInfo& k : config_keys())
    if (k.name == name) return &k;
  return nullptr;
}

void check_value(const KeyInfo& k, const std::string& value) {
  double d = 0.0;
  switch (k.type) {
    case KeyType::number:
      if (!parse_double(value, d)) throw ConfigError(k.name, "expected a finite number, got '" + value + "'");
      break;
    case KeyType::integer: {
      long n = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || p != value.data() + value.size())
        throw ConfigError(k.name, "expected an integer, got '" + value + "'");
      break;
    }
    case KeyType::choice:
      if (std::find(k.choices.begin(), k.choices.end(), value) == k.choices.end()) {
        std::string opts;
        for (const auto& c : k.choices) opts += (opts.empty() ? "" : "|") + c;
        throw ConfigError(k.name, "expected one of " + opts + ", got '" + value + "'");
      }
      break;
    case KeyType::boolean:
      if (value != "true" && value != "false") throw ConfigError(k.name, "expected true|false, got '" + value + "'");
      break;
    case KeyType::number_list:
      for (const std::string& item : split_list(value))
        if (!parse_double(item, d)) throw ConfigError(k.name, "list entry '" + item + "' is not a finite number");
      break;
    case KeyType::text:
      break;
  }
}

double require_positive(const KeyValueConfig& cfg, const std::string& key) {
  const double v = cfg.get_number(key);
  if (!(v > 0.0)) throw ConfigError(key, "must be positive");
  return v;
}

}  // namespace

const std::vector<KeyInfo>& config_keys() {
  static const std::vector<KeyInfo> keys = {
      {"material.omega_p_eV", KeyType::number, "", "eV", "Drude plasma frequency (with material.gamma_eV)", {}},
      {"material.gamma_eV", KeyType::number, "", "eV", "Drude damping rate", {}},
      {"material.rho_ohm_m", KeyType::number, "", "Ohm m",
       "Ohmic surface resistivity; excludes the Drude pair. r = r_real + 2i eps0 rho w", {}},
      {"material.r_real", KeyType::number, "1", "", "Real part of r for an Ohmic surface", {}},
      {"material.label", KeyType::text, "surface", "", "Free-text material name", {}},
      {"atom.alpha0_A3_4pieps0", KeyType::number, "", "A^3", "Static polarizability in 4 pi eps0 units", {}},
      {"atom.omega_a_eV", KeyType::number, "", "eV", "Atomic transition frequency", {}},
      {"atom.mass_u", KeyType::number, "", "u", "Atomic mass", {}},
      {"scenario.za_nm", KeyType::number, "5", "nm", "Atom-surface distance", {}},
      {"scenario.v_km_s", KeyType::number, "10", "km/s", "Velocity along x (signed)", {}},
      {"solver.mode", KeyType::choice, "ness", "", "Power spectrum: full nonequilibrium or local equilibrium",
       {"ness", "lte"}},
      {"solver.backaction", KeyType::choice, "on", "", "Doppler-dressed (on) or static (off) surface response",
       {"on", "off"}},
      {"quad.rel_tol", KeyType::number, "1e-6", "", "Relative tolerance of the inner k-plane integrals", {}},
      {"quad.abs_floor", KeyType::number, "1e-9", "",
       "Tensor entries below this fraction of the largest entry are exempt from the relative test", {}},
      {"quad.max_subdiv", KeyType::integer, "2000", "", "Subdivision budget per adaptive integral", {}},
      {"quad.angular_order", KeyType::integer, "1", "", "Initial angular panels per quarter of the k-plane", {}},
      {"quad.force_rel_tol", KeyType::number, "1e-3", "", "Relative tolerance of the outer force integral", {}},
      {"quad.moment_rel_tol", KeyType::number, "1e-7", "", "Relative tolerance of the spin moment integrals", {}},
      {"quad.moment_inner_rel_tol", KeyType::number, "1e-10", "", "Inner tolerance behind the spin moments", {}},
      {"sweep.axis", KeyType::choice, "v", "", "Swept quantity: velocity (v, km/s) or distance (za, nm)",
       {"v", "za"}},
      {"sweep.values", KeyType::number_list, "", "km/s or nm", "Explicit comma-separated sweep values", {}},
      {"sweep.min", KeyType::number, "", "km/s or nm", "Range start (when sweep.values is absent)", {}},
      {"sweep.max", KeyType::number, "", "km/s or nm", "Range end", {}},
      {"sweep.points", KeyType::integer, "10", "", "Number of range points", {}},
      {"sweep.spacing", KeyType::choice, "log", "", "Range spacing", {"log", "linear"}},
      {"sweep.provenance", KeyType::choice, "full", "", "Full pipeline or closed-form asymptotics",
       {"full", "asymptotic"}},
      {"sweep.spin", KeyType::boolean, "true", "", "Also compute the spin moments (Omega, L)", {}},
      {"sweep.threads", KeyType::integer, "0", "", "Worker threads; 0 uses the hardware concurrency", {}},
      {"sweep.output", KeyType::text, "", "", "CSV path; empty writes to stdout", {}},
  };
  return keys;
}

std::string config_reference() {
  std::ostringstream out;
  out << "| key | type | default | unit | description |\n|---|---|---|---|---|\n";
  for (const KeyInfo& k : config_keys()) {
    std::string type;
    switch (k.type) {
      case KeyType::number: type = "number"; break;
      case KeyType::integer: type = "integer"; break;
      case KeyType::text: type = "text"; break;
      case KeyType::boolean: type = "true|false"; break;
      case KeyType::number_list: type = "number list"; break;
      case KeyType::choice:
        for (const auto& c : k.choices) type += (type.empty() ? "" : "\\|") + c;
        break;
    }
    out << "| `" << k.name << "` | " << type << " | " << (k.default_value.empty() ? "-" : k.default_value) << " | "
        << (k.unit.empty() ? "-" : k.unit) << " | " << k.doc << " |\n";
  }
  return out.str();
}

KeyValueConfig KeyValueConfig::parse(std::string_view text, const std::string& origin) {
  KeyValueConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    try {
      cfg.set(key, value);
    } catch (const ConfigError& e) {
      throw e.located(origin + ":" + std::to_string(lineno));
    }
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  const KeyInfo* k = find_key(key);
  if (!k) throw ConfigError(key, "unknown key");
  check_value(*k, value);
  entries_[key] = value;
}

void KeyValueConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("", "override '" + assignment + "' is not of the form key=value");
  set(trim(std::string_view(assignment).substr(0, eq)), trim(std::string_view(assignment).substr(eq + 1)));
}

void KeyValueConfig::merge(const KeyValueConfig& other) {
  for (const auto& [k, v] : other.entries_) entries_[k] = v;
}

std::string KeyValueConfig::get(const std::string& key) const {
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  const KeyInfo* k = find_key(key);
  if (!k) throw ConfigError(key, "unknown key");
  if (k->default_value.empty() && k->type != KeyType::text) throw ConfigError(key, "required key is missing");
  return k->default_value;
}

double KeyValueConfig::get_number(const std::string& key) const {
  double d = 0.0;
  if (!parse_double(get(key), d)) throw ConfigError(key, "not a number");
  return d;
}

long KeyValueConfig::get_integer(const std::string& key) const {
  const std::string s = get(key);
  long n = 0;
  std::from_chars(s.data(), s.data() + s.size(), n);
  return n;
}

bool KeyValueConfig::get_bool(const std::string& key) const { return get(key) == "true"; }

std::vector<double> KeyValueConfig::get_list(const std::string& key) const {
  std::vector<double> out;
  const std::string s = get(key);
  if (trim(s).empty()) return out;
  for (const std::string& item : split_list(s)) {
    double d = 0.0;
    if (!parse_double(item, d)) throw ConfigError(key, "list entry '" + item + "' is not a finite number");
    out.push_back(d);
  }
  return out;
}

std::string KeyValueConfig::to_text() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

std::vector<std::string> preset_names() { return {"rb-au-fig2", "li-na"}; }

KeyValueConfig preset(const std::string& name) {
  if (name == "rb-au-fig2") {
    return KeyValueConfig::parse(R"(# Rb over gold
material.omega_p_eV = 9
material.gamma_eV = 0.035
material.label = gold
atom.alpha0_A3_4pieps0 = 47.28
atom.omega_a_eV = 1.3
atom.mass_u = 86.9
scenario.za_nm = 5
scenario.v_km_s = 10
sweep.axis = v
sweep.min = 1
sweep.max = 300
sweep.points = 16
sweep.spacing = log
)",
                                 "preset rb-au-fig2");
  }
  if (name == "li-na") {
    return KeyValueConfig::parse(R"(# Li over an Ohmic sodium surface
material.rho_ohm_m = 8e-7
material.label = sodium
atom.alpha0_A3_4pieps0 = 24.33
atom.omega_a_eV = 1.848
atom.mass_u = 7.02
scenario.za_nm = 5
scenario.v_km_s = 10
sweep.axis = v
sweep.values = 10
)",
                                 "preset li-na");
  }
  throw ConfigError("", "unknown preset '" + name + "'");
}

Scenario build_scenario(const KeyValueConfig& cfg) {
  const bool drude = cfg.has("material.omega_p_eV") || cfg.has("material.gamma_eV");
  const bool ohmic = cfg.has("material.rho_ohm_m");
  if (drude && ohmic)
    throw ConfigError("material.rho_ohm_m", "cannot be combined with material.omega_p_eV / material.gamma_eV");
  if (!drude && !ohmic) throw ConfigError("material", "set either material.rho_ohm_m or the Drude pair");

  const std::string label = cfg.get("material.label");
  Material mat = ohmic ? Material::ohmic(require_positive(cfg, "material.rho_ohm_m"), cfg.get_number("material.r_real"),
                                         label)
                       : Material::drude_ev(require_positive(cfg, "material.omega_p_eV"),
                                            require_positive(cfg, "material.gamma_eV"), label);

  const AtomParams atom = AtomParams::from_boundary(require_positive(cfg, "atom.alpha0_A3_4pieps0"),
                                                    require_positive(cfg, "atom.omega_a_eV"),
                                                    require_positive(cfg, "atom.mass_u"));
  Scenario s{atom, mat, 0.0, 0.0, SolverMode::ness, Backaction::on, Tolerances{}};
  s.za = require_positive(cfg, "scenario.za_nm") * constants::nm;
  s.v = cfg.get_number("scenario.v_km_s") * constants::km_per_s;
  s.mode = cfg.get("solver.mode") == "lte" ? SolverMode::lte : SolverMode::ness;
  s.backaction = cfg.get("solver.backaction") == "off" ? Backaction::off : Backaction::on;

  s.tol.inner = require_positive(cfg, "quad.rel_tol");
  s.tol.force = require_positive(cfg, "quad.force_rel_tol");
  s.tol.moment = require_positive(cfg, "quad.moment_rel_tol");
  s.tol.moment_inner = require_positive(cfg, "quad.moment_inner_rel_tol");
  s.tol.component_floor = cfg.get_number("quad.abs_floor");
  if (s.tol.component_floor < 0.0) throw ConfigError("quad.abs_floor", "must be non-negative");
  const long subdiv = cfg.get_integer("quad.max_subdiv");
  if (subdiv < 1) throw ConfigError("quad.max_subdiv", "must be at least 1");
  s.tol.max_subdivisions = static_cast<int>(subdiv);
  const long order = cfg.get_integer("quad.angular_order");
  if (order < 1 || order > 64) throw ConfigError("quad.angular_order", "must be between 1 and 64");
  s.tol.angular_panels = static_cast<int>(order);
  return s;
}

SweepConfig build_sweep(const KeyValueConfig& cfg) {
  SweepConfig sc{build_scenario(cfg)};
  sc.axis = cfg.get("sweep.axis") == "za" ? SweepAxis::distance : SweepAxis::velocity;
  const double unit = sc.axis == SweepAxis::velocity ? constants::km_per_s : constants::nm;

  std::vector<double> raw;
  if (cfg.has("sweep.values")) {
    raw = cfg.get_list("sweep.values");
    if (raw.empty()) throw ConfigError("sweep.values", "sweep list is empty");
  } else if (cfg.has("sweep.min") || cfg.has("sweep.max")) {
    const double lo = cfg.get_number("sweep.min"), hi = cfg.get_number("sweep.max");
    const long n = cfg.get_integer("sweep.points");
    if (n < 1) throw ConfigError("sweep.points", "must be at least 1");
    const bool log = cfg.get("sweep.spacing") == "log";
    if (log && !(lo > 0.0 && hi > 0.0)) throw ConfigError("sweep.min", "log spacing needs positive bounds");
    for (long i = 0; i < n; ++i) {
      const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      raw.push_back(log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
  } else {
    raw = {sc.axis == SweepAxis::velocity ? cfg.get_number("scenario.v_km_s") : cfg.get_number("scenario.za_nm")};
  }
  for (double x : raw) {
    const double si = x * unit;
    if (std::find(sc.values.begin(), sc.values.end(), si) == sc.values.end()) sc.values.push_back(si);
  }

  sc.provenance = cfg.get("sweep.provenance") == "asymptotic" ? Provenance::asymptotic : Provenance::full;
  sc.with_spin = cfg.get_bool("sweep.spin");
  const long threads = cfg.get_integer("sweep.threads");
  if (threads < 0) throw ConfigError("sweep.threads", "must be non-negative");
  sc.threads = static_cast<unsigned>(threads);
  sc.output = cfg.get("sweep.output");
  sc.validate();
  return sc;
}

void SweepConfig::validate() const {
  if (values.empty()) throw ConfigError("sweep.values", "sweep list is empty");
  for (double x : values) {
    if (!std::isfinite(x) || !(x > 0.0))
      throw ConfigError("sweep.values", "sweep values must be positive and finite");
  }
  base.validate();
}

Scenario SweepConfig::point(std::size_t i) const {
  Scenario s = base;
  if (axis == SweepAxis::velocity)
    s.v = values.at(i);
  else
    s.za = values.at(i);
  return s;
}

}  // namespace qfric
