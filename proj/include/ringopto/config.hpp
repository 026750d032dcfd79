#pragma once

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ringopto/errors.hpp"
#include "ringopto/params.hpp"
#include "ringopto/sweep.hpp"

namespace ringopto {

/// Physical inputs exactly as written in a config file. Units are part of
/// the key name; conversion to SI happens once, in to_physical().
struct ConfigParams {
  double power_mw = 35.0;
  double wavelength_nm = 1064.0;
  double mass_ng = 10.0;
  double omega_m_rad_s = 2.0 * std::numbers::pi * 1e7;
  double kappa_rad_s = std::numbers::pi * 1e7;
  double gamma_m_rad_s = 2.0 * std::numbers::pi * 1e2;
  double gamma_a_rad_s = std::numbers::pi * 1e7;
  double g_a_rad_s = 12.0 * std::numbers::pi * 1e6;
  double theta_rad = std::numbers::pi / 3.0;
  double length_mm = 1.0;
  double temperature_k = 1e-6;
  double squeeze_r = 0.0;
  double squeeze_phi = 0.0;
  double delta_over_omega_m = 1.0;
  double delta_a_over_omega_m = -1.0;

  bool operator==(const ConfigParams&) const = default;
};

struct SweepConfig {
  std::string axis = "T";
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  std::string scale = "linear";
  bool normalize_axis = false;
  std::vector<std::string> quantities;  // empty selects the standard set
  int threads = 1;

  bool operator==(const SweepConfig&) const = default;
};

struct OutputConfig {
  std::string path;
  std::string format = "csv";

  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  ConfigParams params;
  std::optional<SweepConfig> sweep;
  OutputConfig output;

  bool operator==(const RunConfig&) const = default;
};

namespace detail {

struct ParamKey {
  std::string_view key;
  double ConfigParams::*member;
  std::string_view field;  // PhysicalParams field validated from this key
};

inline constexpr std::array<ParamKey, 15> kParamKeys{{
    {"power_mw", &ConfigParams::power_mw, "power"},
    {"wavelength_nm", &ConfigParams::wavelength_nm, "wavelength"},
    {"mass_ng", &ConfigParams::mass_ng, "mass"},
    {"omega_m_rad_s", &ConfigParams::omega_m_rad_s, "omega_m"},
    {"kappa_rad_s", &ConfigParams::kappa_rad_s, "kappa"},
    {"gamma_m_rad_s", &ConfigParams::gamma_m_rad_s, "gamma_m"},
    {"gamma_a_rad_s", &ConfigParams::gamma_a_rad_s, "gamma_a"},
    {"g_a_rad_s", &ConfigParams::g_a_rad_s, "g_a"},
    {"theta_rad", &ConfigParams::theta_rad, "theta"},
    {"length_mm", &ConfigParams::length_mm, "length"},
    {"temperature_k", &ConfigParams::temperature_k, "temperature"},
    {"squeeze_r", &ConfigParams::squeeze_r, "squeeze_r"},
    {"squeeze_phi", &ConfigParams::squeeze_phi, "squeeze_phi"},
    {"delta_over_omega_m", &ConfigParams::delta_over_omega_m, "delta"},
    {"delta_a_over_omega_m", &ConfigParams::delta_a_over_omega_m, "delta_a"},
}};

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_number(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError(std::string(key), "not a number: '" + std::string(text) + "'");
  return v;
}

inline int parse_int(std::string_view key, std::string_view text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError(std::string(key), "not an integer: '" + std::string(text) + "'");
  return v;
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(std::string(key), "not a boolean: '" + std::string(text) + "'");
}

inline std::vector<std::string> parse_list(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

/// Parses `key = value` lines. `#` starts a comment. Unknown or repeated
/// keys are errors. Any `sweep_*` key creates the sweep section.
inline RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (!seen.emplace(key, line_no).second) throw ConfigError(key, "key given twice");

    bool handled = false;
    for (const auto& pk : detail::kParamKeys) {
      if (pk.key == key) {
        cfg.params.*pk.member = detail::parse_number(key, value);
        handled = true;
        break;
      }
    }
    if (handled) continue;

    if (key.starts_with("sweep_") && !cfg.sweep) cfg.sweep.emplace();
    if (key == "sweep_axis") cfg.sweep->axis = std::string(value);
    else if (key == "sweep_min") cfg.sweep->min = detail::parse_number(key, value);
    else if (key == "sweep_max") cfg.sweep->max = detail::parse_number(key, value);
    else if (key == "sweep_count") cfg.sweep->count = detail::parse_int(key, value);
    else if (key == "sweep_scale") cfg.sweep->scale = std::string(value);
    else if (key == "sweep_normalize_axis") cfg.sweep->normalize_axis = detail::parse_bool(key, value);
    else if (key == "sweep_quantities") cfg.sweep->quantities = detail::parse_list(value);
    else if (key == "sweep_threads") cfg.sweep->threads = detail::parse_int(key, value);
    else if (key == "output_path") cfg.output.path = std::string(value);
    else if (key == "output_format") cfg.output.format = std::string(value);
    else throw ConfigError(key, "unknown key");
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

/// Inverse of parse_config: every key, fixed order, 17 significant digits.
inline std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& pk : detail::kParamKeys)
    out.emplace_back(std::string(pk.key), format_double(cfg.params.*pk.member));
  if (cfg.sweep) {
    const SweepConfig& s = *cfg.sweep;
    out.emplace_back("sweep_axis", s.axis);
    out.emplace_back("sweep_min", format_double(s.min));
    out.emplace_back("sweep_max", format_double(s.max));
    out.emplace_back("sweep_count", std::to_string(s.count));
    out.emplace_back("sweep_scale", s.scale);
    out.emplace_back("sweep_normalize_axis", s.normalize_axis ? "true" : "false");
    std::string q;
    for (const auto& label : s.quantities) q += (q.empty() ? "" : ",") + label;
    if (!q.empty()) out.emplace_back("sweep_quantities", q);
    out.emplace_back("sweep_threads", std::to_string(s.threads));
  }
  if (!cfg.output.path.empty()) out.emplace_back("output_path", cfg.output.path);
  out.emplace_back("output_format", cfg.output.format);
  return out;
}

inline std::string to_config_text(const RunConfig& cfg) {
  std::string text;
  for (const auto& [k, v] : config_entries(cfg)) text += k + " = " + v + "\n";
  return text;
}

/// Converts to SI and validates. Errors name the config key, not the field.
inline PhysicalParams to_physical(const ConfigParams& c) {
  PhysicalParams p;
  p.power = c.power_mw * 1e-3;
  p.wavelength = c.wavelength_nm * 1e-9;
  p.mass = c.mass_ng * 1e-12;
  p.omega_m = c.omega_m_rad_s;
  p.kappa = c.kappa_rad_s;
  p.gamma_m = c.gamma_m_rad_s;
  p.gamma_a = c.gamma_a_rad_s;
  p.g_a = c.g_a_rad_s;
  p.theta = c.theta_rad;
  p.length = c.length_mm * 1e-3;
  p.temperature = c.temperature_k;
  p.squeeze_r = c.squeeze_r;
  p.squeeze_phi = c.squeeze_phi;
  p.delta = c.delta_over_omega_m * c.omega_m_rad_s;
  p.delta_a = c.delta_a_over_omega_m * c.omega_m_rad_s;
  try {
    validate(p);
  } catch (const InvalidParameter& e) {
    std::string key = e.field();
    for (const auto& pk : detail::kParamKeys)
      if (pk.field == e.field()) key = std::string(pk.key);
    throw ConfigError(key, e.what());
  }
  return p;
}

/// Builds the sweep from a config with a sweep section.
inline SweepSpec to_sweep_spec(const RunConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep_axis", "config has no sweep section");
  const SweepConfig& s = *cfg.sweep;
  SweepSpec spec;
  spec.base = to_physical(cfg.params);
  try {
    spec.axis = parse_axis(s.axis);
  } catch (const InvalidSweep& e) {
    throw ConfigError("sweep_axis", e.what());
  }
  try {
    spec.scale = parse_scale(s.scale);
  } catch (const InvalidSweep& e) {
    throw ConfigError("sweep_scale", e.what());
  }
  spec.min = s.min;
  spec.max = s.max;
  spec.count = s.count;
  spec.normalize_axis = s.normalize_axis;
  try {
    if (s.quantities.empty()) {
      spec.quantities = standard_quantities();
    } else {
      for (const auto& label : s.quantities) spec.quantities.push_back(parse_quantity(label));
    }
  } catch (const InvalidSweep& e) {
    throw ConfigError("sweep_quantities", e.what());
  }
  try {
    validate(spec);
  } catch (const InvalidSweep& e) {
    const std::string key = s.count < 2 ? "sweep_count" : "sweep_min";
    throw ConfigError(key, e.what());
  }
  if (s.threads < 1) throw ConfigError("sweep_threads", "must be >= 1");
  return spec;
}

}  // namespace ringopto
