#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ringopto/config.hpp"
#include "ringopto/errors.hpp"
#include "ringopto/sweep.hpp"

namespace ringopto {

inline constexpr const char* kVersion = "1.0.0";

/// `axis,<labels...>,stable`, one line per grid point. Unstable rows leave
/// the value fields empty.
inline std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::string out = "axis";
  for (const auto& q : spec.quantities) out += "," + q.label;
  out += ",stable\n";
  for (const auto& row : rows) {
    out += format_double(row.axis_value);
    for (std::size_t i = 0; i < spec.quantities.size(); ++i) {
      out += ",";
      if (row.stable) out += format_double(row.values[i]);
    }
    out += row.stable ? ",1\n" : ",0\n";
  }
  return out;
}

inline nlohmann::ordered_json sweep_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json j;
  j["axis"] = std::string(axis_name(spec.axis));
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    r["axis_value"] = row.axis_value;
    r["stable"] = row.stable;
    if (row.stable) {
      nlohmann::ordered_json values = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < spec.quantities.size(); ++i) values[spec.quantities[i].label] = row.values[i];
      r["values"] = std::move(values);
    }
    j["rows"].push_back(std::move(r));
  }
  return j;
}

inline nlohmann::ordered_json physical_json(const PhysicalParams& p) {
  return {{"power_w", p.power},         {"wavelength_m", p.wavelength}, {"mass_kg", p.mass},
          {"omega_m", p.omega_m},       {"kappa", p.kappa},             {"gamma_m", p.gamma_m},
          {"gamma_a", p.gamma_a},       {"g_a", p.g_a},                 {"theta", p.theta},
          {"length_m", p.length},       {"temperature_k", p.temperature}, {"squeeze_r", p.squeeze_r},
          {"squeeze_phi", p.squeeze_phi}, {"delta", p.delta},           {"delta_a", p.delta_a}};
}

/// Reproduction record for a sweep. `resolved_config` holds every config
/// key as text; load_run_config() accepts the manifest file directly.
inline nlohmann::ordered_json sweep_manifest(const RunConfig& cfg, const SweepSpec& spec,
                                             const std::vector<SweepRow>& rows, double seconds) {
  nlohmann::ordered_json m;
  m["artifact"] = "ringopto";
  m["version"] = kVersion;
  nlohmann::ordered_json resolved = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_entries(cfg)) resolved[k] = v;
  m["resolved_config"] = std::move(resolved);
  m["physical_params_si"] = physical_json(spec.base);

  nlohmann::ordered_json grid;
  grid["axis"] = std::string(axis_name(spec.axis));
  grid["min"] = spec.min;
  grid["max"] = spec.max;
  grid["count"] = spec.count;
  grid["scale"] = std::string(scale_name(spec.scale));
  grid["normalize_axis"] = spec.normalize_axis;
  m["grid"] = std::move(grid);

  nlohmann::ordered_json labels = nlohmann::ordered_json::array();
  for (const auto& q : spec.quantities) labels.push_back(q.label);
  m["quantities"] = std::move(labels);
  std::size_t unstable = 0;
  for (const auto& r : rows) unstable += r.stable ? 0 : 1;
  m["unstable_points"] = unstable;
  m["duration_seconds"] = seconds;
  return m;
}

/// Reads either a `key = value` config or a sweep manifest.
inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') return parse_config(text);

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("", std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.contains("resolved_config") || !j["resolved_config"].is_object())
    throw ConfigError("resolved_config", "manifest lacks a resolved_config object");
  std::string flat;
  for (const auto& [k, v] : j["resolved_config"].items()) {
    if (!v.is_string()) throw ConfigError(k, "manifest values must be strings");
    flat += k + " = " + v.get<std::string>() + "\n";
  }
  return parse_config(flat);
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("output_path", "cannot write '" + path + "'");
  out << contents;
  if (!out.flush()) throw ConfigError("output_path", "write to '" + path + "' failed");
}

}  // namespace ringopto
