// Command-line front end: `point` evaluates one parameter set, `sweep`
// walks a one-dimensional grid and writes CSV or JSON plus a manifest.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ringopto/io.hpp"
#include "ringopto/ringopto.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnstable = 2;

void print_value(const std::string& key, double v) {
  std::printf("%-24s = %s\n", key.c_str(), ringopto::format_double(v).c_str());
}

int run_point(const std::string& config_path) {
  const ringopto::RunConfig cfg = ringopto::load_run_config(config_path);
  if (cfg.sweep) throw ringopto::ConfigError("sweep_axis", "point mode takes a config without sweep keys");
  const ringopto::PhysicalParams p = ringopto::to_physical(cfg.params);

  using ringopto::Mode;
  auto quantities = ringopto::standard_quantities();
  // T_am2op duplicates T_am1op by mirror symmetry; print the three distinct ones.
  std::erase_if(quantities, [](const ringopto::Quantity& q) { return q.label == "T_am2op"; });
  const ringopto::PointReport r = ringopto::evaluate_point(p, quantities);

  print_value("omega_laser", r.derived.omega_laser);
  print_value("drive_E_L", r.derived.drive);
  print_value("g0", r.derived.g0);
  print_value("cos2_half_theta", r.derived.cos2);
  print_value("a_s_re", r.derived.amplitude.real());
  print_value("a_s_im", r.derived.amplitude.imag());
  print_value("coupling_G", r.derived.coupling);
  print_value("n_thermal", r.derived.n_thermal);
  print_value("squeeze_N", r.derived.squeeze_n);
  print_value("squeeze_M_re", r.derived.squeeze_m.real());
  print_value("squeeze_M_im", r.derived.squeeze_m.imag());
  print_value("max_real_eigenvalue", r.stability.max_real_part);
  std::printf("%-24s = %s\n", "stable", r.stability.stable ? "true" : "false");
  if (!r.stability.stable) return kExitUnstable;

  for (std::size_t i = 0; i < quantities.size(); ++i) print_value(quantities[i].label, r.values[i]);
  print_value("lyapunov_residual", r.residual);
  print_value("min_symplectic", r.min_symplectic);
  return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& out_flag, const std::string& format_flag) {
  ringopto::RunConfig cfg = ringopto::load_run_config(config_path);
  if (!cfg.sweep) throw ringopto::ConfigError("sweep_axis", "sweep mode needs sweep keys in the config");
  if (!out_flag.empty()) cfg.output.path = out_flag;
  if (!format_flag.empty()) cfg.output.format = format_flag;
  if (cfg.output.path.empty()) throw ringopto::ConfigError("output_path", "no output path (use --out)");
  if (cfg.output.format != "csv" && cfg.output.format != "json")
    throw ringopto::ConfigError("output_format", "must be csv or json");

  const ringopto::SweepSpec spec = ringopto::to_sweep_spec(cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto rows = ringopto::run_sweep(spec, static_cast<unsigned>(cfg.sweep->threads));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (cfg.output.format == "csv")
    ringopto::write_file(cfg.output.path, ringopto::sweep_csv(spec, rows));
  else
    ringopto::write_file(cfg.output.path, ringopto::sweep_json(spec, rows).dump(2) + "\n");
  ringopto::write_file(cfg.output.path + ".manifest.json",
                       ringopto::sweep_manifest(cfg, spec, rows, seconds).dump(2) + "\n");

  std::size_t unstable = 0;
  for (const auto& r : rows) unstable += r.stable ? 0 : 1;
  std::fprintf(stderr, "wrote %zu rows (%zu unstable) to %s\n", rows.size(), unstable,
               cfg.output.path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement in a ring-cavity atom-optomechanical system"};
  app.require_subcommand(1);

  std::string config_path;
  auto* point = app.add_subcommand("point", "evaluate a single parameter set");
  point->add_option("--config", config_path, "config file (key = value) or sweep manifest")->required();

  std::string sweep_config, out_path, format;
  auto* sweep = app.add_subcommand("sweep", "evaluate a one-dimensional parameter grid");
  sweep->add_option("--config", sweep_config, "config file with sweep_* keys, or a manifest")->required();
  sweep->add_option("--out", out_path, "output file; the manifest goes to <out>.manifest.json");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*point) return run_point(config_path);
    return run_sweep(sweep_config, out_path, format);
  } catch (const ringopto::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  }
  return kExitError;
}
