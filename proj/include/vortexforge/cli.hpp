#pragma once

#include <map>
#include <string>

namespace vortexforge {

/// Run configuration shared by every subcommand. Values come from a flat
/// key=value config file and are overridden by command-line flags; the
/// VORTEXFORGE_OUT environment variable overrides the output directory last.
struct RunConfig {
  int n = 2;
  std::string mu = "1";           // rational string
  unsigned precision_bits = 256;
  std::map<std::string, double> tolerances;
  std::string output_dir = "out";
  std::string format = "json";    // json | csv | svg
  std::uint64_t seed = 20240601;  // fixed default seed for anything randomized
  unsigned jobs = 1;
  double epsilon = 0.05;
  int profile_degree = 1;
  double r_max = 30;
  int resolution = 513;
  bool timings = false;           // wall_ms fields stay null when off
  std::string construction = "auto";  // auto | wronskian | recursive
  bool corrupt = false;           // test hook: injects a coefficient error

  double tol(const std::string& name, double fallback) const {
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
  }
};

/// Flat key=value file, '#' comments. Unknown keys are rejected.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Apply the VORTEXFORGE_OUT override.
void apply_env_overrides(RunConfig& cfg);

// Subcommand drivers; each writes its artifacts under cfg.output_dir and
// returns the process exit code (0 pass, 1 verification failure, 2 usage).
int cmd_poly(const RunConfig& cfg);
int cmd_roots(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_nondeg(const RunConfig& cfg);
int cmd_profile(const RunConfig& cfg);
int cmd_field(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);

}  // namespace vortexforge
