// Command-line front end: construction, certification, verification and
// export of the Adler-Moser vortex machinery.
#include <CLI11.hpp>
#include <iostream>

#include "vortexforge/cli.hpp"

int main(int argc, char** argv) {
  using namespace vortexforge;
  CLI::App app{"vortexforge: Adler-Moser polynomials, point-vortex equilibria and "
               "Gross-Pitaevskii traveling-wave assembly"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::vector<std::pair<std::string, double>> tol_flags;

  app.add_option("--config", config_path, "flat key=value config file");
  app.add_option("--n", cfg.n, "order of the Adler-Moser family");
  app.add_option("--mu", cfg.mu, "translation parameter (rational string)");
  app.add_option("--precision", cfg.precision_bits, "root precision in bits");
  app.add_option("--jobs", cfg.jobs, "worker parallelism bound");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--out", cfg.output_dir, "output directory");
  app.add_option("--format", cfg.format, "extra export format: json|csv|svg");
  app.add_option("--epsilon", cfg.epsilon, "traveling-wave speed");
  app.add_option("--d", cfg.profile_degree, "vortex profile degree");
  app.add_option("--r-max", cfg.r_max, "profile domain radius");
  app.add_option("--resolution", cfg.resolution, "field sampling resolution");
  app.add_flag("--timings", cfg.timings, "include wall_ms in reports");
  app.add_option("--construction", cfg.construction, "auto|wronskian|recursive");
  app.add_flag("--corrupt", cfg.corrupt, "test hook: inject a coefficient error")
      ->group("");  // hidden

  auto* poly = app.add_subcommand("poly", "emit A_n, B_n exactly");
  auto* roots = app.add_subcommand("roots", "high-precision roots of A_n");
  auto* verify = app.add_subcommand("verify", "exact identity suite + certification");
  auto* nondeg = app.add_subcommand("nondeg", "nondegeneracy certificate");
  auto* profile = app.add_subcommand("profile", "vortex profile S_d and checks");
  auto* field = app.add_subcommand("field", "sample the approximate traveling wave");
  auto* report = app.add_subcommand("report", "combined verification report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      RunConfig from_file = load_config_file(config_path, RunConfig{});
      // flags explicitly given on the command line win over file values
      RunConfig merged = from_file;
      if (app.count("--n")) merged.n = cfg.n;
      if (app.count("--mu")) merged.mu = cfg.mu;
      if (app.count("--precision")) merged.precision_bits = cfg.precision_bits;
      if (app.count("--jobs")) merged.jobs = cfg.jobs;
      if (app.count("--seed")) merged.seed = cfg.seed;
      if (app.count("--out")) merged.output_dir = cfg.output_dir;
      if (app.count("--format")) merged.format = cfg.format;
      if (app.count("--epsilon")) merged.epsilon = cfg.epsilon;
      if (app.count("--d")) merged.profile_degree = cfg.profile_degree;
      if (app.count("--r-max")) merged.r_max = cfg.r_max;
      if (app.count("--resolution")) merged.resolution = cfg.resolution;
      if (app.count("--timings")) merged.timings = cfg.timings;
      if (app.count("--construction")) merged.construction = cfg.construction;
      if (app.count("--corrupt")) merged.corrupt = cfg.corrupt;
      cfg = merged;
    }
    apply_env_overrides(cfg);

    if (poly->parsed()) return cmd_poly(cfg);
    if (roots->parsed()) return cmd_roots(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (nondeg->parsed()) return cmd_nondeg(cfg);
    if (profile->parsed()) return cmd_profile(cfg);
    if (field->parsed()) return cmd_field(cfg);
    if (report->parsed()) return cmd_report(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
