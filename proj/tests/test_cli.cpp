#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vortexforge/cli.hpp"
#include "vortexforge/reports.hpp"

using namespace vortexforge;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("vortexforge_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_binary(const std::string& args) {
  const char* bin = std::getenv("VORTEXFORGE_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("cmd_poly writes exact coefficients (n = 2 and n = 1)") {
  auto dir = scratch_dir("poly");
  RunConfig cfg;
  cfg.n = 2;
  cfg.output_dir = dir.string();
  CHECK(cmd_poly(cfg) == 0);
  Json j = Json::parse(slurp(dir / "poly.json"));
  CHECK(j["A"] == Json::array({"-3/8", "3/4", "3/2", "1"}));
  cfg.n = 1;
  CHECK(cmd_poly(cfg) == 0);
  j = Json::parse(slurp(dir / "poly.json"));
  CHECK(j["A"] == Json::array({"1/2", "1"}));
  CHECK(j["B"] == Json::array({"1/2", "-1"}));
}

TEST_CASE("cmd_poly rejects n = 0 with exit code 2") {
  RunConfig cfg;
  cfg.n = 0;
  cfg.output_dir = scratch_dir("poly0").string();
  CHECK(cmd_poly(cfg) == 2);
}

TEST_CASE("cmd_verify passes for n = 6 and fails when corrupted") {
  auto dir = scratch_dir("verify");
  RunConfig cfg;
  cfg.n = 6;
  cfg.output_dir = dir.string();
  CHECK(cmd_verify(cfg) == 0);
  Json j = Json::parse(slurp(dir / "verify.json"));
  CHECK(j["pass"].get<bool>());
  CHECK(j["wall_ms"].is_null());  // timings off by default: deterministic bytes

  cfg.corrupt = true;
  CHECK(cmd_verify(cfg) == 1);
  j = Json::parse(slurp(dir / "verify.json"));
  CHECK(!j["pass"].get<bool>());
  CHECK(!j["failed"].get<std::string>().empty());
}

TEST_CASE("cmd_nondeg produces the certificate schema") {
  auto dir = scratch_dir("nondeg");
  RunConfig cfg;
  cfg.n = 2;
  cfg.output_dir = dir.string();
  CHECK(cmd_nondeg(cfg) == 0);
  Json j = Json::parse(slurp(dir / "nondeg.json"));
  for (const char* key : {"n", "sigma_min", "sigma_max", "null_dim", "kernel_angles", "pass"})
    CHECK(j.contains(key));
  CHECK(j["pass"].get<bool>());
  CHECK(j["null_dim"] == 4);
}

TEST_CASE("determinism: identical configs give byte-identical outputs") {
  auto dir1 = scratch_dir("det1");
  auto dir2 = scratch_dir("det2");
  for (const auto& dir : {dir1, dir2}) {
    RunConfig cfg;
    cfg.n = 3;
    cfg.output_dir = dir.string();
    cfg.format = "csv";
    CHECK(cmd_verify(cfg) == 0);
    CHECK(cmd_roots(cfg) == 0);
    CHECK(cmd_poly(cfg) == 0);
  }
  for (const char* f : {"verify.json", "roots.json", "roots.csv", "poly.json"}) {
    CAPTURE(f);
    CHECK(slurp(dir1 / f) == slurp(dir2 / f));
  }
}

TEST_CASE("config file parsing with CLI-style overrides") {
  auto dir = scratch_dir("cfg");
  {
    std::ofstream out(dir / "run.cfg");
    out << "# sample config\n";
    out << "n = 4\n";
    out << "mu = 1\n";
    out << "tol.nondeg = 1e-6\n";
    out << "out = " << (dir / "artifacts").string() << "\n";
  }
  RunConfig cfg = load_config_file((dir / "run.cfg").string());
  CHECK(cfg.n == 4);
  CHECK(cfg.tolerances.at("nondeg") == 1e-6);
  CHECK(cfg.output_dir == (dir / "artifacts").string());

  std::ofstream bad(dir / "bad.cfg");
  bad << "unknown_key = 3\n";
  bad.close();
  CHECK_THROWS(load_config_file((dir / "bad.cfg").string()));
}

TEST_CASE("VORTEXFORGE_OUT overrides the output directory") {
  RunConfig cfg;
  cfg.output_dir = "ignored";
  setenv("VORTEXFORGE_OUT", "/tmp/vfx_env_out", 1);
  apply_env_overrides(cfg);
  unsetenv("VORTEXFORGE_OUT");
  CHECK(cfg.output_dir == "/tmp/vfx_env_out");
}

TEST_CASE("binary: exit codes across subcommands") {
  auto dir = scratch_dir("bin");
  std::string out = " --out " + (dir / "o").string();
  CHECK(run_binary("poly --n 2" + out) == 0);
  CHECK(run_binary("poly --n 0" + out) == 2);
  CHECK(run_binary("definitely-not-a-command") == 2);
  CHECK(run_binary("verify --n 4" + out) == 0);
  CHECK(run_binary("verify --n 4 --corrupt" + out) == 1);
  CHECK(run_binary("nondeg --n 1" + out) == 0);
}

TEST_CASE("binary: field subcommand writes CSV + SVGs and reports") {
  auto dir = scratch_dir("binfield");
  std::string out = " --out " + (dir / "o").string();
  CHECK(run_binary("field --n 1 --epsilon 0.1 --resolution 129" + out) == 0);
  for (const char* f : {"field.csv", "field_mag.svg", "field_phase.svg", "field.json"})
    CHECK(fs::exists(dir / "o" / f));
  Json j = Json::parse(slurp(dir / "o" / "field.json"));
  CHECK(j["symmetry"]["pass"].get<bool>());
  CHECK(j["winding"]["boundary"] == 0);
}

TEST_CASE("binary: profile subcommand") {
  auto dir = scratch_dir("binprof");
  std::string out = " --out " + (dir / "o").string();
  CHECK(run_binary("profile --d 1 --r-max 25" + out) == 0);
  Json j = Json::parse(slurp(dir / "o" / "profile.json"));
  CHECK(j["kappa"].get<double>() == doctest::Approx(0.5827).epsilon(1e-3));
  CHECK(j["near_zero"]["pass"].get<bool>());
}

TEST_CASE("poly round-trips through the JSON coefficient encoding") {
  auto fam = symmetric_family(4, Rational(1));
  Json j = poly_to_json(fam.A);
  CHECK(poly_from_json(j) == fam.A);
}
