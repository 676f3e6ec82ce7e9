#include "vortexforge/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vortexforge/parity.hpp"
#include "vortexforge/reports.hpp"
#include "vortexforge/util.hpp"

namespace vortexforge {

namespace fs = std::filesystem;

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "n") {
      base.n = std::stoi(value);
    } else if (key == "mu") {
      base.mu = value;
    } else if (key == "precision") {
      base.precision_bits = static_cast<unsigned>(std::stoul(value));
    } else if (key == "out") {
      base.output_dir = value;
    } else if (key == "format") {
      base.format = value;
    } else if (key == "seed") {
      base.seed = std::stoull(value);
    } else if (key == "jobs") {
      base.jobs = static_cast<unsigned>(std::stoul(value));
    } else if (key == "epsilon") {
      base.epsilon = std::stod(value);
    } else if (key == "d") {
      base.profile_degree = std::stoi(value);
    } else if (key == "r_max") {
      base.r_max = std::stod(value);
    } else if (key == "resolution") {
      base.resolution = std::stoi(value);
    } else if (key == "timings") {
      base.timings = value == "1" || value == "true";
    } else if (key == "construction") {
      base.construction = value;
    } else if (key.rfind("tol.", 0) == 0) {
      base.tolerances[key.substr(4)] = std::stod(value);
    } else {
      throw std::runtime_error("config line " + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  return base;
}

void apply_env_overrides(RunConfig& cfg) {
  if (const char* out = std::getenv("VORTEXFORGE_OUT")) cfg.output_dir = out;
}

namespace {

Construction construction_of(const RunConfig& cfg) {
  if (cfg.construction == "wronskian") return Construction::kWronskian;
  if (cfg.construction == "recursive") return Construction::kRecursive;
  return Construction::kAuto;
}

void write_json(const fs::path& path, const Json& j) { atomic_write(path, j.dump(2) + "\n"); }

}  // namespace

int cmd_poly(const RunConfig& cfg) {
  if (cfg.n < 1) {
    std::cerr << "poly: n must be >= 1\n";
    return 2;
  }
  Rational mu = rational_from_string(cfg.mu);
  if (mu <= 0) {
    std::cerr << "poly: mu must be positive\n";
    return 2;
  }
  auto fam = symmetric_family(cfg.n, mu, construction_of(cfg));
  Json j;
  j["n"] = cfg.n;
  j["mu"] = cfg.mu;
  j["t"] = rational_to_string(fam.params.t);
  j["degree"] = fam.A.degree();
  j["A"] = poly_to_json(fam.A);
  j["B"] = poly_to_json(fam.B);
  write_json(fs::path(cfg.output_dir) / "poly.json", j);
  std::cout << "A_" << cfg.n << " degree " << fam.A.degree() << " written to "
            << (fs::path(cfg.output_dir) / "poly.json").string() << "\n";
  return 0;
}

int cmd_roots(const RunConfig& cfg) {
  if (cfg.n < 1) {
    std::cerr << "roots: n must be >= 1\n";
    return 2;
  }
  Rational mu = rational_from_string(cfg.mu);
  auto fam = symmetric_family(cfg.n, mu, construction_of(cfg));
  RootSet rs = find_roots(fam.A, cfg.precision_bits);
  auto cls = classify_symmetry(rs);
  auto rings = ring_report(rs, cfg.n);
  fs::path dir(cfg.output_dir);
  Json j = rootset_to_json(rs);
  j["real_count"] = cls.real_indices.size();
  j["pair_count"] = cls.conjugate_pairs.size();
  j["rings"] = ring_to_json(rings);
  write_json(dir / "roots.json", j);
  if (cfg.format == "csv") atomic_write(dir / "roots.csv", rootset_to_csv(rs));
  if (cfg.format == "svg") atomic_write(dir / "roots.svg", rootset_to_svg(rs));
  std::cout << rs.roots.size() << " roots written under " << dir.string() << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.n < 1) {
    std::cerr << "verify: n must be >= 1\n";
    return 2;
  }
  Rational mu = rational_from_string(cfg.mu);
  Json j;
  j["n"] = cfg.n;
  j["mu"] = cfg.mu;
  std::string failed;
  Timer timer;

  const int n_ident = std::min(cfg.n, 10);
  ThetaParams params = symmetric_params(std::max(cfg.n, n_ident + 1), mu);
  auto chain = adler_moser_chain_recursive(std::max(cfg.n, n_ident + 1), params);
  if (cfg.corrupt && chain.size() >= 2) {
    // test hook: damage one coefficient of A_n
    auto coeffs = chain[cfg.n - 1].coeffs();
    coeffs[coeffs.size() / 2] += 1;
    chain[cfg.n - 1] = RationalPoly(coeffs);
  }

  // construction cross-check: recursion vs Wronskian, exact
  {
    bool ok = true;
    for (int k = 1; k <= n_ident && ok; k++) {
      RationalPoly direct = adler_moser(k, params).shift(params.t);
      ok = direct == chain[k - 1];
    }
    j["construction_match"] = ok;
    if (!ok && failed.empty()) failed = "construction_match";
  }
  // Tkachenko at the effective parameter 1/mu (reflection pairing)
  {
    bool ok = true;
    Rational mu_eff = Rational(1) / mu;
    for (int k = 1; k <= n_ident && ok; k++)
      ok = tkachenko_residual(chain[k - 1], chain[k - 1].reflect(), mu_eff).is_zero();
    j["tkachenko"] = ok;
    if (!ok && failed.empty()) failed = "tkachenko";
  }
  // recursion relation between consecutive members
  {
    bool ok = true;
    for (int k = 2; k <= n_ident && ok; k++)
      ok = recursion_residual(chain[k - 1], chain[k - 2]).is_zero();
    j["recursion"] = ok;
    if (!ok && failed.empty()) failed = "recursion";
  }
  // bilinear identity
  {
    bool ok = true;
    for (int k = 1; k + 1 <= static_cast<int>(chain.size()) && k <= n_ident && ok; k++) {
      const RationalPoly& prev =
          k == 1 ? RationalPoly::constant(Rational(1)) : chain[k - 2];
      ok = bilinear_residual(k, prev, chain[k - 1], chain[k]).is_zero();
    }
    j["bilinear"] = ok;
    if (!ok && failed.empty()) failed = "bilinear";
  }
  // translation lemma at mu = 2, n <= 6, randomized rational K
  {
    bool ok = true;
    auto rng = make_rng(cfg.seed);
    std::uniform_int_distribution<int> numd(-9, 9), dend(1, 7);
    ThetaParams tp;
    tp.mu = Rational(2);
    for (int jj = 2; jj <= 6; jj++) tp.k.push_back(Rational(numd(rng), dend(rng)));
    ThetaParams shifted = translated_params(tp);
    for (int k = 1; k <= 6 && ok; k++) {
      RationalPoly lhs = modified_adler_moser(k, tp);
      RationalPoly rhs = adler_moser(k, shifted).shift(Rational(1) / tp.mu);
      Rational mu_k = 1;
      for (int e = 0; e < k; e++) mu_k *= tp.mu;
      rhs.scale(mu_k);
      ok = lhs == rhs;
    }
    j["translation_lemma"] = ok;
    if (!ok && failed.empty()) failed = "translation_lemma";
  }
  // theta derivative ladder
  {
    auto seq = theta_sequence(6, symmetric_params(6, mu));
    bool ok = true;
    for (int m = 0; m + 1 <= 11 && ok; m++) ok = seq.thetas[m + 1].derivative() == seq.thetas[m];
    j["theta_ladder"] = ok;
    if (!ok && failed.empty()) failed = "theta_ladder";
  }
  // index parity for small n
  {
    bool ok = true;
    for (int k = 1; k <= std::min(cfg.n, 6) && ok; k++) ok = verify_index_parity(k);
    j["index_parity"] = ok;
    if (!ok && failed.empty()) failed = "index_parity";
  }
  // certification: exact for k <= 10, modular beyond
  {
    Json certs = Json::array();
    bool ok = true;
    std::vector<Json> slots(std::max(0, cfg.n - 1));
    std::vector<char> oks(slots.size(), 1);
    parallel_for(slots.size(), cfg.jobs, [&](std::size_t idx) {
      int k = static_cast<int>(idx) + 2;
      CertifyMode mode = k <= 10 ? CertifyMode::kExact : CertifyMode::kModular;
      CertifyReport rep = certify_pair(k, chain[k - 1], chain[k - 2], mode,
                                       cfg.construction == "wronskian" ? "wronskian" : "recursive");
      slots[idx] = certify_to_json(rep, cfg.timings);
      oks[idx] = rep.pass() ? 1 : 0;
    });
    for (std::size_t i = 0; i < slots.size(); i++) {
      certs.push_back(slots[i]);
      if (!oks[i]) ok = false;
    }
    j["certifications"] = certs;
    j["certification_pass"] = ok;
    if (!ok && failed.empty()) failed = "certification";
  }

  j["pass"] = failed.empty();
  j["failed"] = failed;
  j["wall_ms"] = cfg.timings ? Json(timer.ms()) : Json(nullptr);
  write_json(fs::path(cfg.output_dir) / "verify.json", j);
  if (!failed.empty()) {
    std::cerr << "verify: identity failed: " << failed << "\n";
    return 1;
  }
  std::cout << "verify: all identities hold up to n = " << cfg.n << "\n";
  return 0;
}

int cmd_nondeg(const RunConfig& cfg) {
  if (cfg.n < 1) {
    std::cerr << "nondeg: n must be >= 1\n";
    return 2;
  }
  auto cert = nondegeneracy_certificate(cfg.n, cfg.tol("rank", 1e-8), cfg.tol("nondeg", 1e-6),
                                        cfg.tol("angle", 1e-4));
  write_json(fs::path(cfg.output_dir) / "nondeg.json", nondeg_to_json(cert));
  if (!cert.pass) {
    std::cerr << "nondeg: certificate failed: sigma_min=" << cert.sigma_min
              << " null_dim=" << cert.null_dim << " (expected " << 2 * cfg.n << ")\n";
    return 1;
  }
  std::cout << "nondeg: n=" << cfg.n << " pass, sigma_min=" << cert.sigma_min << "\n";
  return 0;
}

int cmd_profile(const RunConfig& cfg) {
  if (cfg.profile_degree < 1) {
    std::cerr << "profile: d must be >= 1\n";
    return 2;
  }
  ProfileTable pt = solve_profile(cfg.profile_degree, cfg.r_max, cfg.tol("profile", 1e-9));
  fs::path dir(cfg.output_dir);
  atomic_write(dir / "profile.csv", profile_to_csv(pt));
  Json j;
  j["d"] = pt.d;
  j["kappa"] = pt.kappa;
  j["r_max"] = pt.r_max;
  j["h"] = pt.h;
  if (cfg.profile_degree == 1) {
    auto nz = near_zero_check(pt);
    Json nzj;
    nzj["max_deviation"] = nz.max_deviation;
    nzj["slope"] = nz.slope;
    nzj["r2_coefficient"] = nz.r2_coefficient;
    nzj["pass"] = nz.pass;
    j["near_zero"] = nzj;
  }
  j["jacobi_residual_phi0"] = jacobi_field_residual(pt, JacobiField::kPhi0);
  j["jacobi_residual_phi_plus1"] = jacobi_field_residual(pt, JacobiField::kPhiPlus1);
  double R = std::min(10.0, pt.r_max);
  j["projection_integral_R10"] = projection_integral(pt, R);
  j["projection_expected"] = M_PI * profile_interp(pt, R) * profile_interp(pt, R);
  write_json(dir / "profile.json", j);
  std::cout << "profile: d=" << pt.d << " kappa=" << pt.kappa << "\n";
  return 0;
}

int cmd_field(const RunConfig& cfg) {
  if (cfg.n < 1 || cfg.epsilon <= 0) {
    std::cerr << "field: need n >= 1 and epsilon > 0\n";
    return 2;
  }
  VortexConfig vc = symmetric_config(cfg.n, rational_from_string(cfg.mu), cfg.precision_bits);
  double maxp = 0;
  for (const auto& z : vc.p)
    maxp = std::max(maxp, std::hypot(static_cast<double>(z.re), static_cast<double>(z.im)));
  double need = 4.0 * maxp / cfg.epsilon + 2.0;
  ProfileTable base = solve_profile(1, need + 2.0, 1e-9, 2e-3);
  ProfileTable cut = cutoff_profile(base, cfg.epsilon, (need - 2.0) * cfg.epsilon);
  FieldSampler fs_sampler = make_sampler(vc, cfg.epsilon, cut, cfg.resolution);
  auto u = sample_field(fs_sampler, cfg.jobs);
  fs::path dir(cfg.output_dir);
  atomic_write(dir / "field.csv", field_to_csv(fs_sampler, u));
  atomic_write(dir / "field_mag.svg", field_magnitude_svg(fs_sampler, u));
  atomic_write(dir / "field_phase.svg", field_phase_svg(fs_sampler, u));
  auto sym = check_field_symmetry(fs_sampler, cfg.tol("symmetry", 1e-12));
  auto wind = winding_report(fs_sampler);
  Json j;
  j["n"] = cfg.n;
  j["epsilon"] = cfg.epsilon;
  j["symmetry"] = symmetry_report_to_json(sym);
  j["winding"] = winding_to_json(wind);
  write_json(dir / "field.json", j);
  if (!sym.pass) {
    std::cerr << "field: symmetry report failed\n";
    return 1;
  }
  std::cout << "field: sampled " << fs_sampler.nx << "x" << fs_sampler.ny << " window, winding "
            << wind.boundary << " on the boundary\n";
  return 0;
}

int cmd_report(const RunConfig& cfg) {
  int rc = cmd_verify(cfg);
  int rn = cfg.n <= 6 ? cmd_nondeg(cfg) : 0;
  fs::path dir(cfg.output_dir);
  Json combined;
  {
    std::ifstream v(dir / "verify.json");
    combined["verify"] = Json::parse(v);
  }
  if (cfg.n <= 6) {
    std::ifstream nd(dir / "nondeg.json");
    combined["nondeg"] = Json::parse(nd);
  }
  RunConfig rcfg = cfg;
  rcfg.format = "csv";
  cmd_roots(rcfg);
  {
    std::ifstream r(dir / "roots.json");
    combined["roots"] = Json::parse(r);
  }
  write_json(dir / "report.json", combined);
  return rc != 0 ? rc : rn;
}

}  // namespace vortexforge
