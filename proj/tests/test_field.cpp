#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vortexforge/field.hpp"

using namespace vortexforge;

namespace {

const ProfileTable& cut_profile() {
  // cutoff at C0/eps = 40, profile reaches past 41
  static ProfileTable base = solve_profile(1, 60, 1e-9, 2e-3);
  static ProfileTable cut = cutoff_profile(base, 0.05, 2.0);
  return cut;
}

FieldSampler sampler_n(int n, double eps = 0.05, int res = 257) {
  VortexConfig cfg = symmetric_config(n, Rational(1));
  return make_sampler(cfg, eps, cut_profile(), res);
}

}  // namespace

TEST_CASE("field vanishes at vortex centers and approaches modulus 1 at the edge") {
  FieldSampler fs = sampler_n(1);
  double px = static_cast<double>(fs.config.p[0].re) / fs.epsilon;
  double py = static_cast<double>(fs.config.p[0].im) / fs.epsilon;
  CHECK(std::abs(field_value(fs, px, py)) == 0.0);
  CHECK(std::abs(field_value(fs, fs.xmax, fs.ymax)) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("winding: 0 on the boundary, +1/-1 around individual centers") {
  for (int n : {1, 2}) {
    CAPTURE(n);
    FieldSampler fs = sampler_n(n);
    WindingReport rep = winding_report(fs);
    CHECK(rep.boundary == 0);
    for (int w : rep.per_positive) CHECK(w == 1);
    for (int w : rep.per_negative) CHECK(w == -1);
    CHECK(rep.per_positive.size() == fs.config.p.size());
  }
}

TEST_CASE("symmetry identities hold to 1e-12 on symmetric grids") {
  for (int n : {1, 2}) {
    CAPTURE(n);
    FieldSampler fs = sampler_n(n);
    auto rep = check_field_symmetry(fs);
    CHECK(rep.pass);
    CHECK(rep.conj_deviation <= 1e-12);
    CHECK(rep.star_deviation <= 1e-12);
  }
}

TEST_CASE("symmetry negative control: a 1e-3 perturbation shows up at 1e-3") {
  FieldSampler fs = sampler_n(2);
  fs.config.p[0] += Complex(1e-3, 0.0);  // break the reflection structure
  auto rep = check_field_symmetry(fs);
  CHECK(!rep.pass);
  CHECK(rep.star_deviation > 1e-5);
  CHECK(rep.star_deviation < 0.3);
}

TEST_CASE("conjugation symmetry alone survives conjugation-closed root sets") {
  // push the pair off the imaginary-reflection symmetry but keep conjugation
  FieldSampler fs = sampler_n(2);
  for (auto& z : fs.config.p) z.re = z.re + Real(0.001);  // p shifted, q not
  auto rep = check_field_symmetry(fs);
  CHECK(rep.conj_deviation <= 1e-12);
  CHECK(rep.star_deviation > 1e-5);
}

TEST_CASE("error field: far slopes match the decay claims and are grid-stable") {
  FieldSampler fs = sampler_n(1, 0.05, 513);
  auto rep = error_field(fs);
  CHECK(rep.stable);
  CHECK(rep.slope_abs <= -1.7);
  CHECK(rep.slope_im <= -2.7);
}

TEST_CASE("error field shrinks when epsilon shrinks at fixed window") {
  VortexConfig cfg = symmetric_config(1, Rational(1));
  FieldSampler a = make_sampler(cfg, 0.05, cut_profile(), 257);
  auto ra = error_field(a);
  // smaller speed, same geometry in units of 1/eps
  static ProfileTable base2 = solve_profile(1, 90, 1e-9, 2e-3);
  static ProfileTable cut2 = cutoff_profile(base2, 0.025, 2.0);
  FieldSampler b = make_sampler(cfg, 0.025, cut2, 257);
  auto rb = error_field(b);
  CHECK(rb.max_abs < ra.max_abs);
}

TEST_CASE("solve_reduced: delta = 0 returns the seed") {
  std::vector<std::complex<double>> delta(3, {0, 0});
  auto res = solve_reduced(2, 1.0, delta, 1e-10);
  CHECK(res.newton_iters <= 1);
  CHECK(res.displacement_from_seed < 1e-9);
  CHECK(res.residual_norm < 1e-9);
}

TEST_CASE("solve_reduced: converges and responds linearly, n = 2") {
  const int m = 3;
  double prev_ratio = 0;
  for (int halving = 0; halving < 3; halving++) {
    double d = 1e-3 / (1 << halving);
    std::vector<std::complex<double>> delta(m, {d, 0});
    auto res = solve_reduced(2, 1.0, delta, 1e-12);
    CHECK(res.residual_norm < 1e-10);
    double ratio = res.displacement_from_seed / d;
    if (halving > 0) CHECK(std::abs(ratio - prev_ratio) / prev_ratio < 0.2);
    prev_ratio = ratio;
  }
}

TEST_CASE("solve_reduced: n = 6 converges within 8 iterations") {
  const int m = 21;
  std::vector<std::complex<double>> delta(m, {1e-3, 0});
  auto res = solve_reduced(6, 1.0, delta, 1e-12);
  CHECK(res.newton_iters <= 8);
  CHECK(res.residual_norm < 1e-10);
  CHECK(res.displacement_from_seed > 0);
}

TEST_CASE("solve_reduced input validation") {
  std::vector<std::complex<double>> wrong(2, {0, 0});
  CHECK_THROWS(solve_reduced(2, 1.0, wrong, 1e-10));
  std::vector<std::complex<double>> ok(3, {0, 0});
  CHECK_THROWS(solve_reduced(2, -1.0, ok, 1e-10));
}
