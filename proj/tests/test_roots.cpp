#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vortexforge/roots.hpp"
#include "vortexforge/theta.hpp"

using namespace vortexforge;

namespace {

double dre(const Complex& z) { return static_cast<double>(z.re); }
double dim(const Complex& z) { return static_cast<double>(z.im); }

}  // namespace

TEST_CASE("roots of (z+1)^3 - 4 match the printed 4-decimal values") {
  RationalPoly p({Rational(-3), Rational(3), Rational(3), Rational(1)});
  RootSet rs = find_roots(p, 128);
  REQUIRE(rs.roots.size() == 3);
  // sorted by (Re, |Im|): conjugate pair first (Re ~ -1.7937), then the real root
  CHECK(dre(rs.roots[0]) == doctest::Approx(-1.7937).epsilon(1e-4));
  CHECK(dim(rs.roots[0]) == doctest::Approx(1.3747).epsilon(1e-4));
  CHECK(dre(rs.roots[1]) == doctest::Approx(-1.7937).epsilon(1e-4));
  CHECK(dim(rs.roots[1]) == doctest::Approx(-1.3747).epsilon(1e-4));
  CHECK(dre(rs.roots[2]) == doctest::Approx(0.5874).epsilon(1e-4));
  CHECK(std::abs(dim(rs.roots[2])) < 1e-20);
  for (const auto& r : rs.error_radii) CHECK(static_cast<double>(r) < 1e-30);
}

TEST_CASE("roots of z^2 + 1") {
  RationalPoly p({Rational(1), Rational(0), Rational(1)});
  RootSet rs = find_roots(p, 128);
  REQUIRE(rs.roots.size() == 2);
  CHECK(std::abs(dre(rs.roots[0])) < 1e-30);
  CHECK(dim(rs.roots[0]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dim(rs.roots[1]) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("A_2 at mu=1: real root 2^(-1/3) - 1/2 plus a conjugate pair") {
  auto fam = symmetric_family(2, Rational(1));
  RootSet rs = find_roots(fam.A, 192);
  REQUIRE(rs.roots.size() == 3);
  double expect = std::pow(2.0, -1.0 / 3.0) - 0.5;
  auto cls = classify_symmetry(rs);
  REQUIRE(cls.real_indices.size() == 1);
  REQUIRE(cls.conjugate_pairs.size() == 1);
  CHECK(dre(rs.roots[cls.real_indices[0]]) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("repeated roots are refused") {
  RationalPoly z = RationalPoly::identity();
  CHECK_THROWS_WITH(find_roots(z * z, 128), "repeated roots: refuse");
  CHECK_THROWS(find_roots(RationalPoly::constant(Rational(2)), 128));
}

TEST_CASE("classification counts: (z+1)^3-4 has 1 real + 1 pair") {
  RationalPoly p({Rational(-3), Rational(3), Rational(3), Rational(1)});
  auto cls = classify_symmetry(find_roots(p, 128));
  CHECK(cls.real_indices.size() == 1);
  CHECK(cls.conjugate_pairs.size() == 1);
}

TEST_CASE("classification counts: z^2 + 1 has 0 real + 1 pair") {
  RationalPoly p({Rational(1), Rational(0), Rational(1)});
  auto cls = classify_symmetry(find_roots(p, 128));
  CHECK(cls.real_indices.empty());
  CHECK(cls.conjugate_pairs.size() == 1);
}

TEST_CASE("classification counts for A_3: reals + 2*pairs = 6") {
  auto fam = symmetric_family(3, Rational(1));
  auto cls = classify_symmetry(find_roots(fam.A, 160));
  CHECK(cls.real_indices.size() + 2 * cls.conjugate_pairs.size() == 6);
}

TEST_CASE("root set of B_n is the negation of the root set of A_n") {
  for (int n : {2, 4, 5}) {
    CAPTURE(n);
    auto fam = symmetric_family(n, Rational(1));
    RootSet ra = find_roots(fam.A, 160);
    RootSet rb = find_roots(fam.B.monic(), 160);
    for (std::size_t i = 0; i < ra.roots.size(); i++) {
      // -roots(A) must appear among roots(B) within radii
      bool found = false;
      for (std::size_t j = 0; j < rb.roots.size() && !found; j++) {
        Complex diff = rb.roots[j] + ra.roots[i];
        if (diff.abs() <= ra.error_radii[i] + rb.error_radii[j] + Real(1e-35)) found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("root sets of real polynomials are conjugation-closed") {
  for (int n : {3, 6}) {
    CAPTURE(n);
    auto fam = symmetric_family(n, Rational(1));
    RootSet rs = find_roots(fam.A, 160);
    for (std::size_t i = 0; i < rs.roots.size(); i++) {
      bool found = false;
      for (std::size_t j = 0; j < rs.roots.size() && !found; j++) {
        Complex diff = rs.roots[j] - rs.roots[i].conj();
        if (diff.abs() <= rs.error_radii[i] + rs.error_radii[j] + Real(1e-35)) found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("re-expanded product of (z - root_i) reproduces the coefficients") {
  for (int n : {2, 4}) {
    CAPTURE(n);
    auto fam = symmetric_family(n, Rational(1));
    RootSet rs = find_roots(fam.A, 192);
    PrecisionGuard guard(bits_to_digits10(512));
    std::vector<Complex> coeffs = {Complex(Real(1))};
    for (const auto& r : rs.roots) {
      std::vector<Complex> next(coeffs.size() + 1);
      for (std::size_t i = 0; i < coeffs.size(); i++) {
        next[i + 1] += coeffs[i];
        next[i] -= coeffs[i] * r;
      }
      coeffs = std::move(next);
    }
    for (int i = 0; i <= fam.A.degree(); i++) {
      Real diff = (coeffs[i] - Complex(to_real(fam.A[i]))).abs();
      CHECK(static_cast<double>(diff) < 1e-25);
    }
  }
}

TEST_CASE("roots work for exact complex coefficients") {
  // (z - i)(z + 2i) = z^2 + i z + 2
  ComplexRational i01(Rational(0), Rational(1));
  ComplexPoly p({ComplexRational(Rational(2)), i01, ComplexRational(Rational(1))});
  RootSet rs = find_roots(p, 128);
  REQUIRE(rs.roots.size() == 2);
  bool has_i = false, has_m2i = false;
  for (const auto& r : rs.roots) {
    if (std::abs(dre(r)) < 1e-25 && std::abs(dim(r) - 1.0) < 1e-25) has_i = true;
    if (std::abs(dre(r)) < 1e-25 && std::abs(dim(r) + 2.0) < 1e-25) has_m2i = true;
  }
  CHECK(has_i);
  CHECK(has_m2i);
}

TEST_CASE("ring report: single ring for n = 1 at radius 1/2") {
  auto fam = symmetric_family(1, Rational(1));
  auto rep = ring_report(find_roots(fam.A, 128), 1);
  REQUIRE(rep.centers.size() == 1);
  CHECK(rep.centers[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.counts[0] == 1);
}

TEST_CASE("ring report: n = 2 clusters cover all 3 roots") {
  auto fam = symmetric_family(2, Rational(1));
  auto rep = ring_report(find_roots(fam.A, 128), 2);
  CHECK(rep.counts[0] + rep.counts[1] == 3);
}

TEST_CASE("ring report: n = 5 descriptive spread") {
  // the rings are only approximate; the report is descriptive, so assert
  // structure, not tightness
  auto fam = symmetric_family(5, Rational(1));
  auto rep = ring_report(find_roots(fam.A, 160), 5);
  int total = 0;
  for (int c : rep.counts) {
    CHECK(c > 0);
    total += c;
  }
  CHECK(total == 15);
  for (int c = 1; c < rep.k; c++) CHECK(rep.centers[c] > rep.centers[c - 1]);
  CHECK(rep.max_relative_spread > 0.0);
  CHECK(rep.max_relative_spread < 2.0);
}

TEST_CASE("refined roots drive polynomial residuals to the target precision") {
  auto fam = symmetric_family(6, Rational(1));
  RootSet rs = find_roots(fam.A, 256);
  Real resid = max_residual(fam.A, rs);
  CHECK(static_cast<double>(resid) < 1e-60);
}
