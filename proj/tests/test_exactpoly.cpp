#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vortexforge/exactops.hpp"
#include "vortexforge/modular.hpp"
#include "vortexforge/mp.hpp"
#include "vortexforge/polynomial.hpp"
#include "vortexforge/theta.hpp"
#include "vortexforge/util.hpp"

using namespace vortexforge;

namespace {

Rational rnd_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> numd(-20, 20), dend(1, 12);
  return Rational(numd(rng), dend(rng));
}

RationalPoly rnd_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> degd(0, max_deg);
  int d = degd(rng);
  std::vector<Rational> c(d + 1);
  for (auto& x : c) x = rnd_rational(rng);
  return RationalPoly(std::move(c));
}

ComplexPoly rnd_cpoly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> degd(0, max_deg);
  int d = degd(rng);
  std::vector<ComplexRational> c(d + 1);
  for (auto& x : c) x = ComplexRational(rnd_rational(rng), rnd_rational(rng));
  return ComplexPoly(std::move(c));
}

}  // namespace

TEST_CASE("polynomial basics and normalization") {
  RationalPoly zero;
  CHECK(zero.degree() == -1);
  CHECK(zero.is_zero());
  RationalPoly p({Rational(1), Rational(0), Rational(0)});
  CHECK(p.degree() == 0);  // trailing zeros stripped
  RationalPoly z = RationalPoly::identity();
  CHECK(z.degree() == 1);
  CHECK((z * z - z * z).is_zero());
  CHECK_THROWS(zero.lc());
}

TEST_CASE("wronskian: single entry is the function itself") {
  RationalPoly z = RationalPoly::identity();
  CHECK(wronskian<Rational>({z}) == z);
}

TEST_CASE("wronskian: 2x2 determinant by hand") {
  // W(z, z^3/6 - k2/3) = z*(z^2/2) - 1*(z^3/6 - k2/3) = z^3/3 + k2/3
  Rational k2(5, 7);
  RationalPoly z = RationalPoly::identity();
  RationalPoly theta3({-k2 / 3, Rational(0), Rational(0), Rational(1, 6)});
  RationalPoly w = wronskian<Rational>({z, theta3});
  CHECK(w == RationalPoly({k2 / 3, Rational(0), Rational(0), Rational(1, 3)}));
}

TEST_CASE("wronskian: 3 W(theta1, theta3) = z^3 + k2") {
  Rational k2(-3, 2);
  ThetaParams params;
  params.k = {k2};
  auto th = theta_polynomials(3, params);
  RationalPoly w = wronskian<Rational>({th[1], th[3]});
  w.scale(Rational(3));
  CHECK(w == RationalPoly({k2, Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("wronskian bilinearity W(p, q+r) = W(p,q) + W(p,r)") {
  auto rng = make_rng(12345);
  for (int trial = 0; trial < 40; trial++) {
    RationalPoly p = rnd_poly(rng, 6), q = rnd_poly(rng, 6), r = rnd_poly(rng, 6);
    CHECK(wronskian<Rational>({p, q + r}) ==
          wronskian<Rational>({p, q}) + wronskian<Rational>({p, r}));
  }
  // and over the Gaussian rationals
  for (int trial = 0; trial < 10; trial++) {
    ComplexPoly p = rnd_cpoly(rng, 4), q = rnd_cpoly(rng, 4), r = rnd_cpoly(rng, 4);
    CHECK(wronskian<ComplexRational>({p, q + r}) ==
          wronskian<ComplexRational>({p, q}) + wronskian<ComplexRational>({p, r}));
  }
}

TEST_CASE("poly_gcd examples") {
  RationalPoly z = RationalPoly::identity();
  CHECK(poly_gcd(z * z, z) == z);
  auto fam = symmetric_family(2, Rational(1));
  auto fam1 = symmetric_family(1, Rational(1));
  CHECK(poly_gcd(fam.A, fam1.A).degree() == 0);  // A2, A1 coprime
  auto rng = make_rng(999);
  for (int trial = 0; trial < 20; trial++) {
    RationalPoly p = rnd_poly(rng, 5);
    if (p.is_zero()) continue;
    CHECK(poly_gcd(p, p) == p.monic());
  }
  CHECK_THROWS_WITH(poly_gcd(RationalPoly(), RationalPoly()), "undefined gcd");
}

TEST_CASE("poly_gcd divides both inputs exactly") {
  auto rng = make_rng(777);
  for (int trial = 0; trial < 60; trial++) {
    RationalPoly a = rnd_poly(rng, 6), b = rnd_poly(rng, 6);
    if (a.is_zero() && b.is_zero()) continue;
    // plant a common factor half the time
    if (trial % 2 == 0) {
      RationalPoly f = rnd_poly(rng, 3);
      if (!f.is_zero()) {
        a = a * f;
        b = b * f;
      }
    }
    if (a.is_zero() && b.is_zero()) continue;
    RationalPoly g = poly_gcd(a, b);
    if (!a.is_zero()) CHECK(a.divrem(g).second.is_zero());
    if (!b.is_zero()) CHECK(b.divrem(g).second.is_zero());
  }
}

TEST_CASE("resultant_mod examples") {
  // res(z, z+1) = 1 mod 5
  std::vector<std::uint64_t> f = {0, 1}, g = {1, 1};
  CHECK(resultant_mod(f, g, 5) == 1);
  CHECK(resultant_mod(f, f, 5) == 0);  // common root
  // (A3, A2): nonzero residue at the first usable machine prime
  auto fam = symmetric_family_chain(3, Rational(1));
  auto primes = largest_machine_primes(1);
  auto rs = resultant_mod_primes(fam[2].A, fam[1].A, primes);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].usable);
  CHECK(rs[0].residue != 0);
}

TEST_CASE("resultant_mod agrees with exact Sylvester oracle, degree <= 8") {
  auto rng = make_rng(4242);
  auto primes = largest_machine_primes(2);
  std::vector<std::uint64_t> small_primes = {1000003, 998244353};
  for (auto p : small_primes) primes.push_back(p);
  for (int trial = 0; trial < 50; trial++) {
    RationalPoly a = rnd_poly(rng, 8), b = rnd_poly(rng, 8);
    if (a.is_zero() || b.is_zero()) continue;
    Rational exact = resultant_exact(a, b);
    for (auto p : primes) {
      auto fa = poly_mod(a, p), fb = poly_mod(b, p);
      if (!fa || !fb) continue;
      Integer ip(p);
      Integer dnum = num(exact) % ip;
      if (dnum < 0) dnum += ip;
      Integer dden = den(exact) % ip;
      if (dden == 0) continue;
      std::uint64_t expected = modp::mul(static_cast<std::uint64_t>(dnum),
                                         modp::inv(static_cast<std::uint64_t>(dden), p), p);
      CHECK(resultant_mod(*fa, *fb, p) == expected);
    }
  }
}

TEST_CASE("resultant_mod_primes: no usable primes") {
  // denominator divisible by every supplied prime
  RationalPoly a({Rational(1, 5), Rational(1)});
  RationalPoly b({Rational(1), Rational(1)});
  CHECK_THROWS_WITH(resultant_mod_primes(a, b, {5}), "no usable primes");
}

TEST_CASE("largest machine primes") {
  auto ps = largest_machine_primes(3);
  CHECK(ps[0] == 9223372036854775783ULL);  // largest prime below 2^63
  for (auto p : ps) CHECK(modp::is_prime(p));
  CHECK(!modp::is_prime(9223372036854775807ULL));  // 2^63-1 = 7*73*127*337*...
}

TEST_CASE("shift examples") {
  RationalPoly z = RationalPoly::identity();
  CHECK(z.shift(Rational(-1, 2)) == RationalPoly({Rational(1, 2), Rational(1)}));
  // shift(z^3 - 4, -1) = (z+1)^3 - 4 = z^3 + 3z^2 + 3z - 3
  RationalPoly p({Rational(-4), Rational(0), Rational(0), Rational(1)});
  CHECK(p.shift(Rational(-1)) ==
        RationalPoly({Rational(-3), Rational(3), Rational(3), Rational(1)}));
  auto rng = make_rng(31337);
  for (int trial = 0; trial < 30; trial++) {
    RationalPoly q = rnd_poly(rng, 7);
    CHECK(q.shift(Rational(0)) == q);
    Rational s = rnd_rational(rng);
    CHECK(q.shift(s).shift(-s) == q);
    CHECK(q.shift(s).degree() == q.degree());
  }
}

TEST_CASE("eval_complex") {
  RationalPoly a1({Rational(1, 2), Rational(1)});
  auto [v0, e0] = eval_complex_with_error(a1, Complex(-0.5), 64);
  CHECK(v0.abs() == 0);

  RationalPoly p({Rational(-3), Rational(3), Rational(3), Rational(1)});  // (z+1)^3 - 4
  Complex near_root(0.5874);
  CHECK(eval_complex(p, near_root, 128).abs() < 1e-3);

  ComplexPoly zsq({ComplexRational(0), ComplexRational(0), ComplexRational(1)});
  Complex v = eval_complex(zsq, Complex(1.0, 1.0), 96);
  CHECK(v.re == 0);
  CHECK(v.im == 2);

  CHECK_THROWS(eval_complex(p, near_root, 32));  // precision_bits >= 64 required

  // error bound actually bounds the error: compare 64-bit vs 512-bit value
  auto rng = make_rng(2024);
  for (int trial = 0; trial < 20; trial++) {
    RationalPoly q = rnd_poly(rng, 9);
    Complex zt(1.7320508, -0.5477226);
    auto [lo, bound] = eval_complex_with_error(q, zt, 64);
    auto hi = eval_complex(q, zt, 512);
    PrecisionGuard guard(200);
    Real diff = (hi - lo).abs();
    CHECK(diff <= bound + Real(1e-30));
  }
}

TEST_CASE("complex rational arithmetic") {
  ComplexRational i(Rational(0), Rational(1));
  CHECK(i * i == ComplexRational(Rational(-1)));
  ComplexRational a(Rational(3, 2), Rational(-2, 5));
  CHECK(a.conj().conj() == a);
  CHECK((a / a) == ComplexRational(Rational(1)));
  CHECK_THROWS(a / ComplexRational(Rational(0)));
}

TEST_CASE("polynomial division") {
  auto rng = make_rng(5150);
  for (int trial = 0; trial < 30; trial++) {
    RationalPoly a = rnd_poly(rng, 8), b = rnd_poly(rng, 4);
    if (b.is_zero()) continue;
    auto [q, r] = a.divrem(b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
  CHECK_THROWS(RationalPoly::identity().divrem(RationalPoly()));
}

TEST_CASE("coefficient serialization strings") {
  CHECK(rational_to_string(Rational(-3, 8)) == "-3/8");
  CHECK(rational_to_string(Rational(7)) == "7");
  CHECK(rational_from_string("-3/8") == Rational(-3, 8));
  CHECK(rational_from_string("42") == Rational(42));
  CHECK_THROWS(rational_from_string("1/0"));
}
