#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vortexforge/darboux.hpp"
#include "vortexforge/theta.hpp"

using namespace vortexforge;

namespace {

// psi_n = ThetaTilde_n / Theta_n * e^{mu z}, the chain's closed form.
DarbouxFunction psi_closed_form(int n, const ThetaParams& params) {
  return {RationalFn(modified_adler_moser(n, params), adler_moser(n, params)), params.mu};
}

}  // namespace

TEST_CASE("rational function reduction") {
  RationalPoly z = RationalPoly::identity();
  RationalPoly num = z * z - RationalPoly::constant(Rational(1));
  RationalPoly den = z - RationalPoly::constant(Rational(1));
  RationalFn f(num, den);
  CHECK(f.num() == z + RationalPoly::constant(Rational(1)));
  CHECK(f.den() == RationalPoly::constant(Rational(1)));
  CHECK_THROWS(RationalFn(z, RationalPoly()));
}

TEST_CASE("rational function calculus") {
  RationalPoly z = RationalPoly::identity();
  RationalFn f(RationalPoly::constant(Rational(1)), z);  // 1/z
  RationalFn df = f.derivative();                        // -1/z^2
  CHECK(df.num() == RationalPoly::constant(Rational(-1)));
  CHECK(df.den() == z * z);
}

TEST_CASE("worked Darboux step: psi_1, phi_1 -> psi_2") {
  // psi_1 = ((mu z - 1)/z) e^{mu z}, phi_1 = (z^3 + k2)/z. Hand expansion of
  // psi_1 (ln phi_1)' - psi_1':
  //   numerator (mu z - 1)(2z^3 - k2) - (mu^2 z^2 - mu z + 1)(z^3 + k2)
  //           = -z^2 (mu^2 z^3 - 3 mu z^2 + 3 z + mu^2 k2),
  // i.e. -3 times the classical display of psi_2, and exactly
  // -ThetaTilde_2/Theta_2 e^{mu z} in the Wronskian normalization.
  for (auto [mu, k2] : {std::pair{Rational(1), Rational(-1, 2)},
                        std::pair{Rational(2), Rational(-4)},
                        std::pair{Rational(3, 2), Rational(5, 7)}}) {
    CAPTURE(rational_to_string(mu));
    RationalPoly z = RationalPoly::identity();
    DarbouxFunction psi1{RationalFn(RationalPoly({Rational(-1), mu}), z), mu};
    RationalPoly phi_num({k2, Rational(0), Rational(0), Rational(1)});
    RationalFn phi1(phi_num, z);
    DarbouxFunction psi2 = darboux_step(psi1, phi1);
    RationalPoly display_num({Rational(0), Rational(1), -mu, mu * mu / 3});
    display_num += RationalPoly::constant(mu * mu * k2 / 3);
    RationalPoly expect_num = display_num;
    expect_num.scale(Rational(-3));
    CHECK(psi2.rat == RationalFn(expect_num, phi_num));
    CHECK(psi2.mu == mu);

    ThetaParams params;
    params.k = {k2};
    params.mu = mu;
    RationalFn closed(modified_adler_moser(2, params), adler_moser(2, params));
    CHECK(psi2.rat == -closed);
  }
}

TEST_CASE("Darboux chain tracks the closed form up to sign, generic K, n <= 4") {
  // Each step maps + ThetaTilde_n/Theta_n to - ThetaTilde_{n+1}/Theta_{n+1}.
  ThetaParams params;
  params.k = {Rational(2, 3), Rational(-1, 5), Rational(7, 4)};
  params.mu = Rational(2);
  DarbouxFunction psi = psi_closed_form(1, params);
  int sign = 1;
  for (int n = 1; n < 4; n++) {
    CAPTURE(n);
    RationalFn phi(adler_moser(n + 1, params), adler_moser(n, params));
    psi = darboux_step(psi, phi);
    sign = -sign;
    RationalFn expect = psi_closed_form(n + 1, params).rat;
    if (sign < 0) expect = -expect;
    CHECK(psi.rat == expect);
  }
}

TEST_CASE("Schrodinger residual vanishes along the chain, n <= 4, mu = 1") {
  // psi_n'' + 2 (ln A_n)'' psi_n = mu^2 psi_n for psi_n = (B_n/A_n) e^{mu z}
  auto chain = symmetric_family_chain(4, Rational(1));
  for (const auto& fam : chain) {
    CAPTURE(fam.n);
    DarbouxFunction psi{RationalFn(fam.B, fam.A), Rational(1)};
    CHECK(schrodinger_residual(psi, fam.A).is_zero());
  }
  // negative control: wrong exponential weight
  DarbouxFunction bad{RationalFn(chain[1].B, chain[1].A), Rational(2)};
  CHECK(!schrodinger_residual(bad, chain[1].A).is_zero());
}

TEST_CASE("Schrodinger residual for the unshifted generic-mu ladder") {
  ThetaParams params;
  params.k = {Rational(-1, 2)};
  params.mu = Rational(3);
  // psi_1 = ((mu z - 1)/z) e^{mu z} with potential 2 (ln z)''
  DarbouxFunction psi1{RationalFn(RationalPoly({Rational(-1), params.mu}),
                                  RationalPoly::identity()),
                       params.mu};
  CHECK(schrodinger_residual(psi1, RationalPoly::identity()).is_zero());
}

TEST_CASE("darboux_step rejects zero phi") {
  DarbouxFunction psi{RationalFn(RationalPoly::identity()), Rational(1)};
  CHECK_THROWS(darboux_step(psi, RationalFn(RationalPoly(), RationalPoly::identity())));
}

TEST_CASE("phi-chain bilinear identity, n <= 8") {
  auto chain = symmetric_family_chain(9, Rational(1));
  for (int n = 1; n <= 8; n++) {
    CAPTURE(n);
    const RationalPoly& a_prev =
        (n == 1) ? RationalPoly::constant(Rational(1)) : chain[n - 2].A;
    CHECK(bilinear_residual(n, a_prev, chain[n - 1].A, chain[n].A).is_zero());
  }
}
