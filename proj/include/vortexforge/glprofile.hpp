#pragma once

#include <complex>
#include <vector>

namespace vortexforge {

/// Radial profile S_d of the degree-d vortex on a uniform grid
/// r_i = i*h, i = 0..N, with S(0) = 0 and the far boundary matched to the
/// 1 - d^2/(2 r^2) asymptote. kappa is the slope at the origin found by the
/// shooting dichotomy.
struct ProfileTable {
  int d = 1;
  double h = 1e-3;
  double r_max = 30;
  double kappa = 0;
  std::vector<double> r;
  std::vector<double> S;
  std::vector<double> Sp;
  bool cutoff = false;
  double cutoff_start = 0;  // S == 1 exactly beyond cutoff_start + 1
};

/// Shooting (bisection on the blowup-vs-collapse dichotomy of the slope at
/// the origin) determines kappa; a finite-difference Newton relaxation then
/// produces the global table with the asymptotic far boundary condition.
/// Requires d >= 1, r_max >= 20, tol <= 1e-8.
ProfileTable solve_profile(int d, double r_max, double tol, double h = 1e-3);

/// S interpolated off the table (4-point Lagrange); exactly 1 beyond the
/// cutoff region when the table is a cutoff profile.
double profile_interp(const ProfileTable& pt, double r);
double profile_interp_deriv(const ProfileTable& pt, double r);

struct NearZeroReport {
  double max_deviation = 0;   // max |S/(kappa r) - 1 + r^2/8| on the window
  double slope = 0;           // log-log slope of the residual (expect ~4)
  double r2_coefficient = 0;  // fitted c2 in S/(kappa r) - 1 ~ c2 r^2
  bool pass = false;          // slope >= 3.5
};

/// Near-origin structure check for d = 1: S = kappa r (1 - r^2/8 + O(r^4)).
NearZeroReport near_zero_check(const ProfileTable& pt);

/// Identical below C0/epsilon, quintic-smoothstep blended to exactly 1 past
/// C0/epsilon + 1. Requires C0/epsilon + 1 <= r_max.
ProfileTable cutoff_profile(const ProfileTable& pt, double epsilon, double C0);

enum class JacobiField { kPhi0, kPhiPlus1, kPhiMinus1 };

/// Max residual of the Jacobi field in the mode-decomposed linearized
/// operator, with all derivatives taken from the grid. O(h^2) for the
/// genuine kernels.
double jacobi_field_residual(const ProfileTable& pt, JacobiField which);

enum class GrowthClass { kBounded, kLog, kPower, kExponential };

/// Initial data at r0 for a Fourier-mode solution (b unused when n = 0).
struct ModeSeed {
  double r0 = 0.01;
  std::complex<double> a{0, 0}, ap{0, 0};
  std::complex<double> b{0, 0}, bp{0, 0};
};

struct ModeSolution {
  int n = 0;
  GrowthClass growth_class = GrowthClass::kBounded;
  std::vector<double> r;
  std::vector<std::complex<double>> a;
  std::vector<std::complex<double>> b;
  // diagnostics backing the classification
  double log_fit_residual = 0;  // relative rms of the c1 + c2 ln r fit
  double log_c1 = 0, log_c2 = 0;
  double far_slope = 0;       // log-log slope on the far window
  double exp_rate = 0;        // slope of ln|w| vs r
  double near_zero_exp_a = 0;  // power-fit exponents on the inner window
  double near_zero_exp_b = 0;
};

/// Integrates the coupled mode system outward from the seed and classifies
/// the growth against the {bounded, log, power, exponential} taxonomy on
/// the window [fit_lo, fit_hi] (fit_hi <= 0 means the full integrated range).
/// Seeds carrying table-level error excite the exp(sqrt(2) r) branch, so
/// callers probing bounded solutions should keep fit_hi modest.
ModeSolution mode_classify(const ProfileTable& pt, int n, const ModeSeed& seed,
                           double fit_lo = 10.0, double fit_hi = 0.0);

/// Seeds: generic regular data near 0, the translational field at r0, and
/// imaginary/real n = 0 data.
ModeSeed regular_mode_seed(int n, double r0 = 0.01);
ModeSeed phi_plus1_seed(const ProfileTable& pt, double r0 = 1.0);
ModeSeed imaginary_seed(const ProfileTable& pt, double r0 = 1.0);
ModeSeed real_seed(const ProfileTable& pt, double r0 = 1.0);

/// 2 pi Integral_0^R S S' dr by composite Simpson on the grid; equals
/// pi S(R)^2 up to quadrature error (R is snapped to the nearest node).
double projection_integral(const ProfileTable& pt, double R);

}  // namespace vortexforge
