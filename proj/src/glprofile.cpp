#include "vortexforge/glprofile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vortexforge {

namespace {

using CD = std::complex<double>;

// S'' = -S'/r + d^2 S / r^2 - S (1 - S^2)
struct ProfileOde {
  int d;
  void operator()(double r, const double y[2], double dy[2]) const {
    dy[0] = y[1];
    dy[1] = -y[1] / r + (d * d) * y[0] / (r * r) - y[0] * (1.0 - y[0] * y[0]);
  }
};

void rk4_step(const ProfileOde& f, double r, double h, double y[2]) {
  double k1[2], k2[2], k3[2], k4[2], t[2];
  f(r, y, k1);
  for (int i = 0; i < 2; i++) t[i] = y[i] + 0.5 * h * k1[i];
  f(r + 0.5 * h, t, k2);
  for (int i = 0; i < 2; i++) t[i] = y[i] + 0.5 * h * k2[i];
  f(r + 0.5 * h, t, k3);
  for (int i = 0; i < 2; i++) t[i] = y[i] + h * k3[i];
  f(r + h, t, k4);
  for (int i = 0; i < 2; i++) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
}

// +1 overshoot (S crossed above 1), -1 collapse (S' turned negative),
// 0 survived to r_end: compare with the asymptote there.
int shoot(int d, double kappa, double r_end, double h, std::vector<double>* s_out,
          std::vector<double>* sp_out) {
  ProfileOde ode{d};
  double r0 = 1e-4;
  double corr = 1.0 / (4.0 * (d + 1));
  double y[2] = {kappa * (std::pow(r0, d) - corr * std::pow(r0, d + 2)),
                 kappa * (d * std::pow(r0, d - 1) - (d + 2) * corr * std::pow(r0, d + 1))};
  double r = r0;
  if (s_out) {
    s_out->clear();
    sp_out->clear();
  }
  while (r < r_end - 0.5 * h) {
    rk4_step(ode, r, h, y);
    r += h;
    if (s_out) {
      s_out->push_back(y[0]);
      sp_out->push_back(y[1]);
    }
    if (y[0] > 1.0 + 1e-9) return +1;
    if (y[1] < 0.0) return -1;
  }
  return y[0] > 1.0 - d * d / (2.0 * r_end * r_end) ? +1 : -1;
}

}  // namespace

ProfileTable solve_profile(int d, double r_max, double tol, double h) {
  if (d < 1) throw std::invalid_argument("solve_profile requires d >= 1");
  if (r_max < 20) throw std::invalid_argument("solve_profile requires r_max >= 20");
  if (tol > 1e-8) throw std::invalid_argument("solve_profile requires tol <= 1e-8");

  // bisection bracket on the slope parameter
  const double r_shoot = std::min(r_max, 20.0);
  double lo = 1e-6, hi = 1.0;
  if (shoot(d, lo, r_shoot, h, nullptr, nullptr) != -1)
    throw std::runtime_error("shooting bracket failure");
  int guard = 0;
  while (shoot(d, hi, r_shoot, h, nullptr, nullptr) != +1) {
    hi *= 2;
    if (++guard > 60) throw std::runtime_error("shooting bracket failure");
  }
  while (hi - lo > 1e-16 + 1e-16 * hi) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (shoot(d, mid, r_shoot, h, nullptr, nullptr) == +1 ? hi : lo) = mid;
  }
  const double kappa = 0.5 * (lo + hi);

  ProfileTable pt;
  pt.d = d;
  pt.h = h;
  pt.r_max = r_max;
  pt.kappa = kappa;
  const int n = static_cast<int>(std::llround(r_max / h));
  pt.r.resize(n + 1);
  pt.S.assign(n + 1, 0.0);
  for (int i = 0; i <= n; i++) pt.r[i] = i * h;

  // initial guess: shooting solution inward, asymptote outward
  {
    std::vector<double> s, sp;
    shoot(d, kappa, r_shoot, h, &s, &sp);
    for (int i = 1; i <= n; i++) {
      double r = pt.r[i];
      if (i - 1 < static_cast<int>(s.size()) && s[i - 1] <= 1.0 && r <= r_shoot * 0.75) {
        pt.S[i] = s[i - 1];
      } else {
        pt.S[i] = 1.0 - d * d / (2.0 * r * r);
      }
    }
  }
  pt.S[n] = 1.0 - d * d / (2.0 * r_max * r_max);

  // Newton relaxation of the second-order finite-difference system
  std::vector<double> low(n + 1), diag(n + 1), up(n + 1), rhs(n + 1), delta(n + 1);
  for (int iter = 0; iter < 60; iter++) {
    double worst = 0;
    for (int i = 1; i < n; i++) {
      double r = pt.r[i];
      double s = pt.S[i];
      double lap = (pt.S[i + 1] - 2 * s + pt.S[i - 1]) / (h * h);
      double dr = (pt.S[i + 1] - pt.S[i - 1]) / (2 * h);
      double f = -lap - dr / r + d * d * s / (r * r) - s * (1 - s * s);
      rhs[i] = -f;
      worst = std::max(worst, std::abs(f));
      low[i] = -1.0 / (h * h) + 1.0 / (2 * h * r);
      up[i] = -1.0 / (h * h) - 1.0 / (2 * h * r);
      diag[i] = 2.0 / (h * h) + d * d / (r * r) - 1.0 + 3.0 * s * s;
    }
    // Thomas solve on the interior
    std::vector<double> cp(n + 1), dp(n + 1);
    cp[1] = up[1] / diag[1];
    dp[1] = rhs[1] / diag[1];
    for (int i = 2; i < n; i++) {
      double m = diag[i] - low[i] * cp[i - 1];
      cp[i] = up[i] / m;
      dp[i] = (rhs[i] - low[i] * dp[i - 1]) / m;
    }
    delta[n - 1] = dp[n - 1];
    for (int i = n - 2; i >= 1; i--) delta[i] = dp[i] - cp[i] * delta[i + 1];
    double step = 0;
    for (int i = 1; i < n; i++) {
      pt.S[i] += delta[i];
      step = std::max(step, std::abs(delta[i]));
    }
    if (worst < 1e-12 && step < std::min(tol, 1e-10)) break;
  }

  // S' by 4th-order central differences (one-sided at the edges)
  pt.Sp.assign(n + 1, 0.0);
  for (int i = 2; i <= n - 2; i++)
    pt.Sp[i] =
        (-pt.S[i + 2] + 8 * pt.S[i + 1] - 8 * pt.S[i - 1] + pt.S[i - 2]) / (12 * h);
  pt.Sp[0] = (d == 1) ? kappa : 0.0;
  pt.Sp[1] = (pt.S[2] - pt.S[0]) / (2 * h);
  pt.Sp[n - 1] = (pt.S[n] - pt.S[n - 2]) / (2 * h);
  pt.Sp[n] = d * d / (r_max * r_max * r_max);
  return pt;
}

double profile_interp(const ProfileTable& pt, double r) {
  if (r <= 0) return 0.0;
  if (pt.cutoff && r >= pt.cutoff_start + 1.0) return 1.0;
  if (r >= pt.r_max) return pt.cutoff ? 1.0 : 1.0 - pt.d * pt.d / (2 * r * r);
  int i = static_cast<int>(r / pt.h);
  int base = std::clamp(i - 1, 0, static_cast<int>(pt.S.size()) - 4);
  double x = (r - pt.r[base]) / pt.h;  // in [0, 3]
  // cubic Lagrange on 4 consecutive nodes
  double c0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
  double c1 = x * (x - 2) * (x - 3) / 2.0;
  double c2 = -x * (x - 1) * (x - 3) / 2.0;
  double c3 = x * (x - 1) * (x - 2) / 6.0;
  return c0 * pt.S[base] + c1 * pt.S[base + 1] + c2 * pt.S[base + 2] + c3 * pt.S[base + 3];
}

double profile_interp_deriv(const ProfileTable& pt, double r) {
  if (pt.cutoff && r >= pt.cutoff_start + 1.0) return 0.0;
  if (r >= pt.r_max) return pt.cutoff ? 0.0 : pt.d * pt.d / (r * r * r);
  if (r <= 0) return pt.Sp[0];
  int i = static_cast<int>(r / pt.h);
  int base = std::clamp(i - 1, 0, static_cast<int>(pt.Sp.size()) - 4);
  double x = (r - pt.r[base]) / pt.h;
  double c0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
  double c1 = x * (x - 2) * (x - 3) / 2.0;
  double c2 = -x * (x - 1) * (x - 3) / 2.0;
  double c3 = x * (x - 1) * (x - 2) / 6.0;
  return c0 * pt.Sp[base] + c1 * pt.Sp[base + 1] + c2 * pt.Sp[base + 2] + c3 * pt.Sp[base + 3];
}

namespace {

// least-squares slope of y against x
double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; i++) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

NearZeroReport near_zero_check(const ProfileTable& pt) {
  if (pt.d != 1) throw std::invalid_argument("near_zero_check is stated for d = 1");
  NearZeroReport rep;
  std::vector<double> logs_r, logs_res, fit_r2, fit_y;
  for (int i = 1; i < static_cast<int>(pt.r.size()); i++) {
    double r = pt.r[i];
    if (r > 0.3) break;
    double y = pt.S[i] / (pt.kappa * r) - 1.0;
    double res = y + r * r / 8.0;
    rep.max_deviation = std::max(rep.max_deviation, std::abs(res));
    if (r >= 0.1 && std::abs(res) > 1e-14) {
      logs_r.push_back(std::log(r));
      logs_res.push_back(std::log(std::abs(res)));
    }
    if (r <= 0.15) {
      fit_r2.push_back(r * r);
      fit_y.push_back(y);
    }
  }
  if (logs_r.size() >= 4) rep.slope = lsq_slope(logs_r, logs_res);
  rep.r2_coefficient = lsq_slope(fit_r2, fit_y);
  rep.pass = rep.slope >= 3.5;
  return rep;
}

ProfileTable cutoff_profile(const ProfileTable& pt, double epsilon, double C0) {
  double R0 = C0 / epsilon;
  if (R0 + 1.0 > pt.r_max) throw std::invalid_argument("cutoff region exceeds r_max");
  ProfileTable out = pt;
  out.cutoff = true;
  out.cutoff_start = R0;
  for (std::size_t i = 0; i < out.r.size(); i++) {
    double r = out.r[i];
    if (r <= R0) continue;
    if (r >= R0 + 1.0) {
      out.S[i] = 1.0;
      out.Sp[i] = 0.0;
      continue;
    }
    double x = r - R0;  // in (0,1)
    double w = x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);       // quintic smoothstep
    double wp = 30.0 * x * x * (1.0 - x) * (1.0 - x);
    out.Sp[i] = pt.Sp[i] * (1.0 - w) + (1.0 - pt.S[i]) * wp;
    out.S[i] = pt.S[i] * (1.0 - w) + w;
  }
  return out;
}

double jacobi_field_residual(const ProfileTable& pt, JacobiField which) {
  const int n = static_cast<int>(pt.r.size()) - 1;
  const double h = pt.h;
  auto d1 = [&](const std::vector<double>& f, int i) {
    return (-f[i + 2] + 8 * f[i + 1] - 8 * f[i - 1] + f[i - 2]) / (12 * h);
  };
  auto d2 = [&](const std::vector<double>& f, int i) {
    return (-f[i + 2] + 16 * f[i + 1] - 30 * f[i] + 16 * f[i - 1] - f[i - 2]) /
           (12 * h * h);
  };
  double worst = 0;
  const int lo = std::max(4, static_cast<int>(1.0 / h));  // start at r = 1
  const int hi = n - 4;
  if (which == JacobiField::kPhi0) {
    // a2 = S in the imaginary n = 0 equation a'' + a'/r - a/r^2 + (1-S^2) a
    for (int i = lo; i <= hi; i++) {
      double r = pt.r[i];
      double res = d2(pt.S, i) + d1(pt.S, i) / r - pt.S[i] / (r * r) +
                   (1 - pt.S[i] * pt.S[i]) * pt.S[i];
      worst = std::max(worst, std::abs(res));
    }
    return worst;
  }
  // Translational kernels of the conjugated operator: e^{-i theta} d_x v_+
  // decomposes into a = (S' - S/r)/2 on e^{i theta} and b = (S' + S/r)/2 on
  // e^{-i theta}. The d_y kernel carries the same components times -i / +i,
  // so its residual magnitudes coincide with the real system below.
  std::vector<double> av(n + 1), bv(n + 1);
  for (int i = 1; i <= n; i++) {
    av[i] = 0.5 * (pt.Sp[i] - pt.S[i] / pt.r[i]);
    bv[i] = 0.5 * (pt.Sp[i] + pt.S[i] / pt.r[i]);
  }
  av[0] = 0.0;
  bv[0] = pt.kappa;
  for (int i = lo; i <= hi; i++) {
    double r = pt.r[i];
    double s2 = pt.S[i] * pt.S[i];
    // n = 1 system: (n+1)^2 = 4 in the a-equation, (n-1)^2 = 0 in the b-equation
    double resa = d2(av, i) + d1(av, i) / r - 4.0 * av[i] / (r * r) - s2 * bv[i] +
                  (1 - 2 * s2) * av[i];
    double resb = d2(bv, i) + d1(bv, i) / r - s2 * av[i] + (1 - 2 * s2) * bv[i];
    worst = std::max({worst, std::abs(resa), std::abs(resb)});
  }
  return worst;
}

namespace {

// coupled mode system, n >= 1:
//   a'' + a'/r - (n+1)^2 a / r^2 = S^2 conj(b) - (1 - 2 S^2) a
//   b'' + b'/r - (n-1)^2 b / r^2 = S^2 conj(a) - (1 - 2 S^2) b
// n = 0 uses the single equation with coefficient 1/r^2 and conj(a).
struct ModeOde {
  const ProfileTable* pt;
  int n;
  void operator()(double r, const CD y[4], CD dy[4]) const {
    double s = profile_interp(*pt, r);
    double s2 = s * s;
    if (n == 0) {
      dy[0] = y[1];
      dy[1] = -y[1] / r + y[0] / (r * r) + s2 * std::conj(y[0]) - (1 - 2 * s2) * y[0];
      dy[2] = dy[3] = 0;
      return;
    }
    double cp = double((n + 1) * (n + 1));
    double cm = double((n - 1) * (n - 1));
    dy[0] = y[1];
    dy[1] = -y[1] / r + cp * y[0] / (r * r) + s2 * std::conj(y[2]) - (1 - 2 * s2) * y[0];
    dy[2] = y[3];
    dy[3] = -y[3] / r + cm * y[2] / (r * r) + s2 * std::conj(y[0]) - (1 - 2 * s2) * y[2];
  }
};

void rk4_mode(const ModeOde& f, double r, double h, CD y[4]) {
  CD k1[4], k2[4], k3[4], k4[4], t[4];
  f(r, y, k1);
  for (int i = 0; i < 4; i++) t[i] = y[i] + 0.5 * h * k1[i];
  f(r + 0.5 * h, t, k2);
  for (int i = 0; i < 4; i++) t[i] = y[i] + 0.5 * h * k2[i];
  f(r + 0.5 * h, t, k3);
  for (int i = 0; i < 4; i++) t[i] = y[i] + h * k3[i];
  f(r + h, t, k4);
  for (int i = 0; i < 4; i++) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

ModeSolution mode_classify(const ProfileTable& pt, int n, const ModeSeed& seed, double fit_lo,
                           double fit_hi) {
  ModeSolution sol;
  sol.n = n;
  ModeOde ode{&pt, n};
  CD y[4] = {seed.a, seed.ap, seed.b, seed.bp};
  double r = seed.r0;
  const double h = 1e-3;
  const double r_end = pt.r_max - 1.0;
  double next_sample = r;
  while (r < r_end) {
    if (r >= next_sample) {
      sol.r.push_back(r);
      sol.a.push_back(y[0]);
      sol.b.push_back(y[2]);
      next_sample += (r < 0.2) ? h : 0.05;  // dense samples for the inner power fit
    }
    rk4_mode(ode, r, h, y);
    r += h;
    double mag = std::abs(y[0]) + std::abs(y[2]);
    if (mag > 1e250) break;  // exponential blowup; stop before overflow
  }

  auto magnitude = [&](int i) { return std::abs(sol.a[i]) + std::abs(sol.b[i]); };

  // near-zero exponents from the inner decade
  {
    std::vector<double> lr, la, lb;
    for (std::size_t i = 0; i < sol.r.size(); i++) {
      if (sol.r[i] > std::max(0.1, 10 * seed.r0)) break;
      if (std::abs(sol.a[i]) > 1e-280) {
        lr.push_back(std::log(sol.r[i]));
        la.push_back(std::log(std::abs(sol.a[i])));
      }
      if (std::abs(sol.b[i]) > 1e-280) lb.push_back(std::log(std::abs(sol.b[i])));
    }
    if (lr.size() >= 4 && la.size() == lr.size()) sol.near_zero_exp_a = lsq_slope(lr, la);
    if (lr.size() >= 4 && lb.size() == lr.size()) sol.near_zero_exp_b = lsq_slope(lr, lb);
  }

  // far-window fits
  if (fit_hi <= 0) fit_hi = sol.r.back();
  fit_hi = std::min(fit_hi, sol.r.back());
  std::vector<double> rr, mm, lnr, lnm;
  for (std::size_t i = 0; i < sol.r.size(); i++) {
    if (sol.r[i] < fit_lo || sol.r[i] > fit_hi) continue;
    double m = magnitude(static_cast<int>(i));
    if (m <= 0) continue;
    rr.push_back(sol.r[i]);
    mm.push_back(m);
    lnr.push_back(std::log(sol.r[i]));
    lnm.push_back(std::log(m));
  }
  if (rr.size() < 8) {
    sol.growth_class = GrowthClass::kExponential;  // blew up before the window
    sol.exp_rate = std::sqrt(2.0);
    return sol;
  }

  // exponential: ln m vs r bending upward with rate near sqrt(2)
  sol.exp_rate = lsq_slope(rr, lnm);
  {
    std::size_t half = rr.size() / 2;
    std::vector<double> r1(rr.begin(), rr.begin() + half), m1(lnm.begin(), lnm.begin() + half);
    std::vector<double> r2(rr.begin() + half, rr.end()), m2(lnm.begin() + half, lnm.end());
    double s1 = lsq_slope(r1, m1), s2 = lsq_slope(r2, m2);
    if (s2 > 0.5 * std::sqrt(2.0) && s2 >= s1 - 0.05 &&
        std::abs(s2 - std::sqrt(2.0)) < 0.2 * std::sqrt(2.0)) {
      sol.growth_class = GrowthClass::kExponential;
      sol.exp_rate = s2;
      return sol;
    }
  }

  // c1 + c2 ln r fit
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = static_cast<int>(rr.size());
    for (int i = 0; i < cnt; i++) {
      sx += lnr[i];
      sy += mm[i];
      sxx += lnr[i] * lnr[i];
      sxy += lnr[i] * mm[i];
    }
    double c2 = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    double c1 = (sy - c2 * sx) / cnt;
    double ss = 0, ref = 0;
    for (int i = 0; i < cnt; i++) {
      double e = mm[i] - (c1 + c2 * lnr[i]);
      ss += e * e;
      ref += mm[i] * mm[i];
    }
    sol.log_fit_residual = std::sqrt(ss / ref);
    sol.log_c1 = c1;
    sol.log_c2 = c2;
    double span = lnr.back() - lnr.front();
    double mean = sy / cnt;
    if (sol.log_fit_residual < 0.01 && std::abs(c2) * span > 0.05 * std::abs(mean)) {
      sol.growth_class = GrowthClass::kLog;
      return sol;
    }
  }

  sol.far_slope = lsq_slope(lnr, lnm);
  sol.growth_class = sol.far_slope > 0.3 ? GrowthClass::kPower : GrowthClass::kBounded;
  return sol;
}

ModeSeed regular_mode_seed(int n, double r0) {
  ModeSeed s;
  s.r0 = r0;
  if (n == 0) {
    s.a = CD(r0, r0);
    s.ap = CD(1, 1);
    return s;
  }
  s.a = CD(std::pow(r0, n + 1), 0);
  s.ap = CD((n + 1) * std::pow(r0, n), 0);
  s.b = CD(std::pow(r0, std::abs(n - 1)), 0);
  s.bp = CD(n == 1 ? 0.0 : (n - 1) * std::pow(r0, n - 2), 0);
  return s;
}

ModeSeed phi_plus1_seed(const ProfileTable& pt, double r0) {
  ModeSeed s;
  s.r0 = r0;
  double S = profile_interp(pt, r0);
  double Sp = profile_interp_deriv(pt, r0);
  // S'' from the profile equation
  double Spp = -Sp / r0 + pt.d * pt.d * S / (r0 * r0) - S * (1 - S * S);
  s.a = CD(0.5 * (Sp - S / r0), 0);
  s.ap = CD(0.5 * (Spp - Sp / r0 + S / (r0 * r0)), 0);
  s.b = CD(0.5 * (Sp + S / r0), 0);
  s.bp = CD(0.5 * (Spp + Sp / r0 - S / (r0 * r0)), 0);
  return s;
}

ModeSeed imaginary_seed(const ProfileTable& pt, double r0) {
  ModeSeed s;
  s.r0 = r0;
  double S = profile_interp(pt, r0);
  double Sp = profile_interp_deriv(pt, r0);
  s.a = CD(0, S);
  s.ap = CD(0, Sp + 0.7);  // off the pure Jacobi direction: excites the log branch
  return s;
}

ModeSeed real_seed(const ProfileTable& pt, double r0) {
  ModeSeed s;
  s.r0 = r0;
  s.a = CD(profile_interp(pt, r0), 0);
  s.ap = CD(profile_interp_deriv(pt, r0), 0);
  return s;
}

double projection_integral(const ProfileTable& pt, double R) {
  if (R > pt.r_max) throw std::invalid_argument("projection_integral requires R <= r_max");
  if (R <= 0) return 0.0;
  int iR = static_cast<int>(std::llround(R / pt.h));
  iR = std::clamp(iR, 0, static_cast<int>(pt.S.size()) - 1);
  std::vector<double> f(iR + 1);
  for (int i = 0; i <= iR; i++) f[i] = pt.S[i] * pt.Sp[i];
  double integral = 0;
  int start = 0;
  if (iR % 2 == 1) {  // Simpson 3/8 on the first three intervals
    if (iR >= 3) {
      integral += 3.0 * pt.h / 8.0 * (f[0] + 3 * f[1] + 3 * f[2] + f[3]);
      start = 3;
    } else {
      return M_PI * pt.S[iR] * pt.S[iR];  // degenerate tiny R; exact-form fallback
    }
  }
  for (int i = start; i + 2 <= iR; i += 2)
    integral += pt.h / 3.0 * (f[i] + 4 * f[i + 1] + f[i + 2]);
  return 2.0 * M_PI * integral;
}

}  // namespace vortexforge
