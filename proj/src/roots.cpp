#include "vortexforge/roots.hpp"

#include <algorithm>
#include <stdexcept>

#include "vortexforge/darboux.hpp"
#include "vortexforge/exactops.hpp"

namespace vortexforge {

namespace {

// Coefficients at the working precision, ascending.
template <typename T>
std::vector<Complex> lift_coeffs(const Polynomial<T>& p) {
  std::vector<Complex> c(p.degree() + 1);
  for (int i = 0; i <= p.degree(); i++) {
    if constexpr (std::is_same_v<T, Rational>) {
      c[i] = Complex(to_real(p[i]));
    } else {
      c[i] = to_complex(p[i]);
    }
  }
  return c;
}

Complex horner(const std::vector<Complex>& c, const Complex& z) {
  Complex acc;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

std::vector<Complex> derive(const std::vector<Complex>& c) {
  std::vector<Complex> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); i++) d[i - 1] = c[i] * Complex(Real(i));
  return d;
}

// Fujiwara upper bound on root moduli.
Real root_bound(const std::vector<Complex>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  Real lead = c[d].abs();
  Real best = 0;
  for (int i = 0; i < d; i++) {
    Real ratio = c[i].abs() / lead;
    if (i == 0) ratio /= 2;
    if (ratio == 0) continue;
    Real r = pow(ratio, Real(1) / (d - i));
    if (r > best) best = r;
  }
  return 2 * best + Real(1) / 4;
}

// One Jacobi-style Aberth sweep; returns the largest correction.
Real aberth_sweep(const std::vector<Complex>& c, const std::vector<Complex>& dc,
                  std::vector<Complex>& z) {
  const std::size_t d = z.size();
  std::vector<Complex> next(d);
  Real worst = 0;
  for (std::size_t k = 0; k < d; k++) {
    Complex pv = horner(c, z[k]);
    Complex dv = horner(dc, z[k]);
    if (dv.norm2() == 0) {  // sitting on a critical point: nudge
      next[k] = z[k] + Complex(Real(1) / 1024, Real(1) / 2048);
      worst = std::max(worst, Real(1));
      continue;
    }
    Complex newton = pv / dv;
    Complex s;
    for (std::size_t j = 0; j < d; j++) {
      if (j == k) continue;
      s += Complex(Real(1)) / (z[k] - z[j]);
    }
    Complex denom = Complex(Real(1)) - newton * s;
    Complex corr = (denom.norm2() == 0) ? newton : newton / denom;
    next[k] = z[k] - corr;
    Real rel = corr.abs() / std::max(Real(1), z[k].abs());
    worst = std::max(worst, rel);
  }
  z = std::move(next);
  return worst;
}

template <typename T>
RootSet find_roots_impl(const Polynomial<T>& p, unsigned precision_bits) {
  if (p.degree() < 1) throw std::invalid_argument("find_roots requires degree >= 1");
  if constexpr (std::is_same_v<T, Rational>) {
    if (poly_gcd(p, p.derivative()).degree() != 0)
      throw std::domain_error("repeated roots: refuse");
  } else {
    if (poly_gcd_generic(p, p.derivative()).degree() != 0)
      throw std::domain_error("repeated roots: refuse");
  }
  const int d = p.degree();
  const unsigned out_digits = bits_to_digits10(std::max(precision_bits, 64u));
  // refinement target: corrections below 10^-(digits+5)
  const int target_exp = static_cast<int>(out_digits) + 5;

  unsigned work_bits = 128;
  std::vector<Complex> z;
  {
    PrecisionGuard guard(bits_to_digits10(work_bits));
    auto c = lift_coeffs(p);
    auto dc = derive(c);
    Real r = root_bound(c);
    z.resize(d);
    Real two_pi = 2 * mp_pi();
    for (int k = 0; k < d; k++) {
      Real angle = two_pi * (Real(k) + Real(1) / 3) / d + Real(37) / 100;
      z[k] = Complex(r * cos(angle), r * sin(angle));
    }
    Real tol = ldexp(Real(1), -static_cast<int>(work_bits) + 10);
    Real corr = 1;
    for (int sweep = 0; sweep < 2000 && corr > tol; sweep++) corr = aberth_sweep(c, dc, z);
    if (corr > tol) throw std::runtime_error("aberth iteration failed to converge");
  }

  // Newton polish, doubling the working precision until every correction is
  // below the target. Clustered roots of degree ~600 inputs need this ladder.
  while (true) {
    work_bits *= 2;
    const unsigned digits = bits_to_digits10(work_bits);
    PrecisionGuard guard(digits);
    auto c = lift_coeffs(p);
    auto dc = derive(c);
    Real target = pow(Real(10), -target_exp);
    Real worst = 0;
    for (auto& root : z) {
      Complex zi = reprec(root, digits);
      for (int it = 0; it < 60; it++) {
        Complex pv = horner(c, zi);
        Complex dv = horner(dc, zi);
        if (dv.norm2() == 0) break;
        Complex corr = pv / dv;
        zi -= corr;
        if (corr.abs() < ldexp(Real(1), -static_cast<int>(work_bits) + 6)) break;
      }
      Complex last_corr = horner(c, zi) / horner(dc, zi);
      worst = std::max(worst, last_corr.abs() / std::max(Real(1), zi.abs()));
      root = zi;
    }
    if (worst < target || work_bits > 16 * std::max(precision_bits, 128u)) break;
  }

  // a-posteriori radii: d * |p(z)/p'(z)| plus the evaluation error allowance
  RootSet rs;
  rs.source_degree = d;
  rs.precision_bits = precision_bits;
  {
    PrecisionGuard guard(bits_to_digits10(work_bits));
    auto dc_exact = p.derivative();
    for (auto& root : z) {
      auto [pv, perr] = eval_complex_with_error(p, root, work_bits);
      Complex dv = eval_complex(dc_exact, root, work_bits);
      Real radius;
      if (dv.norm2() == 0) {
        radius = pow(Real(10), -target_exp);
      } else {
        radius = d * (pv.abs() + perr) / dv.abs();
      }
      rs.roots.push_back(root);
      rs.error_radii.push_back(radius);
    }
  }

  // deterministic ordering: (Re, |Im|) ascending, positive Im first in ties
  std::vector<int> idx(d);
  for (int i = 0; i < d; i++) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (rs.roots[a].re != rs.roots[b].re) return rs.roots[a].re < rs.roots[b].re;
    Real aa = abs(rs.roots[a].im), ab = abs(rs.roots[b].im);
    if (aa != ab) return aa < ab;
    return rs.roots[a].im > rs.roots[b].im;
  });
  RootSet sorted;
  sorted.source_degree = d;
  sorted.precision_bits = precision_bits;
  for (int i : idx) {
    sorted.roots.push_back(rs.roots[i]);
    sorted.error_radii.push_back(rs.error_radii[i]);
  }
  return sorted;
}

}  // namespace

RootSet find_roots(const RationalPoly& p, unsigned precision_bits) {
  return find_roots_impl(p, precision_bits);
}

RootSet find_roots(const ComplexPoly& p, unsigned precision_bits) {
  return find_roots_impl(p, precision_bits);
}

SymmetryClassification classify_symmetry(const RootSet& rs) {
  SymmetryClassification out;
  const int d = static_cast<int>(rs.roots.size());
  PrecisionGuard guard(bits_to_digits10(std::max(rs.precision_bits, 128u)));
  // tolerance floor guards against radii that are flushed to ~0
  Real floor_tol = pow(Real(10), -static_cast<int>(bits_to_digits10(rs.precision_bits)) + 2);
  std::vector<bool> used(d, false);
  for (int i = 0; i < d; i++) {
    if (used[i]) continue;
    Real tol = rs.error_radii[i] + floor_tol;
    if (abs(rs.roots[i].im) <= tol) {
      out.real_indices.push_back(i);
      used[i] = true;
      continue;
    }
    // conjugate mate is adjacent after the deterministic sort
    int mate = -1;
    for (int j = i + 1; j < d && mate < 0; j++) {
      if (used[j]) continue;
      Complex diff = rs.roots[i].conj() - rs.roots[j];
      if (diff.abs() <= rs.error_radii[i] + rs.error_radii[j] + floor_tol) mate = j;
    }
    if (mate < 0) throw std::runtime_error("symmetry violation");
    out.conjugate_pairs.emplace_back(i, mate);
    used[i] = used[mate] = true;
  }
  return out;
}

RingReport ring_report(const RootSet& rs, int n) {
  // 1-d k-means is solvable exactly: optimal clusters are contiguous in
  // sorted order, so a small DP gives the global optimum deterministically.
  RingReport rep;
  rep.k = n;
  const int d = static_cast<int>(rs.roots.size());
  std::vector<double> moduli(d);
  for (int i = 0; i < d; i++) moduli[i] = static_cast<double>(rs.roots[i].abs());
  std::vector<int> order(d);
  for (int i = 0; i < d; i++) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return moduli[a] < moduli[b]; });
  std::vector<double> m(d);
  for (int i = 0; i < d; i++) m[i] = moduli[order[i]];

  std::vector<double> pre(d + 1, 0), pre2(d + 1, 0);
  for (int i = 0; i < d; i++) {
    pre[i + 1] = pre[i] + m[i];
    pre2[i + 1] = pre2[i] + m[i] * m[i];
  }
  auto cost = [&](int lo, int hi) {  // [lo, hi), within-cluster SSE
    int cnt = hi - lo;
    double s = pre[hi] - pre[lo];
    return (pre2[hi] - pre2[lo]) - s * s / cnt;
  };
  const double kInf = 1e300;
  std::vector<std::vector<double>> dp(n + 1, std::vector<double>(d + 1, kInf));
  std::vector<std::vector<int>> cut(n + 1, std::vector<int>(d + 1, 0));
  dp[0][0] = 0;
  for (int c = 1; c <= n; c++)
    for (int i = c; i <= d; i++)
      for (int j = c - 1; j < i; j++) {
        double v = dp[c - 1][j] + cost(j, i);
        if (v < dp[c][i]) {
          dp[c][i] = v;
          cut[c][i] = j;
        }
      }
  std::vector<int> bounds(n + 1);
  bounds[n] = d;
  for (int c = n; c >= 1; c--) bounds[c - 1] = cut[c][bounds[c]];

  rep.centers.assign(n, 0.0);
  rep.counts.assign(n, 0);
  rep.spreads.assign(n, 0.0);
  rep.assignment.assign(d, 0);
  for (int c = 0; c < n; c++) {
    int lo = bounds[c], hi = bounds[c + 1];
    rep.counts[c] = hi - lo;
    if (hi > lo) rep.centers[c] = (pre[hi] - pre[lo]) / (hi - lo);
    for (int i = lo; i < hi; i++) {
      rep.assignment[order[i]] = c;
      rep.spreads[c] = std::max(rep.spreads[c], std::abs(m[i] - rep.centers[c]));
    }
  }
  for (int c = 0; c < n; c++) {
    if (rep.counts[c] == 0 || rep.centers[c] == 0) continue;
    rep.max_relative_spread = std::max(rep.max_relative_spread, rep.spreads[c] / rep.centers[c]);
  }
  return rep;
}

Real max_residual(const RationalPoly& p, const RootSet& rs) {
  PrecisionGuard guard(bits_to_digits10(std::max(rs.precision_bits, 128u)));
  Real worst = 0;
  for (const auto& r : rs.roots)
    worst = std::max(worst, eval_complex(p, r, std::max(rs.precision_bits, 128u)).abs());
  return worst;
}

}  // namespace vortexforge
