#pragma once

#include <stdexcept>
#include <vector>

#include "vortexforge/polynomial.hpp"

namespace vortexforge {

// ---------------------------------------------------------------------------
// Integer-cleared helpers. Rational polynomials are mapped to primitive
// integer polynomials before running the PRS algorithms; this is what keeps
// intermediate coefficients from exploding at degree ~600.
// ---------------------------------------------------------------------------

/// Dense polynomial over Z, ascending coefficients, trailing zeros stripped.
using IntPoly = std::vector<Integer>;

inline void ipoly_trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int ipoly_deg(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Integer ipoly_content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& c : p) g = gcd(g, c);
  return g;  // 0 for the zero polynomial
}

inline void ipoly_divexact_scalar(IntPoly& p, const Integer& s) {
  for (auto& c : p) c /= s;  // exact by construction of callers
}

/// Clears denominators: p = (result) / denom.
inline IntPoly to_integer(const RationalPoly& p, Integer& denom) {
  denom = 1;
  for (const auto& c : p.coeffs()) denom = lcm(denom, den(c));
  IntPoly r(p.coeffs().size());
  for (std::size_t i = 0; i < r.size(); i++) {
    const Rational& c = p.coeffs()[i];
    r[i] = num(c) * (denom / den(c));
  }
  return r;
}

inline RationalPoly from_integer(const IntPoly& p, const Integer& denom = 1) {
  std::vector<Rational> c(p.size());
  for (std::size_t i = 0; i < p.size(); i++) c[i] = Rational(p[i], denom);
  return RationalPoly(std::move(c));
}

/// Pseudo-remainder over Z: lc(g)^(deg f - deg g + 1) * f mod g.
/// Every interior division is exact.
inline IntPoly ipoly_pseudo_rem(const IntPoly& f, const IntPoly& g) {
  int df = ipoly_deg(f), dg = ipoly_deg(g);
  if (dg < 0) throw std::domain_error("pseudo-remainder by zero");
  if (df < dg) return f;
  const Integer& lg = g.back();
  IntPoly r = f;
  Integer mult = 1;
  for (int i = 0; i < df - dg + 1; i++) mult *= lg;
  for (auto& c : r) c *= mult;
  for (int k = df - dg; k >= 0; k--) {
    if (static_cast<int>(r.size()) <= dg + k) continue;
    Integer q = r[dg + k] / lg;
    if (q == 0) continue;
    for (int i = 0; i <= dg; i++) r[i + k] -= q * g[i];
    ipoly_trim(r);
  }
  return r;
}

/// Content-stripped PRS over Z: pseudo-remainders reduced to primitive parts
/// at every step. Returns the last nonzero remainder, primitive.
inline IntPoly primitive_prs_last(IntPoly f, IntPoly g) {
  ipoly_trim(f);
  ipoly_trim(g);
  if (ipoly_deg(f) < ipoly_deg(g)) std::swap(f, g);
  {
    Integer c = ipoly_content(f);
    if (c != 0) ipoly_divexact_scalar(f, c);
    c = ipoly_content(g);
    if (c != 0) ipoly_divexact_scalar(g, c);
  }
  while (!g.empty()) {
    IntPoly r = ipoly_pseudo_rem(f, g);
    ipoly_trim(r);
    if (!r.empty()) {
      Integer c = ipoly_content(r);
      ipoly_divexact_scalar(r, c);
    }
    f = std::move(g);
    g = std::move(r);
  }
  return f;
}

/// Monic greatest common divisor over Q. Errors when both inputs are zero.
inline RationalPoly poly_gcd(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("undefined gcd");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  Integer da, db;
  IntPoly g = primitive_prs_last(to_integer(a, da), to_integer(b, db));
  return from_integer(g).monic();
}

// ---------------------------------------------------------------------------
// Determinants and Wronskians: fraction-free Bareiss elimination over the
// polynomial ring. Every division below is exact (the previous pivot divides
// the two-by-two minor), which is the point of Bareiss.
// ---------------------------------------------------------------------------

template <typename T>
Polynomial<T> bareiss_det(std::vector<std::vector<Polynomial<T>>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial<T>::constant(T(1));
  for (auto& row : m)
    if (row.size() != n) throw std::invalid_argument("bareiss_det: non-square matrix");
  Polynomial<T> prev = Polynomial<T>::constant(T(1));
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; k++) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) piv++;
      if (piv == n) return Polynomial<T>();  // singular
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; i++) {
      for (std::size_t j = k + 1; j < n; j++) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).divexact(prev);
      }
      m[i][k] = Polynomial<T>();
    }
    prev = m[k][k];
  }
  Polynomial<T> det = m[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

/// Wronskian determinant: row i holds the i-th derivatives of the inputs.
/// The zero polynomial is a legal result.
template <typename T>
Polynomial<T> wronskian(const std::vector<Polynomial<T>>& fs) {
  if (fs.empty()) throw std::invalid_argument("wronskian of empty list");
  const std::size_t n = fs.size();
  std::vector<std::vector<Polynomial<T>>> m(n, std::vector<Polynomial<T>>(n));
  for (std::size_t j = 0; j < n; j++) {
    m[0][j] = fs[j];
    for (std::size_t i = 1; i < n; i++) m[i][j] = m[i - 1][j].derivative();
  }
  return bareiss_det(std::move(m));
}

// ---------------------------------------------------------------------------
// Exact resultant via the Sylvester matrix (integer Bareiss). Reference path;
// the fast certification path lives in modular.hpp.
// ---------------------------------------------------------------------------

inline Integer bareiss_det_int(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; k++) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) piv++;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; i++) {
      for (std::size_t j = k + 1; j < n; j++)
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign < 0 ? Integer(-m[n - 1][n - 1]) : m[n - 1][n - 1];
}

/// Exact resultant of two rational polynomials.
inline Rational resultant_exact(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return Rational(0);
  int da = a.degree(), db = b.degree();
  if (da == 0) {
    Rational r = 1;
    for (int i = 0; i < db; i++) r *= a[0];
    return r;
  }
  if (db == 0) {
    Rational r = 1;
    for (int i = 0; i < da; i++) r *= b[0];
    return r;
  }
  Integer ca, cb;
  IntPoly ia = to_integer(a, ca), ib = to_integer(b, cb);
  std::size_t rows = da + db;
  std::vector<std::vector<Integer>> syl(rows, std::vector<Integer>(rows, Integer(0)));
  for (int r = 0; r < db; r++)
    for (int i = 0; i <= da; i++) syl[r][r + da - i] = ia[i];
  for (int r = 0; r < da; r++)
    for (int i = 0; i <= db; i++) syl[db + r][r + db - i] = ib[i];
  Integer d = bareiss_det_int(std::move(syl));
  // undo denominator clearing: res(ca*a, cb*b) = ca^db * cb^da * res(a, b)
  Rational result(d);
  for (int i = 0; i < db; i++) result /= Rational(ca);
  for (int i = 0; i < da; i++) result /= Rational(cb);
  return result;
}

}  // namespace vortexforge
