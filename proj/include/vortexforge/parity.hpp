#pragma once

#include <map>
#include <vector>

#include "vortexforge/rational.hpp"
#include "vortexforge/theta.hpp"

namespace vortexforge {

/// Sparse multivariate polynomial over Q in variables (z, k_2, ..., k_n);
/// exponent vector index 0 is z. Used only for the small-n index checks,
/// so a map representation is plenty.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const Rational& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_[Exponents(nvars, 0)] = c;
    return p;
  }
  static MultiPoly variable(int nvars, int idx) {
    MultiPoly p(nvars);
    Exponents e(nvars, 0);
    e[idx] = 1;
    p.terms_[e] = 1;
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_[e] = c;
      } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_[e] = -c;
      } else {
        it->second -= c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea);
        for (std::size_t i = 0; i < e.size(); i++) e[i] += eb[i];
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
          r.terms_[e] = ca * cb;
        } else {
          it->second += ca * cb;
          if (it->second == 0) r.terms_.erase(it);
        }
      }
    return r;
  }

  MultiPoly& scale(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  /// Partial derivative with respect to variable idx.
  MultiPoly dvar(int idx) const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[idx] == 0) continue;
      Exponents d = e;
      d[idx] -= 1;
      r.terms_[d] = c * e[idx];
    }
    return r;
  }

  /// Partial derivative with respect to z (variable 0).
  MultiPoly dz() const { return dvar(0); }

 private:
  int nvars_ = 0;
  std::map<Exponents, Rational> terms_;
};

/// theta_0..theta_max with k_2..k_n kept symbolic.
inline std::vector<MultiPoly> theta_multivariate(int max_index, int n) {
  const int nvars = n;  // z, k_2..k_n
  std::vector<MultiPoly> th(max_index + 1);
  th[0] = MultiPoly::constant(nvars, 1);
  MultiPoly z = MultiPoly::variable(nvars, 0);
  for (int m = 0; m < max_index; m++) {
    MultiPoly next = z * th[m];
    for (int j = 2; j <= n && m - 2 * j + 2 >= 0; j++) {
      next -= MultiPoly::variable(nvars, j - 1) * th[m - 2 * j + 2];
    }
    next.scale(Rational(1, m + 1));
    th[m + 1] = next;
  }
  return th;
}

namespace detail {

// Determinant by expansion along the first remaining column, memoized on the
// surviving row set. Division-free; fine for the n <= 6 matrices here.
inline MultiPoly det_minor(const std::vector<std::vector<MultiPoly>>& m, unsigned rows_mask,
                           int col, std::map<unsigned, MultiPoly>& memo) {
  const int n = static_cast<int>(m.size());
  if (col == n) return MultiPoly::constant(m[0][0].nvars(), 1);
  auto it = memo.find(rows_mask);
  if (it != memo.end()) return it->second;
  MultiPoly acc(m[0][0].nvars());
  int sign = 1;
  for (int r = 0; r < n; r++) {
    if (!(rows_mask & (1u << r))) continue;
    if (!m[r][col].is_zero()) {
      MultiPoly sub = det_minor(m, rows_mask & ~(1u << r), col + 1, memo);
      MultiPoly term = m[r][col] * sub;
      if (sign < 0) term.scale(Rational(-1));
      acc += term;
    }
    sign = -sign;
  }
  memo[rows_mask] = acc;
  return acc;
}

}  // namespace detail

inline MultiPoly multipoly_det(const std::vector<std::vector<MultiPoly>>& m) {
  std::map<unsigned, MultiPoly> memo;
  return detail::det_minor(m, (1u << m.size()) - 1, 0, memo);
}

/// Theta_n with symbolic parameters (small n only).
inline MultiPoly adler_moser_multivariate(int n) {
  auto th = theta_multivariate(2 * n - 1, n);
  std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n));
  for (int j = 0; j < n; j++) {
    m[0][j] = th[2 * (j + 1) - 1];
    for (int i = 1; i < n; i++) m[i][j] = m[i - 1][j].dz();
  }
  MultiPoly det = multipoly_det(m);
  det.scale(Rational(wronskian_constant(n)));
  return det;
}

/// Substitute numeric values for k_2..k_n, keeping z symbolic.
inline RationalPoly substitute_k(const MultiPoly& p, const std::vector<Rational>& kvals) {
  std::vector<Rational> out;
  for (const auto& [e, c] : p.terms()) {
    Rational v = c;
    for (std::size_t i = 1; i < e.size(); i++)
      for (int pw = 0; pw < e[i]; pw++) v *= kvals.at(i - 1);
    if (e[0] >= static_cast<int>(out.size())) out.resize(e[0] + 1, Rational(0));
    out[e[0]] += v;
  }
  return RationalPoly(std::move(out));
}

/// Index of a monomial k_2^{l_2}...k_j^{l_j} z^m is (-1)^(l_2+...+l_j+m).
inline int monomial_index(const MultiPoly::Exponents& e) {
  int s = 0;
  for (int v : e) s += v;
  return (s % 2 == 0) ? 1 : -1;
}

/// Every term of theta_{2m+1} has index -1.
inline bool verify_theta_index(int max_odd, int n) {
  auto th = theta_multivariate(max_odd, n);
  for (int m = 1; m <= max_odd; m += 2)
    for (const auto& [e, c] : th[m].terms())
      if (monomial_index(e) != -1) return false;
  return true;
}

/// Every term of Theta_n has index (-1)^(n(n+1)/2). Keep n <= 6: the
/// expansion is exponential in n.
inline bool verify_index_parity(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("verify_index_parity supports 1 <= n <= 6");
  MultiPoly theta_n = adler_moser_multivariate(n);
  int expected = ((n * (n + 1) / 2) % 2 == 0) ? 1 : -1;
  for (const auto& [e, c] : theta_n.terms())
    if (monomial_index(e) != expected) return false;
  return !theta_n.is_zero();
}

}  // namespace vortexforge
