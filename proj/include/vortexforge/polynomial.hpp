#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vortexforge/rational.hpp"

namespace vortexforge {

/// Dense univariate polynomial over an exact coefficient field T.
/// Coefficients are stored ascending; the zero polynomial has an empty
/// coefficient list and degree -1. Every operation is exact.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial zero() { return Polynomial(); }
  static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
  /// Monomial c*z^k.
  static Polynomial monomial(T coeff, int k) {
    std::vector<T> v(k + 1, T(0));
    v[k] = std::move(coeff);
    return Polynomial(std::move(v));
  }
  static Polynomial identity() { return monomial(T(1), 1); }  // z

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }

  /// Coefficient of z^k (0 beyond degree).
  const T& operator[](int k) const {
    static const T kZero{0};
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : kZero;
  }

  const T& lc() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); i++) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); i++) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); i++) {
      if (vortexforge::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); j++) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial& scale(const T& s) {
    if (vortexforge::is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend Polynomial operator*(const T& s, Polynomial p) { return p.scale(s); }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<T> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); i++) r[i - 1] = c_[i] * T(static_cast<int>(i));
    return Polynomial(std::move(r));
  }

  T eval(const T& x) const {
    T acc{0};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// Exact composition p(z - t); degree preserved.
  Polynomial shift(const T& t) const {
    // Horner in (z - t): acc <- acc*(z-t) + c_i.
    Polynomial acc;
    Polynomial lin({-t, T(1)});
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * lin;
      acc += constant(c_[i]);
    }
    return acc;
  }

  /// p(-z).
  Polynomial reflect() const {
    Polynomial r = *this;
    for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
  }

  Polynomial monic() const {
    if (is_zero()) throw std::domain_error("monic of zero polynomial");
    Polynomial r = *this;
    T inv = T(1) / lc();
    for (auto& x : r.c_) x *= inv;
    return r;
  }

  /// Euclidean division; remainder degree < divisor degree.
  std::pair<Polynomial, Polynomial> divrem(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial q, r = *this;
    if (r.degree() < d.degree()) return {q, r};
    q.c_.assign(r.degree() - d.degree() + 1, T(0));
    T inv = T(1) / d.lc();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int k = r.degree() - d.degree();
      T f = r.lc() * inv;
      q.c_[k] = f;
      for (int i = 0; i <= d.degree(); i++) r.c_[i + k] -= f * d.c_[i];
      r.trim();
    }
    q.trim();
    return {q, r};
  }

  /// Exact quotient; throws if the division leaves a remainder.
  Polynomial divexact(const Polynomial& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (vortexforge::is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + coeff_to_string(c_[i]) + ")";
      if (i >= 1) s += "*" + var;
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && vortexforge::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

using RationalPoly = Polynomial<Rational>;
using ComplexPoly = Polynomial<ComplexRational>;

}  // namespace vortexforge
