#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace vortexforge {

// Exact coefficient field. GMP-backed rationals are kept canonical (lowest
// terms, positive denominator) by the backend itself.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Integer num(const Rational& q) { return numerator(q); }
inline Integer den(const Rational& q) { return denominator(q); }

/// "a/b" or "a"; accepts leading '-'.
inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  Integer n(s.substr(0, slash)), d(s.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rational(n, d);
}

inline std::string rational_to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

/// Gaussian rational: exact complex arithmetic over Rational.
struct ComplexRational {
  Rational re{0};
  Rational im{0};

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(int r) : re(r) {}  // NOLINT

  bool is_zero() const { return re == 0 && im == 0; }

  ComplexRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  ComplexRational operator-() const { return {-re, -im}; }
  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  ComplexRational& operator/=(const ComplexRational& o) {
    Rational n2 = o.norm2();
    if (n2 == 0) throw std::domain_error("division by zero ComplexRational");
    Rational r = (re * o.re + im * o.im) / n2;
    im = (im * o.re - re * o.im) / n2;
    re = r;
    return *this;
  }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }
};

// Uniform coefficient-field helpers so Polynomial<T> can stay generic.
inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const ComplexRational& c) { return c.is_zero(); }
inline std::string coeff_to_string(const Rational& q) { return rational_to_string(q); }
inline std::string coeff_to_string(const ComplexRational& c) {
  return rational_to_string(c.re) + (c.im >= 0 ? "+" : "") + rational_to_string(c.im) + "i";
}

}  // namespace vortexforge
