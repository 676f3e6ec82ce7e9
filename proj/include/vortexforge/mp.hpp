#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <utility>

#include "vortexforge/polynomial.hpp"

namespace vortexforge {

/// Arbitrary-precision real, precision set per call site via
/// Real::default_precision (decimal digits).
using Real = boost::multiprecision::mpfr_float;

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(bits * 0.30103) + 2;
}

/// RAII guard for the thread's working precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits10) : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

/// Minimal complex type over Real (no MPC dependency).
struct Complex {
  Real re{0};
  Real im{0};

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}  // NOLINT
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r) : re(r) {}  // NOLINT
  Complex(double r, double i) : re(r), im(i) {}

  Complex conj() const { return {re, -im}; }
  Real norm2() const { return re * re + im * im; }
  Real abs() const { return sqrt(norm2()); }

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Real n2 = o.norm2();
    Real r = (re * o.re + im * o.im) / n2;
    im = (im * o.re - re * o.im) / n2;
    re = r;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline Real to_real(const Rational& q) { return Real(num(q)) / Real(den(q)); }
inline Complex to_complex(const ComplexRational& c) { return {to_real(c.re), to_real(c.im)}; }

// mpfr variables carry their own precision through copies; these force a
// value onto the current working precision when crossing precision levels.
inline Real reprec(Real x, unsigned digits10) {
  x.precision(digits10);
  return x;
}
inline Complex reprec(const Complex& z, unsigned digits10) {
  return {reprec(z.re, digits10), reprec(z.im, digits10)};
}

inline Real mp_pi() { return 4 * atan(Real(1)); }

/// Horner evaluation of an exact polynomial at a complex point, plus a
/// running bound on the accumulated rounding error (half-ulp model).
template <typename T>
std::pair<Complex, Real> eval_complex_with_error(const Polynomial<T>& p, const Complex& z,
                                                 unsigned precision_bits) {
  if (precision_bits < 64) throw std::invalid_argument("precision_bits must be >= 64");
  PrecisionGuard guard(bits_to_digits10(precision_bits));
  Real u = ldexp(Real(1), -static_cast<int>(precision_bits));
  Real az = z.abs();
  Complex acc;
  Real err = 0;
  for (int i = p.degree(); i >= 0; i--) {
    Complex ci;
    if constexpr (std::is_same_v<T, Rational>) {
      ci = Complex(to_real(p[i]));
    } else {
      ci = to_complex(p[i]);
    }
    acc = acc * z + ci;
    // propagate old error through the multiply, then account for the new
    // rounding of one multiply-add in complex arithmetic (~4 ops)
    err = err * az + acc.abs() * u * 4;
  }
  return {acc, err};
}

template <typename T>
Complex eval_complex(const Polynomial<T>& p, const Complex& z, unsigned precision_bits) {
  return eval_complex_with_error(p, z, precision_bits).first;
}

}  // namespace vortexforge
