#pragma once

#include <stdexcept>
#include <utility>

#include "vortexforge/exactops.hpp"
#include "vortexforge/polynomial.hpp"

namespace vortexforge {

/// Euclidean gcd over a coefficient field; Rational inputs are routed through
/// the integer PRS to keep coefficients small.
template <typename T>
Polynomial<T> poly_gcd_generic(const Polynomial<T>& a, const Polynomial<T>& b) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("undefined gcd");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    return poly_gcd(a, b);
  } else {
    Polynomial<T> f = a, g = b;
    while (!g.is_zero()) {
      auto r = f.divrem(g).second;
      f = std::move(g);
      g = std::move(r);
    }
    if (f.is_zero()) throw std::domain_error("undefined gcd");
    return f.monic();
  }
}

/// Reduced rational function num/den, den monic and coprime to num.
template <typename T>
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Polynomial<T>::constant(T(1))) {}
  RationalFunction(Polynomial<T> num, Polynomial<T> den)
      : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    reduce();
  }
  explicit RationalFunction(Polynomial<T> num)
      : num_(std::move(num)), den_(Polynomial<T>::constant(T(1))) {}

  const Polynomial<T>& num() const { return num_; }
  const Polynomial<T>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = Polynomial<T>::constant(T(1));
      return;
    }
    Polynomial<T> g = poly_gcd_generic(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divexact(g);
      den_ = den_.divexact(g);
    }
    T inv = T(1) / den_.lc();
    num_.scale(inv);
    den_.scale(inv);
  }

  Polynomial<T> num_;
  Polynomial<T> den_;
};

using RationalFn = RationalFunction<Rational>;

/// Function of the form (num/den) * exp(mu z), closed under the operations
/// the Darboux chain needs.
struct DarbouxFunction {
  RationalFn rat;
  Rational mu{0};

  /// d/dz [R e^{mu z}] = (R' + mu R) e^{mu z}.
  DarbouxFunction derivative() const {
    RationalFn scaled = rat;
    scaled = RationalFn(Rational(mu) * scaled.num(), scaled.den());
    return {rat.derivative() + scaled, mu};
  }
};

/// Darboux step psi_{n+1} = psi_n (ln phi_n)' - psi_n', with phi given as a
/// rational function. Exact; the e^{mu z} factor rides along.
inline DarbouxFunction darboux_step(const DarbouxFunction& psi, const RationalFn& phi) {
  if (phi.num().is_zero()) throw std::domain_error("darboux_step: zero phi numerator");
  RationalFn log_deriv = phi.derivative() / phi;
  DarbouxFunction dpsi = psi.derivative();
  return {psi.rat * log_deriv - dpsi.rat, psi.mu};
}

/// Residual of the Schrodinger equation psi'' + 2(ln A)'' psi = mu^2 psi for
/// psi = R e^{mu z}; reduces to R'' + 2 mu R' + 2(ln A)'' R = 0.
inline RationalFn schrodinger_residual(const DarbouxFunction& psi, const RationalPoly& a) {
  const RationalFn& r = psi.rat;
  RationalFn r1 = r.derivative();
  RationalFn r2 = r1.derivative();
  RationalPoly a1 = a.derivative();
  RationalFn log_second(a.derivative().derivative() * a - a1 * a1, a * a);
  RationalFn two_mu_r1(Rational(2) * psi.mu * r1.num(), r1.den());
  RationalFn two_log_r = log_second * r;
  two_log_r = RationalFn(Rational(2) * two_log_r.num(), two_log_r.den());
  return r2 + two_mu_r1 + two_log_r;
}

}  // namespace vortexforge
