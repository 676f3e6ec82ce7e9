#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vortexforge/exactops.hpp"
#include "vortexforge/polynomial.hpp"

namespace vortexforge {

/// Parameter pack for the theta family: K = (k_2, ..., k_n), the exponential
/// weight mu and the translation t. The symmetric specialization is
/// t = -mu/2, k_j = -mu^(2j-1)/2.
template <typename T>
struct ThetaParamsT {
  std::vector<T> k;  // k[0] = k_2, k[1] = k_3, ...
  T mu{1};
  T t{0};

  const T& k_at(int j) const {  // parameter k_j, j >= 2
    return k.at(static_cast<std::size_t>(j - 2));
  }
};

using ThetaParams = ThetaParamsT<Rational>;

/// Symmetric-specialization parameters for a given order.
inline ThetaParams symmetric_params(int n, const Rational& mu) {
  ThetaParams p;
  p.mu = mu;
  p.t = -mu / 2;
  for (int j = 2; j <= std::max(n, 1); j++) {
    Rational pw = mu;
    for (int e = 1; e < 2 * j - 1; e++) pw *= mu;
    p.k.push_back(-pw / 2);
  }
  return p;
}

/// theta_0 .. theta_m generated by
///   sum theta_n lambda^n = exp(z lambda - sum_j k_j lambda^(2j-1)/(2j-1)),
/// computed through the equivalent recurrence
///   (m+1) theta_{m+1} = z theta_m - sum_j k_j theta_{m-2j+2}.
/// Consequently theta_{m+1}' = theta_m exactly and deg theta_m = m.
template <typename T>
std::vector<Polynomial<T>> theta_polynomials(int max_index, const ThetaParamsT<T>& params) {
  std::vector<Polynomial<T>> th(max_index + 1);
  th[0] = Polynomial<T>::constant(T(1));
  for (int m = 0; m < max_index; m++) {
    // z * theta_m
    std::vector<T> t(th[m].coeffs().size() + 1, T(0));
    for (std::size_t i = 0; i < th[m].coeffs().size(); i++) t[i + 1] = th[m].coeffs()[i];
    Polynomial<T> next(std::move(t));
    for (int j = 2; m - 2 * j + 2 >= 0; j++) {
      if (j - 2 >= static_cast<int>(params.k.size()))
        throw std::invalid_argument("K too short");
      next -= params.k_at(j) * th[m - 2 * j + 2];
    }
    next.scale(T(1) / T(m + 1));
    th[m + 1] = std::move(next);
  }
  return th;
}

/// The theta sequence backing Theta_n: theta_0 .. theta_{2n-1}.
template <typename T>
struct ThetaSequenceT {
  std::vector<Polynomial<T>> thetas;
  ThetaParamsT<T> params;
};

using ThetaSequence = ThetaSequenceT<Rational>;

template <typename T>
ThetaSequenceT<T> theta_sequence(int n, const ThetaParamsT<T>& params) {
  if (n < 1) throw std::invalid_argument("theta_sequence requires n >= 1");
  if (static_cast<int>(params.k.size()) < n - 1) throw std::invalid_argument("K too short");
  return {theta_polynomials(2 * n - 1, params), params};
}

/// Wronskian normalization constant c_n = prod_{j=1}^{n} (2j+1)^(n-j).
inline Integer wronskian_constant(int n) {
  Integer c = 1;
  for (int j = 1; j <= n; j++)
    for (int e = 0; e < n - j; e++) c *= (2 * j + 1);
  return c;
}

// Integer -> coefficient field embedding.
template <typename T>
T integer_as(const Integer& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(v);
  } else {
    return T(Rational(v));
  }
}

/// Adler-Moser polynomial Theta_n = c_n W(theta_1, theta_3, ..., theta_{2n-1}),
/// monic of degree n(n+1)/2. The translation t in params is NOT applied here;
/// use shift for Theta_{n,t}.
template <typename T>
Polynomial<T> adler_moser(int n, const ThetaParamsT<T>& params) {
  auto seq = theta_sequence(n, params);
  std::vector<Polynomial<T>> odd;
  odd.reserve(n);
  for (int m = 1; m <= 2 * n - 1; m += 2) odd.push_back(seq.thetas[m]);
  Polynomial<T> r = wronskian(odd);
  r.scale(integer_as<T>(wronskian_constant(n)));
  return r;
}

/// Modified polynomial: c_n e^{-mu z} W(theta_1, ..., theta_{2n-1}, e^{mu z}).
/// The exponential column reduces to powers of mu after factoring e^{mu z}.
template <typename T>
Polynomial<T> modified_adler_moser(int n, const ThetaParamsT<T>& params) {
  if (is_zero(params.mu)) throw std::invalid_argument("modified polynomial undefined");
  auto seq = theta_sequence(n, params);
  const int sz = n + 1;
  std::vector<std::vector<Polynomial<T>>> m(sz, std::vector<Polynomial<T>>(sz));
  for (int i = 0; i < sz; i++) {
    for (int j = 0; j < n; j++) {
      int idx = 2 * (j + 1) - 1 - i;
      m[i][j] = idx >= 0 ? seq.thetas[idx] : Polynomial<T>();
    }
    T p{1};
    for (int e = 0; e < i; e++) p *= params.mu;
    m[i][n] = Polynomial<T>::constant(p);
  }
  Polynomial<T> det = bareiss_det(std::move(m));
  det.scale(integer_as<T>(wronskian_constant(n)));
  return det;
}

/// K-tilde of the translation identity: k_j -> k_j + mu^(1-2j).
template <typename T>
ThetaParamsT<T> translated_params(const ThetaParamsT<T>& params) {
  ThetaParamsT<T> r = params;
  for (std::size_t i = 0; i < r.k.size(); i++) {
    int j = static_cast<int>(i) + 2;
    T p{1};
    for (int e = 0; e < 2 * j - 1; e++) p *= params.mu;
    r.k[i] += T(1) / p;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bilinear recursion path.
// ---------------------------------------------------------------------------

/// Evaluate Theta_n at a single exact point directly from the Wronskian
/// matrix of theta values (used to pin the recursion's integration constant).
template <typename T>
T adler_moser_value_at(int n, const ThetaParamsT<T>& params, const T& x) {
  auto th = theta_polynomials(2 * n - 1, params);
  const int sz = n;
  std::vector<std::vector<T>> m(sz, std::vector<T>(sz, T(0)));
  for (int i = 0; i < sz; i++)
    for (int j = 0; j < sz; j++) {
      int idx = 2 * (j + 1) - 1 - i;
      if (idx >= 0) m[i][j] = th[idx].eval(x);
    }
  // plain fraction Gaussian elimination; the matrix is small
  T det{1};
  for (int c = 0; c < sz; c++) {
    int piv = -1;
    for (int r = c; r < sz; r++)
      if (!is_zero(m[r][c])) {
        piv = r;
        break;
      }
    if (piv < 0) return T(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < sz; r++) {
      if (is_zero(m[r][c])) continue;
      T f = m[r][c] / m[c][c];
      for (int cc = c; cc < sz; cc++) m[r][cc] -= f * m[c][cc];
    }
  }
  return det * integer_as<T>(wronskian_constant(n));
}

/// One step of the bilinear recursion
///   (2n+1) A_n^2 = A_{n-1} A_{n+1}' - A_{n-1}' A_{n+1},
/// solved exactly for A_{n+1} as a first-order linear ODE (triangular back
/// substitution on coefficients). The one-parameter freedom gamma*A_{n-1}
/// is pinned by matching the Wronskian normalization at a single point:
/// pin(z0) must return A_{n+1}(z0).
///
/// Throws when the back substitution hits an inconsistent row, which would
/// mean the inputs are not consecutive members of an Adler-Moser family.
template <typename T, typename PinFn>
Polynomial<T> recursion_step(int n, const Polynomial<T>& a_prev, const Polynomial<T>& a_cur,
                             PinFn&& pin) {
  if (a_prev.is_zero() || a_cur.is_zero())
    throw std::domain_error("recursion_step: zero polynomial input");
  const int m = a_prev.degree();
  const int D = a_cur.degree() + (n + 1);
  Polynomial<T> rhs = a_cur * a_cur;
  rhs.scale(T(2 * n + 1));
  std::vector<T> x(D + 1, T(0));
  // coefficient rows: sum_{i+j=s+1} a_i (j-i) x_j = rhs_s, solved descending
  for (int s = D + m - 1; s >= 0; s--) {
    int j = s + 1 - m;
    T acc = rhs[s];
    int ilo = std::max(0, s + 1 - D);
    for (int i = ilo; i <= std::min(m, s + 1); i++) {
      int jj = s + 1 - i;
      if (jj == j || jj > D || jj < 0) continue;
      if (!is_zero(a_prev[i]) && !is_zero(x[jj])) acc -= a_prev[i] * T(jj - i) * x[jj];
    }
    if (j == m) {
      if (!is_zero(acc))
        throw std::domain_error("recursion_step: inconsistent bilinear system at n=" +
                                std::to_string(n));
      continue;  // x[m] is the free (integration-constant) slot, set below
    }
    if (j < 0 || j > D) {
      if (!is_zero(acc))
        throw std::domain_error("recursion_step: overdetermined row failed at n=" +
                                std::to_string(n));
      continue;
    }
    x[j] = acc / (a_prev.lc() * T(j - m));
  }
  Polynomial<T> result(std::move(x));
  // pin the gamma * A_{n-1} component at a point where A_{n-1} != 0
  T z0{0};
  while (is_zero(a_prev.eval(z0))) z0 += T(1);
  T gamma = (pin(z0) - result.eval(z0)) / a_prev.eval(z0);
  result += gamma * a_prev;
  return result;
}

/// Theta_1 .. Theta_n via the bilinear recursion, each already shifted by the
/// params' translation t (A_k = Theta_k(z - t)).
template <typename T>
std::vector<Polynomial<T>> adler_moser_chain_recursive(int n, const ThetaParamsT<T>& params) {
  if (n < 1) throw std::invalid_argument("adler_moser_chain_recursive requires n >= 1");
  std::vector<Polynomial<T>> chain;
  chain.reserve(n + 1);
  chain.push_back(Polynomial<T>::constant(T(1)));            // A_0
  chain.push_back(Polynomial<T>({-params.t, T(1)}));         // A_1 = z - t
  for (int k = 1; k < n; k++) {
    auto pin = [&](const T& z0) {
      return adler_moser_value_at(k + 1, params, T(z0 - params.t));
    };
    chain.push_back(recursion_step(k, chain[k - 1], chain[k], pin));
  }
  chain.erase(chain.begin());  // drop A_0; result is Theta_1..Theta_n shifted
  return chain;
}

/// Theta_n by the recursion path; must agree with adler_moser exactly.
template <typename T>
Polynomial<T> adler_moser_recursive(int n, const ThetaParamsT<T>& params) {
  ThetaParamsT<T> unshifted = params;
  unshifted.t = T(0);
  return adler_moser_chain_recursive(n, unshifted).back();
}

// ---------------------------------------------------------------------------
// Symmetric family and the polynomial identities.
// ---------------------------------------------------------------------------

/// The pair (A_n, B_n) of the symmetric specialization: A_n = Theta_{n,t}
/// with t = -mu/2, k_j = -mu^(2j-1)/2, and B_n(z) = A_n(-z).
struct SymmetricPair {
  RationalPoly A;
  RationalPoly B;
  int n = 0;
  ThetaParams params;
};

enum class Construction { kAuto, kWronskian, kRecursive };

inline SymmetricPair symmetric_family(int n, const Rational& mu,
                                      Construction how = Construction::kAuto) {
  if (mu <= 0) throw std::invalid_argument("symmetric_family requires mu > 0");
  ThetaParams params = symmetric_params(n, mu);
  bool recursive = how == Construction::kRecursive || (how == Construction::kAuto && n > 8);
  RationalPoly a;
  if (recursive) {
    a = adler_moser_chain_recursive(n, params).back();
  } else {
    a = adler_moser(n, params).shift(params.t);
  }
  return {a, a.reflect(), n, params};
}

/// All of A_1..A_n at once (the recursion produces the chain anyway).
inline std::vector<SymmetricPair> symmetric_family_chain(int n, const Rational& mu) {
  ThetaParams params = symmetric_params(n, mu);
  auto chain = adler_moser_chain_recursive(n, params);
  std::vector<SymmetricPair> out;
  out.reserve(n);
  for (int k = 1; k <= n; k++)
    out.push_back({chain[k - 1], chain[k - 1].reflect(), k, params});
  return out;
}

/// Residual of the generalized Tkachenko equation:
///   P''Q - 2P'Q' + PQ'' - 2 mu (P'Q - PQ').
/// Identically zero for (P, Q) = (A_n, B_n) at the symmetric specialization.
template <typename T>
Polynomial<T> tkachenko_residual(const Polynomial<T>& p, const Polynomial<T>& q, const T& mu) {
  Polynomial<T> dp = p.derivative(), dq = q.derivative();
  Polynomial<T> lhs = p.derivative().derivative() * q - T(2) * (dp * dq) +
                      p * q.derivative().derivative();
  Polynomial<T> rhs = dp * q - p * dq;
  rhs.scale(T(2) * mu);
  return lhs - rhs;
}

/// Residual of the recursion relation A''B - 2A'B' + AB'' for consecutive
/// members (A, B) = (A_n, A_{n-1}); zero on the Adler-Moser chain.
template <typename T>
Polynomial<T> recursion_residual(const Polynomial<T>& a_next, const Polynomial<T>& a_prev) {
  return a_next.derivative().derivative() * a_prev -
         T(2) * (a_next.derivative() * a_prev.derivative()) +
         a_next * a_prev.derivative().derivative();
}

/// Residual of the bilinear identity (2n+1)A_n^2 - (A_{n-1}A_{n+1}' - A_{n-1}'A_{n+1}).
template <typename T>
Polynomial<T> bilinear_residual(int n, const Polynomial<T>& a_prev, const Polynomial<T>& a_cur,
                                const Polynomial<T>& a_next) {
  Polynomial<T> lhs = a_cur * a_cur;
  lhs.scale(T(2 * n + 1));
  return lhs - (a_prev * a_next.derivative() - a_prev.derivative() * a_next);
}

// ---------------------------------------------------------------------------
// Parameter derivatives (kernel directions of the vortex linearization).
// ---------------------------------------------------------------------------

/// d theta_m / d k_j = -theta_{m-(2j-1)} / (2j-1).
template <typename T>
Polynomial<T> theta_partial_k(const std::vector<Polynomial<T>>& thetas, int m, int j) {
  int idx = m - (2 * j - 1);
  if (idx < 0) return Polynomial<T>();
  Polynomial<T> r = thetas[idx];
  r.scale(T(-1) / T(2 * j - 1));
  return r;
}

/// dTheta_n/dk_j: sum over columns of Wronskians with one column replaced by
/// the k_j-derivative of its theta.
template <typename T>
Polynomial<T> adler_moser_partial_k(int n, int j, const ThetaParamsT<T>& params) {
  auto seq = theta_sequence(n, params);
  Polynomial<T> total;
  for (int col = 1; col <= n; col++) {
    std::vector<Polynomial<T>> fs;
    fs.reserve(n);
    bool trivial = false;
    for (int m = 1; m <= 2 * n - 1; m += 2) {
      if (m == 2 * col - 1) {
        auto d = theta_partial_k(seq.thetas, m, j);
        if (d.is_zero()) {
          trivial = true;
          break;
        }
        fs.push_back(d);
      } else {
        fs.push_back(seq.thetas[m]);
      }
    }
    if (trivial) continue;
    total += wronskian(fs);
  }
  total.scale(integer_as<T>(wronskian_constant(n)));
  return total;
}

/// dTheta~_n/dk_j for the modified polynomial (exponential column retained).
template <typename T>
Polynomial<T> modified_adler_moser_partial_k(int n, int j, const ThetaParamsT<T>& params) {
  if (is_zero(params.mu)) throw std::invalid_argument("modified polynomial undefined");
  auto seq = theta_sequence(n, params);
  Polynomial<T> total;
  const int sz = n + 1;
  for (int col = 0; col < n; col++) {
    if (theta_partial_k(seq.thetas, 2 * (col + 1) - 1, j).is_zero()) continue;
    std::vector<std::vector<Polynomial<T>>> m(sz, std::vector<Polynomial<T>>(sz));
    for (int jj = 0; jj < n; jj++) {
      Polynomial<T> base = (jj == col) ? theta_partial_k(seq.thetas, 2 * (jj + 1) - 1, j)
                                       : seq.thetas[2 * (jj + 1) - 1];
      m[0][jj] = base;
      for (int i = 1; i < sz; i++) m[i][jj] = m[i - 1][jj].derivative();
    }
    for (int i = 0; i < sz; i++) {
      T p{1};
      for (int e = 0; e < i; e++) p *= params.mu;
      m[i][n] = Polynomial<T>::constant(p);
    }
    total += bareiss_det(std::move(m));
  }
  total.scale(integer_as<T>(wronskian_constant(n)));
  return total;
}

}  // namespace vortexforge
