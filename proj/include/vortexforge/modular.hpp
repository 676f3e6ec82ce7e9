#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vortexforge/exactops.hpp"
#include "vortexforge/polynomial.hpp"

namespace vortexforge {

// Arithmetic mod a prime p < 2^63, products via unsigned 128-bit.
namespace modp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint64_t pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul(r, b, p);
    b = mul(b, b, p);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return pow(a, p - 2, p); }

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, s++;
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; i++) {
      x = mul(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace modp

/// The `count` largest primes below 2^63, descending.
inline std::vector<std::uint64_t> largest_machine_primes(int count) {
  std::vector<std::uint64_t> ps;
  std::uint64_t c = (1ULL << 63) - 1;
  while (static_cast<int>(ps.size()) < count) {
    if (modp::is_prime(c)) ps.push_back(c);
    c -= 2;
  }
  return ps;
}

/// Rational polynomial reduced mod p; nullopt when some denominator is
/// divisible by p (prime unusable for this input).
inline std::optional<std::vector<std::uint64_t>> poly_mod(const RationalPoly& a, std::uint64_t p) {
  std::vector<std::uint64_t> r(a.coeffs().size());
  Integer ip(p);
  for (std::size_t i = 0; i < r.size(); i++) {
    Integer d = den(a[static_cast<int>(i)]) % ip;
    if (d == 0) return std::nullopt;
    Integer n = num(a[static_cast<int>(i)]) % ip;
    if (n < 0) n += ip;
    r[i] = modp::mul(static_cast<std::uint64_t>(n), modp::inv(static_cast<std::uint64_t>(d), p), p);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

/// Resultant mod p through a Euclidean remainder sequence.
inline std::uint64_t resultant_mod(std::vector<std::uint64_t> f, std::vector<std::uint64_t> g,
                                   std::uint64_t p) {
  auto degv = [](const std::vector<std::uint64_t>& v) { return static_cast<int>(v.size()) - 1; };
  if (f.empty() || g.empty()) return 0;
  std::uint64_t res = 1;
  bool negate = false;
  while (degv(g) > 0) {
    int df = degv(f), dg = degv(g);
    if (df < dg) {
      if ((df & 1) && (dg & 1)) negate = !negate;
      std::swap(f, g);
      continue;
    }
    // f mod g
    std::uint64_t lginv = modp::inv(g.back(), p);
    std::vector<std::uint64_t> r = f;
    for (int k = df - dg; k >= 0; k--) {
      if (degv(r) < dg + k) continue;
      std::uint64_t q = modp::mul(r[dg + k], lginv, p);
      if (q) {
        for (int i = 0; i <= dg; i++) r[i + k] = modp::sub(r[i + k], modp::mul(q, g[i], p), p);
      }
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    if (r.empty()) return 0;  // common factor
    int dr = degv(r);
    res = modp::mul(res, modp::pow(g.back(), df - dr, p), p);
    if ((df & 1) && (dg & 1)) negate = !negate;
    f = std::move(g);
    g = std::move(r);
  }
  // g is a nonzero constant
  res = modp::mul(res, modp::pow(g[0], degv(f), p), p);
  return negate ? modp::sub(0, res, p) : res;
}

struct ModularResidue {
  std::uint64_t prime = 0;
  bool usable = false;
  std::uint64_t residue = 0;
};

/// Resultant of a, b reduced mod each prime. Primes dividing a denominator
/// are reported unusable and skipped. Any nonzero residue certifies
/// res(a, b) != 0, hence no common roots.
inline std::vector<ModularResidue> resultant_mod_primes(const RationalPoly& a,
                                                        const RationalPoly& b,
                                                        const std::vector<std::uint64_t>& primes) {
  std::vector<ModularResidue> out;
  out.reserve(primes.size());
  bool any_usable = false;
  for (std::uint64_t p : primes) {
    ModularResidue r;
    r.prime = p;
    auto fa = poly_mod(a, p);
    auto fb = poly_mod(b, p);
    if (fa && fb) {
      r.usable = true;
      any_usable = true;
      r.residue = resultant_mod(*fa, *fb, p);
    }
    out.push_back(r);
  }
  if (!any_usable) throw std::runtime_error("no usable primes");
  return out;
}

}  // namespace vortexforge
