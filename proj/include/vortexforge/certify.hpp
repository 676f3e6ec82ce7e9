#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vortexforge/modular.hpp"
#include "vortexforge/theta.hpp"
#include "vortexforge/util.hpp"

namespace vortexforge {

enum class CertifyMode { kExact, kModular };

struct CheckVerdict {
  bool pass = false;
  std::string method;           // "exact" or "modular"
  int nonzero_residues = 0;     // modular path only
};

/// Certification report for assumption (A) at order n:
///   (i)  gcd(A_n, A_{n-1}) constant       -> no common roots
///   (ii) gcd(A_n, A_n') constant          -> simple roots
///   (iii) gcd(A_n(z), A_n(-z)) constant   -> no roots shared with B_n
struct CertifyReport {
  int n = 0;
  int degree = 0;
  std::string construction;  // "wronskian" or "recursive"
  CheckVerdict assumption_A;
  CheckVerdict simple_roots;
  CheckVerdict no_shared_with_B;
  std::vector<std::uint64_t> primes;
  double wall_ms = 0;

  bool pass() const { return assumption_A.pass && simple_roots.pass && no_shared_with_B.pass; }
};

/// Exact no-common-roots check through the gcd.
inline bool coprime_exact(const RationalPoly& a, const RationalPoly& b) {
  return poly_gcd(a, b).degree() == 0;
}

namespace detail {

// At least `needed` nonzero residues over the prime list certify the
// resultant nonzero. One suffices mathematically; redundancy guards bugs.
inline CheckVerdict modular_check(const RationalPoly& a, const RationalPoly& b,
                                  const std::vector<std::uint64_t>& primes, int needed) {
  CheckVerdict v;
  v.method = "modular";
  try {
    auto residues = resultant_mod_primes(a, b, primes);
    for (const auto& r : residues)
      if (r.usable && r.residue != 0) v.nonzero_residues++;
    v.pass = v.nonzero_residues >= needed;
  } catch (const std::runtime_error&) {
    v.method = "exact";  // all primes unusable: fall back
    v.pass = coprime_exact(a, b);
  }
  return v;
}

inline CheckVerdict exact_check(const RationalPoly& a, const RationalPoly& b) {
  CheckVerdict v;
  v.method = "exact";
  v.pass = coprime_exact(a, b);
  return v;
}

}  // namespace detail

/// Certify assumption (A) for a concrete pair (A_n, A_{n-1}).
inline CertifyReport certify_pair(int n, const RationalPoly& a_n, const RationalPoly& a_prev,
                                  CertifyMode mode, const std::string& construction,
                                  int primes_count = 6, int needed_residues = 3) {
  Timer timer;
  CertifyReport rep;
  rep.n = n;
  rep.degree = a_n.degree();
  rep.construction = construction;
  RationalPoly b_n = a_n.reflect();
  if (mode == CertifyMode::kExact) {
    rep.assumption_A = detail::exact_check(a_n, a_prev);
    rep.simple_roots = detail::exact_check(a_n, a_n.derivative());
    rep.no_shared_with_B = detail::exact_check(a_n, b_n);
  } else {
    rep.primes = largest_machine_primes(primes_count);
    rep.assumption_A = detail::modular_check(a_n, a_prev, rep.primes, needed_residues);
    rep.simple_roots = detail::modular_check(a_n, a_n.derivative(), rep.primes, needed_residues);
    rep.no_shared_with_B = detail::modular_check(a_n, b_n, rep.primes, needed_residues);
  }
  rep.wall_ms = timer.ms();
  return rep;
}

/// Certify assumption (A) for the symmetric family at mu = 1.
inline CertifyReport certify_assumption_A(int n, CertifyMode mode,
                                          const Rational& mu = Rational(1)) {
  if (n < 2) throw std::invalid_argument("certify_assumption_A requires n >= 2");
  ThetaParams params = symmetric_params(n, mu);
  auto chain = adler_moser_chain_recursive(n, params);
  return certify_pair(n, chain[n - 1], chain[n - 2], mode, "recursive");
}

}  // namespace vortexforge
