#pragma once

#include <utility>
#include <vector>

#include "vortexforge/mp.hpp"
#include "vortexforge/polynomial.hpp"

namespace vortexforge {

/// All roots of a square-free exact polynomial, with a-posteriori error
/// radii. Ordering is deterministic: ascending (Re, |Im|), positive
/// imaginary part first inside a tie, so conjugate mates sit adjacent.
struct RootSet {
  std::vector<Complex> roots;
  std::vector<Real> error_radii;
  int source_degree = 0;
  unsigned precision_bits = 0;
};

/// Conjugation structure of a root set of a real-coefficient polynomial:
/// index pairs (i, i+1) with roots[i] = conj(roots[i+1]), plus real roots.
struct SymmetryClassification {
  std::vector<std::pair<int, int>> conjugate_pairs;
  std::vector<int> real_indices;
};

/// Descriptive radial clustering of a root set (k-means on moduli).
struct RingReport {
  int k = 0;
  std::vector<double> centers;
  std::vector<int> counts;
  std::vector<double> spreads;        // max |r - center| per cluster
  std::vector<int> assignment;        // root index -> cluster
  double max_relative_spread = 0;
};

/// Simultaneous Aberth-Ehrlich iteration from circular starting points,
/// then per-root Newton refinement at doubled precision until every
/// correction drops below 10^-(digits10(precision_bits)+5).
/// Requires p square-free (checked exactly); throws "repeated roots: refuse".
RootSet find_roots(const RationalPoly& p, unsigned precision_bits);

/// Same machinery for exact complex coefficients (no conjugate symmetry).
RootSet find_roots(const ComplexPoly& p, unsigned precision_bits);

/// Partition into conjugate pairs and real roots; throws
/// "symmetry violation" when some root cannot be paired within tolerance.
SymmetryClassification classify_symmetry(const RootSet& rs);

/// 1-d k-means with k = n on root moduli; purely descriptive.
RingReport ring_report(const RootSet& rs, int n);

/// max |p(root_i)| over the set, evaluated at the set's precision.
Real max_residual(const RationalPoly& p, const RootSet& rs);

}  // namespace vortexforge
