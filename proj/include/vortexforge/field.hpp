#pragma once

#include <complex>
#include <vector>

#include "vortexforge/glprofile.hpp"
#include "vortexforge/vortex.hpp"

namespace vortexforge {

/// Samples the product ansatz u = prod_k v_+(z - p_k/eps) v_-(z - q_k/eps)
/// on a rectangular window in the frame where vortices sit at p_k/eps.
struct FieldSampler {
  VortexConfig config;        // positions in the unscaled p-plane
  double epsilon = 0.05;      // traveling speed; vortex spacing ~ 1/epsilon
  const ProfileTable* profile = nullptr;  // cutoff profile preferred
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  int nx = 0, ny = 0;

  double x_at(int i) const { return xmin + (xmax - xmin) * i / (nx - 1); }
  double y_at(int j) const { return ymin + (ymax - ymin) * j / (ny - 1); }
};

/// Default window [-2 max|p|/eps, 2 max|p|/eps]^2 with odd sample counts so
/// the grid is symmetric under both reflections.
FieldSampler make_sampler(const VortexConfig& cfg, double epsilon, const ProfileTable& profile,
                          int resolution = 513, double half_width_factor = 2.0);

/// Row-major ny x nx samples, u[j][i] at (x_i, y_j).
std::vector<std::vector<std::complex<double>>> sample_field(const FieldSampler& fs,
                                                            unsigned jobs = 1);

/// Field value at one point.
std::complex<double> field_value(const FieldSampler& fs, double x, double y);

struct FieldSymmetryReport {
  double conj_deviation = 0;        // max |u(conj z) - conj(u(z))|
  double star_deviation = 0;        // max |u(-conj z) - u(z)|
  bool pass = false;                // both below tolerance
  double tolerance = 1e-12;
};

/// Checks u(conj z) = conj(u(z)) and u(z*) = u(z) on the symmetric grid.
FieldSymmetryReport check_field_symmetry(const FieldSampler& fs, double tolerance = 1e-12);

struct WindingReport {
  int boundary = 0;                  // along the window boundary
  std::vector<int> per_positive;     // small loop around each p_k/eps
  std::vector<int> per_negative;     // small loop around each q_k/eps
};

/// Phase winding numbers: boundary loop plus per-vortex circles of radius
/// half the minimal pairwise separation.
WindingReport winding_report(const FieldSampler& fs);

struct ErrorFieldReport {
  double slope_abs = 0;        // log-log slope of max |E| per annulus
  double slope_im = 0;         // same for |Im E|
  double max_abs = 0;          // max |E| over the far region
  bool stable = false;         // slopes stable under grid halving
  double slope_abs_coarse = 0;
  double slope_im_coarse = 0;
};

/// E(u) = eps i d_y u + Lap u + u (1 - |u|^2) by finite differences, with a
/// far-field log-log fit for |E| and |Im E| and a half-resolution stability
/// gate.
ErrorFieldReport error_field(const FieldSampler& fs, unsigned jobs = 1);

struct ReducedSolveResult {
  VortexConfig config;
  double residual_norm = 0;
  int newton_iters = 0;
  double displacement_from_seed = 0;
};

/// Newton solve of the perturbed equilibrium system
///   F_k = mu + delta_k,  G_k = -mu - conj(delta_k)
/// restricted to the symmetric subspace, seeded at the refined roots of
/// (A_n, B_n). delta must respect the symmetry layout of the seed (conjugate
/// pairs first, then real slots).
ReducedSolveResult solve_reduced(int n, double mu, const std::vector<std::complex<double>>& delta,
                                 double tol);

}  // namespace vortexforge
