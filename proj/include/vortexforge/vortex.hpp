#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "vortexforge/mp.hpp"
#include "vortexforge/roots.hpp"
#include "vortexforge/theta.hpp"

namespace vortexforge {

/// Point-vortex configuration: positive positions p, negative positions q,
/// and the translation parameter mu of the equilibrium system. Positions are
/// kept in arbitrary precision; linear algebra downstream happens in double.
struct VortexConfig {
  std::vector<Complex> p;
  std::vector<Complex> q;
  double mu = 1.0;

  // pairing layout: the first 2*num_pairs p-entries are conjugate pairs
  // (+Im first), the rest are real; q_k = -conj(p_k) componentwise.
  int num_pairs = 0;
  int num_real = 0;
};

/// Realified linearization of the force map at a configuration, together
/// with an orthonormal basis of the symmetric subspace. Row/column order is
/// (Re p_1, Im p_1, ..., Re q_1, Im q_1, ...).
struct ForceJacobian {
  Eigen::MatrixXd matrix;
  Eigen::MatrixXd symmetric_basis;
};

struct NondegeneracyCertificate {
  int n = 0;
  double sigma_min = 0;            // smallest singular value, symmetric restriction
  double sigma_max = 0;            // largest singular value, symmetric restriction
  double sigma_max_full = 0;       // largest singular value of the full map
  int null_dim = 0;                // near-null dimension of the full map
  std::vector<double> kernel_angles;  // principal angles vs constructed kernels
  double max_kernel_residual = 0;  // max ||DF v|| / (||v|| ||DF||)
  bool pass = false;
};

/// The equilibrium configuration of the symmetric family: p = roots of A_n
/// ordered pairs-first, q = -conj(p). Roots refined to precision_bits.
VortexConfig symmetric_config(int n, const Rational& mu, unsigned precision_bits = 256);

/// Residuals (F_k - mu, G_k + mu) of the system
///   F_k = sum_{j != k} 1/(p_k - p_j) - sum_j 1/(p_k - q_j),
///   G_k = sum_{j != k} 1/(q_k - q_j) - sum_j 1/(q_k - p_j).
/// Throws "singular configuration" on coincident points and enforces
/// |p| = |q| when mu != 0.
std::pair<std::vector<Complex>, std::vector<Complex>> force_residual(
    const VortexConfig& cfg, unsigned precision_bits = 256);

double max_force_residual(const VortexConfig& cfg, unsigned precision_bits = 256);

/// Analytic realified Jacobian of (F_1..F_m, G_1..G_m); entries are the
/// -1/(difference)^2 pattern realified into 2x2 blocks.
ForceJacobian jacobian(const VortexConfig& cfg);

/// The 2n real kernel directions: translation plus the k_j parameter
/// motions of the generating pair, realified (each complex direction
/// contributes v and iv). Throws "repeated root suspected" when a root
/// derivative is too small to divide by.
std::vector<Eigen::VectorXd> kernel_basis(int n, const VortexConfig& cfg);

/// Full nondegeneracy certificate at order n (mu = 1 family):
/// the symmetric restriction must be far from singular and the full
/// near-null space must be exactly the constructed 2n kernel directions.
NondegeneracyCertificate nondegeneracy_certificate(
    int n, double rank_tol = 1e-8, double nondeg_tol = 1e-6, double angle_tol = 1e-4);

}  // namespace vortexforge
