#include "vortexforge/vortex.hpp"

#include <Eigen/SVD>
#include <complex>
#include <stdexcept>

#include "vortexforge/certify.hpp"

namespace vortexforge {

namespace {

using CD = std::complex<double>;

void validate(const VortexConfig& cfg) {
  if (cfg.mu != 0.0 && cfg.p.size() != cfg.q.size())
    throw std::invalid_argument("count balance violated: mu != 0 requires |p| = |q|");
  std::vector<Complex> all = cfg.p;
  all.insert(all.end(), cfg.q.begin(), cfg.q.end());
  for (std::size_t i = 0; i < all.size(); i++)
    for (std::size_t j = i + 1; j < all.size(); j++)
      if ((all[i] - all[j]).norm2() == 0) throw std::invalid_argument("singular configuration");
}

CD to_cd(const Complex& z) {
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

}  // namespace

VortexConfig symmetric_config(int n, const Rational& mu, unsigned precision_bits) {
  auto fam = symmetric_family(n, mu);
  RootSet rs = find_roots(fam.A, precision_bits);
  auto cls = classify_symmetry(rs);
  VortexConfig cfg;
  cfg.mu = static_cast<double>(to_real(Rational(1) / mu));  // reflection pairing solves at 1/mu
  cfg.num_pairs = static_cast<int>(cls.conjugate_pairs.size());
  cfg.num_real = static_cast<int>(cls.real_indices.size());
  PrecisionGuard guard(bits_to_digits10(precision_bits));
  for (auto [i, j] : cls.conjugate_pairs) {
    // +Im first
    if (rs.roots[i].im >= 0) {
      cfg.p.push_back(rs.roots[i]);
      cfg.p.push_back(rs.roots[j]);
    } else {
      cfg.p.push_back(rs.roots[j]);
      cfg.p.push_back(rs.roots[i]);
    }
  }
  for (int i : cls.real_indices) {
    Complex r = rs.roots[i];
    r.im = 0;  // exactly real by conjugation symmetry
    cfg.p.push_back(r);
  }
  for (const auto& z : cfg.p) cfg.q.push_back(Complex(-z.re, z.im));  // -conj(z)
  return cfg;
}

std::pair<std::vector<Complex>, std::vector<Complex>> force_residual(const VortexConfig& cfg,
                                                                     unsigned precision_bits) {
  validate(cfg);
  PrecisionGuard guard(bits_to_digits10(precision_bits));
  const unsigned digits = bits_to_digits10(precision_bits);
  Real mu(cfg.mu);
  std::vector<Complex> p(cfg.p.size()), q(cfg.q.size());
  for (std::size_t i = 0; i < p.size(); i++) p[i] = reprec(cfg.p[i], digits);
  for (std::size_t i = 0; i < q.size(); i++) q[i] = reprec(cfg.q[i], digits);
  std::vector<Complex> fres(p.size()), gres(q.size());
  for (std::size_t k = 0; k < p.size(); k++) {
    Complex f;
    for (std::size_t j = 0; j < p.size(); j++)
      if (j != k) f += Complex(Real(1)) / (p[k] - p[j]);
    for (std::size_t j = 0; j < q.size(); j++) f -= Complex(Real(1)) / (p[k] - q[j]);
    fres[k] = f - Complex(mu);
  }
  for (std::size_t k = 0; k < q.size(); k++) {
    Complex g;
    for (std::size_t j = 0; j < q.size(); j++)
      if (j != k) g += Complex(Real(1)) / (q[k] - q[j]);
    for (std::size_t j = 0; j < p.size(); j++) g -= Complex(Real(1)) / (q[k] - p[j]);
    gres[k] = g + Complex(mu);
  }
  return {fres, gres};
}

double max_force_residual(const VortexConfig& cfg, unsigned precision_bits) {
  auto [f, g] = force_residual(cfg, precision_bits);
  PrecisionGuard guard(bits_to_digits10(precision_bits));
  Real worst = 0;
  for (const auto& z : f) worst = std::max(worst, z.abs());
  for (const auto& z : g) worst = std::max(worst, z.abs());
  return static_cast<double>(worst);
}

ForceJacobian jacobian(const VortexConfig& cfg) {
  validate(cfg);
  const int m = static_cast<int>(cfg.p.size());
  const int mm = static_cast<int>(cfg.q.size());
  const int vars = m + mm;
  std::vector<CD> pts(vars);
  for (int i = 0; i < m; i++) pts[i] = to_cd(cfg.p[i]);
  for (int i = 0; i < mm; i++) pts[m + i] = to_cd(cfg.q[i]);

  // complex Jacobian, rows (F_1..F_m, G_1..G_mm)
  Eigen::MatrixXcd jc = Eigen::MatrixXcd::Zero(vars, vars);
  auto inv2 = [](CD d) { return 1.0 / (d * d); };
  for (int k = 0; k < m; k++) {
    CD own = 0;
    for (int j = 0; j < m; j++) {
      if (j == k) continue;
      CD w = inv2(pts[k] - pts[j]);
      jc(k, j) = w;
      own -= w;
    }
    for (int j = 0; j < mm; j++) {
      CD w = inv2(pts[k] - pts[m + j]);
      jc(k, m + j) = -w;
      own += w;
    }
    jc(k, k) = own;
  }
  for (int k = 0; k < mm; k++) {
    CD own = 0;
    for (int j = 0; j < mm; j++) {
      if (j == k) continue;
      CD w = inv2(pts[m + k] - pts[m + j]);
      jc(m + k, m + j) = w;
      own -= w;
    }
    for (int j = 0; j < m; j++) {
      CD w = inv2(pts[m + k] - pts[j]);
      jc(m + k, j) = -w;
      own += w;
    }
    jc(m + k, m + k) = own;
  }

  ForceJacobian out;
  out.matrix.resize(2 * vars, 2 * vars);
  for (int r = 0; r < vars; r++)
    for (int c = 0; c < vars; c++) {
      double a = jc(r, c).real(), b = jc(r, c).imag();
      out.matrix(2 * r, 2 * c) = a;
      out.matrix(2 * r, 2 * c + 1) = -b;
      out.matrix(2 * r + 1, 2 * c) = b;
      out.matrix(2 * r + 1, 2 * c + 1) = a;
    }

  // symmetric subspace: eta = xi* with xi conjugate-paired / real-sliced.
  // dimension = 2 * num_pairs + num_real
  const int dim = 2 * cfg.num_pairs + cfg.num_real;
  if (dim > 0 && m == mm && 2 * cfg.num_pairs + cfg.num_real == m) {
    out.symmetric_basis = Eigen::MatrixXd::Zero(2 * vars, dim);
    auto set_xi = [&](Eigen::MatrixXd& basis, int col, int k, CD xi) {
      basis(2 * k, col) = xi.real();
      basis(2 * k + 1, col) = xi.imag();
      // eta_k = xi_k^* = -conj(xi_k)
      basis(2 * (m + k), col) = -xi.real();
      basis(2 * (m + k) + 1, col) = xi.imag();
    };
    int col = 0;
    for (int i = 0; i < cfg.num_pairs; i++) {
      set_xi(out.symmetric_basis, col, 2 * i, CD(1, 0));
      set_xi(out.symmetric_basis, col, 2 * i + 1, CD(1, 0));
      col++;
      set_xi(out.symmetric_basis, col, 2 * i, CD(0, 1));
      set_xi(out.symmetric_basis, col, 2 * i + 1, CD(0, -1));
      col++;
    }
    for (int r = 0; r < cfg.num_real; r++) {
      set_xi(out.symmetric_basis, col, 2 * cfg.num_pairs + r, CD(1, 0));
      col++;
    }
    for (int c = 0; c < dim; c++) out.symmetric_basis.col(c).normalize();
  }
  return out;
}

std::vector<Eigen::VectorXd> kernel_basis(int n, const VortexConfig& cfg) {
  const int m = static_cast<int>(cfg.p.size());
  const int vars = 2 * m;
  ThetaParams params = symmetric_params(n, Rational(1));
  auto fam = symmetric_family(n, Rational(1));
  RationalPoly a_t = fam.A;
  RationalPoly a_deriv = a_t.derivative();
  RationalPoly q_gen = modified_adler_moser(n, params).shift(params.t);
  RationalPoly q_deriv = q_gen.derivative();

  std::vector<std::vector<CD>> complex_kernels;
  // translation: every position moves equally
  complex_kernels.push_back(std::vector<CD>(vars, CD(1, 0)));

  const unsigned bits = 192;
  for (int j = 2; j <= n; j++) {
    RationalPoly dp_poly = adler_moser_partial_k(n, j, params).shift(params.t);
    RationalPoly dq_poly = modified_adler_moser_partial_k(n, j, params).shift(params.t);
    std::vector<CD> v(vars);
    for (int i = 0; i < m; i++) {
      Complex root = cfg.p[i];
      Complex da = eval_complex(a_deriv, root, bits);
      Complex dk = eval_complex(dp_poly, root, bits);
      if (static_cast<double>(da.abs()) < 1e-12) throw std::runtime_error("repeated root suspected");
      Complex delta = -(dk / da);
      v[i] = to_cd(delta);
    }
    for (int i = 0; i < m; i++) {
      Complex root = cfg.q[i];
      Complex dg = eval_complex(q_deriv, root, bits);
      Complex dk = eval_complex(dq_poly, root, bits);
      if (static_cast<double>(dg.abs()) < 1e-12) throw std::runtime_error("repeated root suspected");
      Complex delta = -(dk / dg);
      v[m + i] = to_cd(delta);
    }
    complex_kernels.push_back(std::move(v));
  }

  // realify: v and iv per complex direction
  std::vector<Eigen::VectorXd> out;
  for (const auto& v : complex_kernels) {
    Eigen::VectorXd re(2 * vars), im(2 * vars);
    for (int i = 0; i < vars; i++) {
      re(2 * i) = v[i].real();
      re(2 * i + 1) = v[i].imag();
      CD iv = CD(0, 1) * v[i];
      im(2 * i) = iv.real();
      im(2 * i + 1) = iv.imag();
    }
    out.push_back(re.normalized());
    out.push_back(im.normalized());
  }
  return out;
}

NondegeneracyCertificate nondegeneracy_certificate(int n, double rank_tol, double nondeg_tol,
                                                   double angle_tol) {
  NondegeneracyCertificate cert;
  cert.n = n;
  if (n >= 2 && !certify_assumption_A(n, CertifyMode::kExact).pass())
    throw std::runtime_error("assumption (A) certification failed");

  VortexConfig cfg = symmetric_config(n, Rational(1));
  ForceJacobian fj = jacobian(cfg);
  const auto& J = fj.matrix;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
  const auto& sig = svd.singularValues();
  cert.sigma_max_full = sig(0);
  int null_dim = 0;
  for (int i = 0; i < sig.size(); i++)
    if (sig(i) < rank_tol * cert.sigma_max_full) null_dim++;
  cert.null_dim = null_dim;

  // constructed kernels: residual and principal angles against the SVD null space
  auto kernels = kernel_basis(n, cfg);
  Eigen::MatrixXd K(J.rows(), static_cast<int>(kernels.size()));
  for (int c = 0; c < K.cols(); c++) K.col(c) = kernels[c];
  for (int c = 0; c < K.cols(); c++) {
    double resid = (J * K.col(c)).norm() / cert.sigma_max_full;
    cert.max_kernel_residual = std::max(cert.max_kernel_residual, resid);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
  Eigen::MatrixXd Qk =
      qr.householderQ() * Eigen::MatrixXd::Identity(K.rows(), K.cols());
  Eigen::MatrixXd Vnull = svd.matrixV().rightCols(std::max(null_dim, 1));
  Eigen::JacobiSVD<Eigen::MatrixXd> overlap(Qk.transpose() * Vnull);
  for (int i = 0; i < overlap.singularValues().size(); i++) {
    double c = std::clamp(overlap.singularValues()(i), 0.0, 1.0);
    cert.kernel_angles.push_back(std::acos(c));
  }

  // symmetric restriction
  Eigen::MatrixXd R = fj.symmetric_basis.transpose() * J * fj.symmetric_basis;
  Eigen::JacobiSVD<Eigen::MatrixXd> rsvd(R);
  cert.sigma_max = rsvd.singularValues()(0);
  cert.sigma_min = rsvd.singularValues()(rsvd.singularValues().size() - 1);

  double max_angle = 0;
  for (double a : cert.kernel_angles) max_angle = std::max(max_angle, a);
  cert.pass = cert.sigma_min > nondeg_tol * cert.sigma_max && cert.null_dim == 2 * n &&
              static_cast<int>(kernels.size()) == 2 * n && max_angle <= angle_tol &&
              cert.max_kernel_residual <= 1e-6;
  return cert;
}

}  // namespace vortexforge
