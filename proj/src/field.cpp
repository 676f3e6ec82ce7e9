#include "vortexforge/field.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vortexforge/util.hpp"

namespace vortexforge {

namespace {

using CD = std::complex<double>;

struct Centers {
  std::vector<CD> pos;  // positive vortices at p_k / eps
  std::vector<CD> neg;
};

Centers centers_of(const FieldSampler& fs) {
  Centers c;
  for (const auto& z : fs.config.p)
    c.pos.emplace_back(static_cast<double>(z.re) / fs.epsilon,
                       static_cast<double>(z.im) / fs.epsilon);
  for (const auto& z : fs.config.q)
    c.neg.emplace_back(static_cast<double>(z.re) / fs.epsilon,
                       static_cast<double>(z.im) / fs.epsilon);
  return c;
}

double min_separation(const Centers& c) {
  std::vector<CD> all = c.pos;
  all.insert(all.end(), c.neg.begin(), c.neg.end());
  double best = 1e300;
  for (std::size_t i = 0; i < all.size(); i++)
    for (std::size_t j = i + 1; j < all.size(); j++)
      best = std::min(best, std::abs(all[i] - all[j]));
  return best;
}

CD one_factor(const ProfileTable& pt, CD dz, bool positive) {
  double r = std::abs(dz);
  if (r == 0) return {0, 0};
  double s = profile_interp(pt, r);
  CD phase = dz / r;
  return positive ? s * phase : s * std::conj(phase);
}

}  // namespace

FieldSampler make_sampler(const VortexConfig& cfg, double epsilon, const ProfileTable& profile,
                          int resolution, double half_width_factor) {
  FieldSampler fs;
  fs.config = cfg;
  fs.epsilon = epsilon;
  fs.profile = &profile;
  double maxp = 0;
  for (const auto& z : cfg.p)
    maxp = std::max(maxp, std::hypot(static_cast<double>(z.re), static_cast<double>(z.im)));
  double half = half_width_factor * maxp / epsilon;
  fs.xmin = -half;
  fs.xmax = half;
  fs.ymin = -half;
  fs.ymax = half;
  if (resolution % 2 == 0) resolution++;  // odd counts keep the grid symmetric
  fs.nx = fs.ny = resolution;
  return fs;
}

CD field_value(const FieldSampler& fs, double x, double y) {
  Centers c = centers_of(fs);
  CD z(x, y), u(1, 0);
  for (const auto& p : c.pos) u *= one_factor(*fs.profile, z - p, true);
  for (const auto& q : c.neg) u *= one_factor(*fs.profile, z - q, false);
  return u;
}

std::vector<std::vector<CD>> sample_field(const FieldSampler& fs, unsigned jobs) {
  Centers c = centers_of(fs);
  std::vector<std::vector<CD>> u(fs.ny, std::vector<CD>(fs.nx));
  parallel_for(fs.ny, jobs, [&](std::size_t j) {
    double y = fs.y_at(static_cast<int>(j));
    for (int i = 0; i < fs.nx; i++) {
      CD z(fs.x_at(i), y), v(1, 0);
      for (const auto& p : c.pos) v *= one_factor(*fs.profile, z - p, true);
      for (const auto& q : c.neg) v *= one_factor(*fs.profile, z - q, false);
      u[j][i] = v;
    }
  });
  return u;
}

FieldSymmetryReport check_field_symmetry(const FieldSampler& fs, double tolerance) {
  FieldSymmetryReport rep;
  rep.tolerance = tolerance;
  auto u = sample_field(fs);
  const int nx = fs.nx, ny = fs.ny;
  for (int j = 0; j < ny; j++) {
    for (int i = 0; i < nx; i++) {
      // grid is symmetric: (i, j) -> x reflection (nx-1-i, j), y reflection (i, ny-1-j)
      CD conj_dev = u[ny - 1 - j][i] - std::conj(u[j][i]);
      CD star_dev = u[j][nx - 1 - i] - u[j][i];
      rep.conj_deviation = std::max(rep.conj_deviation, std::abs(conj_dev));
      rep.star_deviation = std::max(rep.star_deviation, std::abs(star_dev));
    }
  }
  rep.pass = rep.conj_deviation <= tolerance && rep.star_deviation <= tolerance;
  return rep;
}

namespace {

int winding_of_loop(const std::vector<CD>& samples) {
  double total = 0;
  for (std::size_t i = 0; i < samples.size(); i++) {
    CD a = samples[i];
    CD b = samples[(i + 1) % samples.size()];
    if (std::abs(a) == 0 || std::abs(b) == 0) return 0;  // loop hits a zero
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2 * M_PI)));
}

}  // namespace

WindingReport winding_report(const FieldSampler& fs) {
  WindingReport rep;
  Centers c = centers_of(fs);
  // boundary loop along the outermost grid ring
  std::vector<CD> loop;
  for (int i = 0; i < fs.nx; i++) loop.push_back(field_value(fs, fs.x_at(i), fs.ymin));
  for (int j = 1; j < fs.ny; j++) loop.push_back(field_value(fs, fs.xmax, fs.y_at(j)));
  for (int i = fs.nx - 2; i >= 0; i--) loop.push_back(field_value(fs, fs.x_at(i), fs.ymax));
  for (int j = fs.ny - 2; j >= 1; j--) loop.push_back(field_value(fs, fs.xmin, fs.y_at(j)));
  rep.boundary = winding_of_loop(loop);

  double radius = 0.5 * min_separation(c);
  const int npts = 256;
  auto circle_winding = [&](CD center) {
    std::vector<CD> ring(npts);
    for (int k = 0; k < npts; k++) {
      double t = 2 * M_PI * k / npts;
      ring[k] = field_value(fs, center.real() + radius * std::cos(t),
                            center.imag() + radius * std::sin(t));
    }
    return winding_of_loop(ring);
  };
  for (const auto& p : c.pos) rep.per_positive.push_back(circle_winding(p));
  for (const auto& q : c.neg) rep.per_negative.push_back(circle_winding(q));
  return rep;
}

namespace {

struct SlopePair {
  double slope_abs, slope_im, max_abs;
};

// E(u) on the decimated grid (stride), far-field slopes by annulus maxima.
SlopePair error_slopes(const FieldSampler& fs, const std::vector<std::vector<CD>>& u,
                       int stride, double r_far, double r_max) {
  const double hx = (fs.xmax - fs.xmin) / (fs.nx - 1) * stride;
  const double hy = (fs.ymax - fs.ymin) / (fs.ny - 1) * stride;
  const int nbin = 24;
  std::vector<double> bin_abs(nbin, 0), bin_im(nbin, 0);
  std::vector<double> bin_r(nbin, 0);
  double max_abs = 0;
  for (int b = 0; b < nbin; b++)
    bin_r[b] = r_far * std::pow(r_max / r_far, (b + 0.5) / nbin);
  for (int j = stride; j + stride < fs.ny; j += stride) {
    for (int i = stride; i + stride < fs.nx; i += stride) {
      double x = fs.x_at(i), y = fs.y_at(j);
      double r = std::hypot(x, y);
      if (r < r_far || r > r_max) continue;
      const CD uc = u[j][i];
      CD lap = (u[j][i + stride] + u[j][i - stride] - 2.0 * uc) / (hx * hx) +
               (u[j + stride][i] + u[j - stride][i] - 2.0 * uc) / (hy * hy);
      CD duy = (u[j + stride][i] - u[j - stride][i]) / (2 * hy);
      CD e = fs.epsilon * CD(0, 1) * duy + lap + uc * (1.0 - std::norm(uc));
      int b = static_cast<int>(nbin * std::log(r / r_far) / std::log(r_max / r_far));
      b = std::clamp(b, 0, nbin - 1);
      bin_abs[b] = std::max(bin_abs[b], std::abs(e));
      bin_im[b] = std::max(bin_im[b], std::abs(e.imag()));
      max_abs = std::max(max_abs, std::abs(e));
    }
  }
  auto fit = [&](const std::vector<double>& vals) {
    std::vector<double> lx, ly;
    for (int b = 0; b < nbin; b++)
      if (vals[b] > 0) {
        lx.push_back(std::log(bin_r[b]));
        ly.push_back(std::log(vals[b]));
      }
    if (lx.size() < 5) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < lx.size(); k++) {
      sx += lx[k];
      sy += ly[k];
      sxx += lx[k] * lx[k];
      sxy += lx[k] * ly[k];
    }
    double n = static_cast<double>(lx.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  return {fit(bin_abs), fit(bin_im), max_abs};
}

}  // namespace

ErrorFieldReport error_field(const FieldSampler& fs, unsigned jobs) {
  auto u = sample_field(fs, jobs);
  double maxp = 0;
  for (const auto& z : fs.config.p)
    maxp = std::max(maxp, std::hypot(static_cast<double>(z.re), static_cast<double>(z.im)));
  double r_far = 1.3 * maxp / fs.epsilon + 2.0;
  double r_max = 0.95 * fs.xmax;
  if (r_far >= r_max) throw std::invalid_argument("window too small for a far-field fit");
  SlopePair fine = error_slopes(fs, u, 1, r_far, r_max);
  SlopePair coarse = error_slopes(fs, u, 2, r_far, r_max);
  ErrorFieldReport rep;
  rep.slope_abs = fine.slope_abs;
  rep.slope_im = fine.slope_im;
  rep.max_abs = fine.max_abs;
  rep.slope_abs_coarse = coarse.slope_abs;
  rep.slope_im_coarse = coarse.slope_im;
  rep.stable = std::abs(fine.slope_abs - coarse.slope_abs) < 0.15 &&
               std::abs(fine.slope_im - coarse.slope_im) < 0.3;
  return rep;
}

namespace {

// double-precision residual of the perturbed system in realified layout
Eigen::VectorXd reduced_residual(const std::vector<CD>& p, const std::vector<CD>& q, double mu,
                                 const std::vector<CD>& delta) {
  const int m = static_cast<int>(p.size());
  Eigen::VectorXd r(4 * m);
  for (int k = 0; k < m; k++) {
    CD f = 0;
    for (int j = 0; j < m; j++)
      if (j != k) f += 1.0 / (p[k] - p[j]);
    for (int j = 0; j < m; j++) f -= 1.0 / (p[k] - q[j]);
    f -= mu + delta[k];
    r(2 * k) = f.real();
    r(2 * k + 1) = f.imag();
  }
  for (int k = 0; k < m; k++) {
    CD g = 0;
    for (int j = 0; j < m; j++)
      if (j != k) g += 1.0 / (q[k] - q[j]);
    for (int j = 0; j < m; j++) g -= 1.0 / (q[k] - p[j]);
    g += mu + std::conj(delta[k]);  // mirrored target: delta' = -conj(delta)
    r(2 * (m + k)) = g.real();
    r(2 * (m + k) + 1) = g.imag();
  }
  return r;
}

}  // namespace

ReducedSolveResult solve_reduced(int n, double mu, const std::vector<CD>& delta, double tol) {
  if (mu <= 0) throw std::invalid_argument("solve_reduced requires mu > 0");
  VortexConfig seed = symmetric_config(n, Rational(1));
  const int m = static_cast<int>(seed.p.size());
  if (static_cast<int>(delta.size()) != m)
    throw std::invalid_argument("delta must have one entry per positive vortex");

  std::vector<CD> p(m), q(m), p0(m), q0(m);
  for (int i = 0; i < m; i++) {
    p[i] = p0[i] = {static_cast<double>(seed.p[i].re), static_cast<double>(seed.p[i].im)};
    q[i] = q0[i] = {static_cast<double>(seed.q[i].re), static_cast<double>(seed.q[i].im)};
  }

  ReducedSolveResult out;
  out.newton_iters = 0;
  for (int iter = 0; iter <= 50; iter++) {
    Eigen::VectorXd r = reduced_residual(p, q, mu, delta);
    // assemble the current configuration for the analytic Jacobian
    VortexConfig cur = seed;
    for (int i = 0; i < m; i++) {
      cur.p[i] = Complex(p[i].real(), p[i].imag());
      cur.q[i] = Complex(q[i].real(), q[i].imag());
    }
    ForceJacobian fj = jacobian(cur);
    const Eigen::MatrixXd& B = fj.symmetric_basis;
    Eigen::VectorXd rs = B.transpose() * r;
    if (rs.lpNorm<Eigen::Infinity>() < tol) {
      out.residual_norm = r.lpNorm<Eigen::Infinity>();
      break;
    }
    if (iter == 50) throw std::runtime_error("reduced Newton solve diverged");
    Eigen::MatrixXd Jr = B.transpose() * fj.matrix * B;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Jr, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sig = svd.singularValues();
    if (sig(sig.size() - 1) < 1e-12 * sig(0))
      throw std::runtime_error("singular reduced Jacobian (contradicts nondegeneracy)");
    Eigen::VectorXd step = B * svd.solve(rs);
    for (int i = 0; i < m; i++) {
      p[i] -= CD(step(2 * i), step(2 * i + 1));
      q[i] -= CD(step(2 * (m + i)), step(2 * (m + i) + 1));
    }
    out.newton_iters = iter + 1;
  }

  double disp2 = 0;
  for (int i = 0; i < m; i++) {
    disp2 += std::norm(p[i] - p0[i]);
    disp2 += std::norm(q[i] - q0[i]);
  }
  out.displacement_from_seed = std::sqrt(disp2);
  out.config = seed;
  for (int i = 0; i < m; i++) {
    out.config.p[i] = Complex(p[i].real(), p[i].imag());
    out.config.q[i] = Complex(q[i].real(), q[i].imag());
  }
  out.config.mu = mu;
  return out;
}

}  // namespace vortexforge
