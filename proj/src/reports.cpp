#include "vortexforge/reports.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <fstream>
#include <sstream>

namespace vortexforge {

namespace {

std::string real_str(const Real& x, unsigned digits) {
  return x.str(digits, std::ios_base::scientific);
}

std::string dbl(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

Json poly_to_json(const RationalPoly& p) {
  Json arr = Json::array();
  for (int i = 0; i <= p.degree(); i++) arr.push_back(rational_to_string(p[i]));
  return arr;
}

RationalPoly poly_from_json(const Json& j) {
  std::vector<Rational> c;
  for (const auto& s : j) c.push_back(rational_from_string(s.get<std::string>()));
  return RationalPoly(std::move(c));
}

Json rootset_to_json(const RootSet& rs, unsigned digits) {
  Json j;
  j["degree"] = rs.source_degree;
  j["precision_bits"] = rs.precision_bits;
  Json roots = Json::array();
  for (std::size_t i = 0; i < rs.roots.size(); i++) {
    Json r;
    r["re"] = real_str(rs.roots[i].re, digits);
    r["im"] = real_str(rs.roots[i].im, digits);
    r["error_radius"] = real_str(rs.error_radii[i], 3);
    roots.push_back(r);
  }
  j["roots"] = roots;
  return j;
}

std::string rootset_to_csv(const RootSet& rs, unsigned digits) {
  std::ostringstream out;
  out << "re,im,error_radius\n";
  for (std::size_t i = 0; i < rs.roots.size(); i++)
    out << real_str(rs.roots[i].re, digits) << "," << real_str(rs.roots[i].im, digits) << ","
        << real_str(rs.error_radii[i], 3) << "\n";
  return out.str();
}

std::string rootset_to_svg(const RootSet& rs) {
  // real axis horizontal, imaginary axis up
  double lim = 1e-3;
  for (const auto& z : rs.roots)
    lim = std::max({lim, std::abs(static_cast<double>(z.re)),
                    std::abs(static_cast<double>(z.im))});
  lim *= 1.15;
  const int size = 480;
  const double scale = size / (2 * lim);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  out << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
  out << "<line x1=\"0\" y1=\"" << size / 2 << "\" x2=\"" << size << "\" y2=\"" << size / 2
      << "\" stroke=\"#bbb\"/>\n";
  out << "<line x1=\"" << size / 2 << "\" y1=\"0\" x2=\"" << size / 2 << "\" y2=\"" << size
      << "\" stroke=\"#bbb\"/>\n";
  for (const auto& z : rs.roots) {
    double cx = size / 2.0 + static_cast<double>(z.re) * scale;
    double cy = size / 2.0 - static_cast<double>(z.im) * scale;
    out << "<circle cx=\"" << dbl(cx) << "\" cy=\"" << dbl(cy)
        << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string profile_to_csv(const ProfileTable& pt) {
  std::ostringstream out;
  out << "r,S,Sprime\n";
  for (std::size_t i = 0; i < pt.r.size(); i++)
    out << dbl(pt.r[i]) << "," << dbl(pt.S[i]) << "," << dbl(pt.Sp[i]) << "\n";
  return out.str();
}

Json certify_to_json(const CertifyReport& rep, bool with_timing) {
  Json j;
  j["n"] = rep.n;
  j["degree"] = rep.degree;
  j["construction"] = rep.construction;
  Json verdicts;
  auto vj = [](const CheckVerdict& v) {
    Json o;
    o["pass"] = v.pass;
    o["method"] = v.method;
    o["nonzero_residues"] = v.nonzero_residues;
    return o;
  };
  verdicts["assumption_A"] = vj(rep.assumption_A);
  verdicts["simple_roots"] = vj(rep.simple_roots);
  verdicts["no_shared_with_B"] = vj(rep.no_shared_with_B);
  j["verdicts"] = verdicts;
  Json primes = Json::array();
  for (auto p : rep.primes) primes.push_back(p);
  j["primes"] = primes;
  j["wall_ms"] = with_timing ? Json(rep.wall_ms) : Json(nullptr);
  return j;
}

Json nondeg_to_json(const NondegeneracyCertificate& cert) {
  Json j;
  j["n"] = cert.n;
  j["sigma_min"] = cert.sigma_min;
  j["sigma_max"] = cert.sigma_max;
  j["null_dim"] = cert.null_dim;
  Json angles = Json::array();
  for (double a : cert.kernel_angles) angles.push_back(a);
  j["kernel_angles"] = angles;
  j["pass"] = cert.pass;
  return j;
}

Json ring_to_json(const RingReport& rep) {
  Json j;
  j["k"] = rep.k;
  j["centers"] = rep.centers;
  j["counts"] = rep.counts;
  j["spreads"] = rep.spreads;
  j["max_relative_spread"] = rep.max_relative_spread;
  return j;
}

Json mode_to_json(const ModeSolution& sol) {
  Json j;
  j["n"] = sol.n;
  const char* names[] = {"bounded", "log", "power", "exponential"};
  j["growth_class"] = names[static_cast<int>(sol.growth_class)];
  j["log_fit_residual"] = sol.log_fit_residual;
  j["log_c1"] = sol.log_c1;
  j["log_c2"] = sol.log_c2;
  j["far_slope"] = sol.far_slope;
  j["exp_rate"] = sol.exp_rate;
  j["near_zero_exp_a"] = sol.near_zero_exp_a;
  j["near_zero_exp_b"] = sol.near_zero_exp_b;
  return j;
}

Json symmetry_report_to_json(const FieldSymmetryReport& rep) {
  Json j;
  j["conj_deviation"] = rep.conj_deviation;
  j["star_deviation"] = rep.star_deviation;
  j["tolerance"] = rep.tolerance;
  j["pass"] = rep.pass;
  return j;
}

Json winding_to_json(const WindingReport& rep) {
  Json j;
  j["boundary"] = rep.boundary;
  j["per_positive"] = rep.per_positive;
  j["per_negative"] = rep.per_negative;
  return j;
}

Json error_field_to_json(const ErrorFieldReport& rep) {
  Json j;
  j["slope_abs"] = rep.slope_abs;
  j["slope_im"] = rep.slope_im;
  j["max_abs"] = rep.max_abs;
  j["stable"] = rep.stable;
  j["slope_abs_coarse"] = rep.slope_abs_coarse;
  j["slope_im_coarse"] = rep.slope_im_coarse;
  return j;
}

Json reduced_to_json(const ReducedSolveResult& res) {
  Json j;
  j["residual_norm"] = res.residual_norm;
  j["newton_iters"] = res.newton_iters;
  j["displacement_from_seed"] = res.displacement_from_seed;
  Json p = Json::array(), q = Json::array();
  for (const auto& z : res.config.p)
    p.push_back({{"re", static_cast<double>(z.re)}, {"im", static_cast<double>(z.im)}});
  for (const auto& z : res.config.q)
    q.push_back({{"re", static_cast<double>(z.re)}, {"im", static_cast<double>(z.im)}});
  j["p"] = p;
  j["q"] = q;
  return j;
}

std::string field_to_csv(const FieldSampler& fs,
                         const std::vector<std::vector<std::complex<double>>>& u) {
  std::ostringstream out;
  out << "x,y,re,im,abs\n";
  for (int j = 0; j < fs.ny; j++)
    for (int i = 0; i < fs.nx; i++)
      out << dbl(fs.x_at(i)) << "," << dbl(fs.y_at(j)) << "," << dbl(u[j][i].real()) << ","
          << dbl(u[j][i].imag()) << "," << dbl(std::abs(u[j][i])) << "\n";
  return out.str();
}

namespace {

// downsampled pixel map shared by the two SVG exports
std::string pixel_svg(const FieldSampler& fs,
                      const std::vector<std::vector<std::complex<double>>>& u,
                      const std::function<std::string(std::complex<double>)>& color) {
  const int target = 128;
  int stride = std::max(1, fs.nx / target);
  int px = 4;
  int w = (fs.nx + stride - 1) / stride, hcount = (fs.ny + stride - 1) / stride;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * px << "\" height=\""
      << hcount * px << "\">\n";
  for (int j = 0, row = 0; j < fs.ny; j += stride, row++)
    for (int i = 0, col = 0; i < fs.nx; i += stride, col++)
      out << "<rect x=\"" << col * px << "\" y=\"" << (hcount - 1 - row) * px << "\" width=\""
          << px << "\" height=\"" << px << "\" fill=\"" << color(u[j][i]) << "\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string field_magnitude_svg(const FieldSampler& fs,
                                const std::vector<std::vector<std::complex<double>>>& u) {
  return pixel_svg(fs, u, [](std::complex<double> v) {
    int g = std::clamp(static_cast<int>(std::abs(v) * 255), 0, 255);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", g, g, g);
    return std::string(buf);
  });
}

std::string field_phase_svg(const FieldSampler& fs,
                            const std::vector<std::vector<std::complex<double>>>& u) {
  return pixel_svg(fs, u, [](std::complex<double> v) {
    double hue = (std::arg(v) + M_PI) / (2 * M_PI);  // 0..1
    double sat = std::clamp(std::abs(v), 0.0, 1.0);
    // HSV -> RGB, value 1
    double h6 = hue * 6;
    int sector = static_cast<int>(h6) % 6;
    double f = h6 - std::floor(h6);
    double p = 1 - sat, qv = 1 - sat * f, t = 1 - sat * (1 - f);
    double r = 1, g = 1, b = 1;
    switch (sector) {
      case 0: r = 1, g = t, b = p; break;
      case 1: r = qv, g = 1, b = p; break;
      case 2: r = p, g = 1, b = t; break;
      case 3: r = p, g = qv, b = 1; break;
      case 4: r = t, g = p, b = 1; break;
      default: r = 1, g = p, b = qv; break;
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(r * 255),
                  static_cast<int>(g * 255), static_cast<int>(b * 255));
    return std::string(buf);
  });
}

}  // namespace vortexforge
