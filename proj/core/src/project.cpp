#include "braidfield/project.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "braidfield/error.hpp"
#include "braidfield/parallel.hpp"

namespace braidfield {

RealPoly3::RealPoly3(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == cplx{}; });
}

RealPoly3 RealPoly3::constant(cplx c) { return monomial({}, c); }

RealPoly3 RealPoly3::monomial(Exponent3 e, cplx c) { return RealPoly3(Terms{{e, c}}); }

cplx RealPoly3::coeff(Exponent3 e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? cplx{} : it->second;
}

int RealPoly3::degree() const noexcept {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
  return d;
}

double RealPoly3::scale() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s = std::max(s, std::abs(c));
  return s;
}

namespace {

std::vector<double> powers(double base, int n) {
  std::vector<double> p(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) p[k] = p[k - 1] * base;
  return p;
}

}  // namespace

cplx RealPoly3::operator()(const Point3& p) const {
  const int d = degree();
  const auto px = powers(p[0], d), py = powers(p[1], d), pz = powers(p[2], d);
  cplx acc{};
  for (const auto& [e, c] : terms_) acc += c * (px[e.x] * py[e.y] * pz[e.z]);
  return acc;
}

std::array<cplx, 3> RealPoly3::gradient(const Point3& p) const {
  const int d = degree();
  const auto px = powers(p[0], d), py = powers(p[1], d), pz = powers(p[2], d);
  std::array<cplx, 3> g{};
  for (const auto& [e, c] : terms_) {
    if (e.x > 0) g[0] += c * (e.x * px[e.x - 1] * py[e.y] * pz[e.z]);
    if (e.y > 0) g[1] += c * (e.y * px[e.x] * py[e.y - 1] * pz[e.z]);
    if (e.z > 0) g[2] += c * (e.z * px[e.x] * py[e.y] * pz[e.z - 1]);
  }
  return g;
}

RealPoly3 RealPoly3::pruned(double rel_tol) const {
  const double cut = rel_tol * scale();
  Terms out;
  for (const auto& [e, c] : terms_) {
    if (std::abs(c) >= cut) out.emplace(e, c);
  }
  return RealPoly3(std::move(out));
}

bool RealPoly3::is_gaussian_integer() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) {
    return std::nearbyint(kv.second.real()) == kv.second.real() && std::nearbyint(kv.second.imag()) == kv.second.imag();
  });
}

RealPoly3& RealPoly3::operator+=(const RealPoly3& o) {
  for (const auto& [e, c] : o.terms_) {
    const cplx sum = (terms_[e] += c);
    if (sum == cplx{}) terms_.erase(e);
  }
  return *this;
}

RealPoly3 operator*(const RealPoly3& a, const RealPoly3& b) {
  RealPoly3::Terms out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out[{ea.x + eb.x, ea.y + eb.y, ea.z + eb.z}] += ca * cb;
  }
  return RealPoly3(std::move(out));
}

RealPoly3 operator*(cplx c, RealPoly3 a) {
  if (c == cplx{}) return {};
  for (auto& [e, value] : a.terms_) value *= c;
  return a;
}

std::string to_string(const RealPoly3& p) {
  if (p.empty()) return "0";
  std::string out;
  char buf[96];
  // Highest degree first.
  std::vector<std::pair<Exponent3, cplx>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.first.degree() > b.first.degree(); });
  for (const auto& [e, c] : terms) {
    if (!out.empty()) out += " + ";
    if (c.imag() == 0.0) std::snprintf(buf, sizeof buf, "(%.17g)", c.real());
    else std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
    out += buf;
    const auto var = [&](char name, int k) {
      if (k == 0) return;
      out += name;
      if (k > 1) out += "^" + std::to_string(k);
    };
    var('x', e.x);
    var('y', e.y);
    var('z', e.z);
  }
  return out;
}

RealPoly3 stereographic_project(const SemiholoPoly& f) {
  const int d = degree(f);
  const RealPoly3 rho({{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, 1.0}});
  const RealPoly3 u_num = rho + RealPoly3({{{0, 0, 0}, -1.0}, {{0, 0, 1}, cplx(0.0, 2.0)}});
  const RealPoly3 v_num({{{1, 0, 0}, 2.0}, {{0, 1, 0}, cplx(0.0, 2.0)}});
  const RealPoly3 vbar_num({{{1, 0, 0}, 2.0}, {{0, 1, 0}, cplx(0.0, -2.0)}});
  const RealPoly3 denominator = rho + RealPoly3::constant(1.0);

  const auto power_table = [d](const RealPoly3& base) {
    std::vector<RealPoly3> table{RealPoly3::constant(1.0)};
    for (int k = 1; k <= d; ++k) table.push_back(table.back() * base);
    return table;
  };
  const auto up = power_table(u_num), vp = power_table(v_num), wp = power_table(vbar_num),
             dp = power_table(denominator);

  const std::vector<std::pair<Monomial, cplx>> terms(f.terms().begin(), f.terms().end());
  std::vector<RealPoly3> pieces(terms.size());
  parallel_for(terms.size(), [&](std::size_t i) {
    const auto& [m, c] = terms[i];
    pieces[i] = c * (up[m.u] * vp[m.v] * wp[m.vbar] * dp[d - m.degree()]);
  });

  // Cancellation noise is judged against the magnitudes that met in each
  // coefficient, so genuinely small coefficients survive.
  RealPoly3::Terms sum;
  std::map<Exponent3, double> weight;
  for (const RealPoly3& piece : pieces) {
    for (const auto& [e, c] : piece.terms()) {
      sum[e] += c;
      weight[e] += std::abs(c);
    }
  }
  std::erase_if(sum, [&](const auto& kv) { return std::abs(kv.second) < 1e-12 * weight[kv.first]; });
  return RealPoly3(std::move(sum));
}

NodalPoint stereographic_point(const Point3& p) {
  const double rho = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  const double den = rho + 1.0;
  return {cplx(rho - 1.0, 2.0 * p[2]) / den, cplx(2.0 * p[0], 2.0 * p[1]) / den};
}

Point3 inverse_stereographic(const NodalPoint& q) {
  const double w = 1.0 - q.u.real();
  return {q.v.real() / w, q.v.imag() / w, q.u.imag() / w};
}

std::vector<Point3> project_points(std::span<const NodalPoint> points, double max_radius) {
  std::vector<Point3> out;
  out.reserve(points.size());
  for (const NodalPoint& q : points) {
    const Point3 p = inverse_stereographic(q);
    const double r = std::hypot(p[0], p[1], p[2]);
    if (std::isfinite(r) && r <= max_radius) out.push_back(p);
  }
  return out;
}

RealPair split_real_imag(const RealPoly3& p) {
  RealPoly3::Terms re, im;
  for (const auto& [e, c] : p.terms()) {
    if (c.real() != 0.0) re.emplace(e, c.real());
    if (c.imag() != 0.0) im.emplace(e, c.imag());
  }
  return {RealPoly3(std::move(re)), RealPoly3(std::move(im))};
}

namespace {

/// Rows (Re grad, Im grad) of the 2x3 real Jacobian.
struct Jacobian {
  std::array<double, 3> a, b;

  double min_singular() const {
    const double aa = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    const double bb = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    const double ab = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    const double mean = 0.5 * (aa + bb);
    const double gap = std::hypot(0.5 * (aa - bb), ab);
    return std::sqrt(std::max(0.0, mean - gap));
  }
};

Jacobian jacobian(const RealPoly3& p, const Point3& x) {
  const auto g = p.gradient(x);
  return {{g[0].real(), g[1].real(), g[2].real()}, {g[0].imag(), g[1].imag(), g[2].imag()}};
}

}  // namespace

double projected_margin(const RealPoly3& p, std::span<const Point3> points) {
  double m = std::numeric_limits<double>::infinity();
  for (const Point3& x : points) m = std::min(m, jacobian(p, x).min_singular());
  return m;
}

double sample_spacing(std::span<const Point3> points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::min(best, std::hypot(points[i][0] - points[j][0], points[i][1] - points[j][1], points[i][2] - points[j][2]));
    }
  }
  return best;
}

Integerized integerize(const RealPoly3& p, std::span<const Point3> samples, const IntegerizeOptions& options) {
  if (samples.empty()) throw Error(ErrorKind::InvalidArgument, "integerize needs nodal samples");
  Integerized out;
  out.margin = projected_margin(p, samples);
  out.spacing = samples.size() < 2 ? 1.0 : sample_spacing(samples);
  out.threshold = options.margin_fraction * out.margin * out.spacing;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= options.max_power; ++k) {
    const double factor = std::pow(10.0, k);
    RealPoly3::Terms rounded;
    for (const auto& [e, c] : p.terms()) rounded.emplace(e, cplx(std::nearbyint(factor * c.real()), std::nearbyint(factor * c.imag())));
    RealPoly3 candidate(std::move(rounded));
    double perturbation = 0.0;
    for (const Point3& x : samples) perturbation = std::max(perturbation, std::abs(candidate(x) / factor - p(x)));
    best = std::min(best, perturbation);
    if (perturbation < out.threshold) {
      out.poly = std::move(candidate);
      out.power = k;
      out.perturbation = perturbation;
      return out;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "no power of ten up to 1e%d keeps the perturbation (best %.3e) below %.3e",
                options.max_power, best, out.threshold);
  throw Error(ErrorKind::IntegerizeFailure, buf);
}

Reverification reverify(const RealPoly3& perturbed, int power, std::span<const Point3> samples) {
  Reverification out;
  const RealPoly3 q = std::pow(10.0, -power) * perturbed;
  const double scale = std::max(q.scale(), std::numeric_limits<double>::min());
  out.spacing = sample_spacing(samples);

  bool converged = true;
  for (const Point3& start : samples) {
    Point3 x = start;
    double residual = std::abs(q(x)) / scale;
    for (int iter = 0; iter < 50 && residual > 1e-14; ++iter) {
      // Minimal-norm step: dx = -J^T (J J^T)^{-1} F.
      const Jacobian jac = jacobian(q, x);
      const cplx value = q(x);
      const double aa = jac.a[0] * jac.a[0] + jac.a[1] * jac.a[1] + jac.a[2] * jac.a[2];
      const double bb = jac.b[0] * jac.b[0] + jac.b[1] * jac.b[1] + jac.b[2] * jac.b[2];
      const double ab = jac.a[0] * jac.b[0] + jac.a[1] * jac.b[1] + jac.a[2] * jac.b[2];
      const double det = aa * bb - ab * ab;
      if (!(det > 0.0)) break;
      const double m1 = (bb * value.real() - ab * value.imag()) / det;
      const double m2 = (aa * value.imag() - ab * value.real()) / det;
      for (int k = 0; k < 3; ++k) x[k] -= jac.a[k] * m1 + jac.b[k] * m2;
      const double next = std::abs(q(x)) / scale;
      if (next >= residual) {
        residual = next;
        break;
      }
      residual = next;
    }
    if (residual > 1e-9) converged = false;
    out.max_residual = std::max(out.max_residual, residual);
    out.max_displacement = std::max(out.max_displacement, std::hypot(x[0] - start[0], x[1] - start[1], x[2] - start[2]));
  }
  out.passed = converged && (samples.size() < 2 || out.max_displacement < 0.1 * out.spacing);
  return out;
}

}  // namespace braidfield
