#include "braidfield/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "braidfield/error.hpp"

namespace braidfield {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// 2 pi (1 - 1/phi)
constexpr double kGoldenAngle = 2.399963229728653;

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

TrigPoly::TrigPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_.size() % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument, "trigonometric coefficient vector must have odd length");
  }
}

TrigPoly TrigPoly::constant(double c) { return TrigPoly(std::vector<cplx>{cplx(c)}); }

TrigPoly TrigPoly::cosine(int k, double amplitude) {
  if (k == 0) return constant(amplitude);
  std::vector<cplx> c(2 * static_cast<std::size_t>(k) + 1);
  c.front() = c.back() = amplitude / 2.0;
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::sine(int k, double amplitude) {
  if (k == 0) return TrigPoly();
  std::vector<cplx> c(2 * static_cast<std::size_t>(k) + 1);
  // sin kt = (e^{ikt} - e^{-ikt}) / 2i
  c.back() = cplx(0.0, -amplitude / 2.0);
  c.front() = cplx(0.0, amplitude / 2.0);
  return TrigPoly(std::move(c));
}

cplx TrigPoly::coeff(int k) const noexcept {
  const int n = degree();
  if (k < -n || k > n) return {};
  return coeffs_[static_cast<std::size_t>(k + n)];
}

double TrigPoly::cos_coeff(int k) const noexcept {
  if (k == 0) return coeff(0).real();
  return (coeff(k) + coeff(-k)).real();
}

double TrigPoly::sin_coeff(int k) const noexcept {
  if (k == 0) return 0.0;
  return (cplx(0.0, 1.0) * (coeff(k) - coeff(-k))).real();
}

cplx TrigPoly::eval_complex(double t) const noexcept {
  const int n = degree();
  cplx sum = coeffs_[static_cast<std::size_t>(n)];
  const cplx step = std::polar(1.0, t);
  cplx w = step;
  for (int k = 1; k <= n; ++k) {
    sum += coeffs_[static_cast<std::size_t>(n + k)] * w + coeffs_[static_cast<std::size_t>(n - k)] * std::conj(w);
    // Recompute periodically so the recurrence does not drift off the circle.
    w = (k % 16 == 15) ? std::polar(1.0, (k + 1) * t) : w * step;
  }
  return sum;
}

cplx TrigPoly::derivative_complex(double t) const noexcept {
  const int n = degree();
  cplx sum{};
  for (int k = 1; k <= n; ++k) {
    const cplx w = std::polar(1.0, k * t);
    sum += cplx(0.0, k) * (coeffs_[static_cast<std::size_t>(n + k)] * w - coeffs_[static_cast<std::size_t>(n - k)] * std::conj(w));
  }
  return sum;
}

double TrigPoly::symmetry_defect() const noexcept {
  double worst = 0.0;
  for (int k = 0; k <= degree(); ++k) worst = std::max(worst, std::abs(coeff(-k) - std::conj(coeff(k))));
  return worst;
}

TrigPoly TrigPoly::symmetrized() const {
  const int n = degree();
  std::vector<cplx> c(coeffs_.size());
  for (int k = -n; k <= n; ++k) c[static_cast<std::size_t>(k + n)] = (coeff(k) + std::conj(coeff(-k))) / 2.0;
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::pruned(double rel_tol) const {
  double largest = 0.0;
  for (const cplx& c : coeffs_) largest = std::max(largest, std::abs(c));
  const double cut = rel_tol * largest;
  int n = degree();
  std::vector<cplx> c = coeffs_;
  for (cplx& x : c) {
    if (std::abs(x) <= cut) x = {};
  }
  int tight = 0;
  for (int k = n; k > 0; --k) {
    if (c[static_cast<std::size_t>(n + k)] != cplx{} || c[static_cast<std::size_t>(n - k)] != cplx{}) {
      tight = k;
      break;
    }
  }
  return TrigPoly(std::vector<cplx>(c.begin() + (n - tight), c.begin() + (n + tight + 1)));
}

TrigPoly TrigPoly::repeated(int r) const {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "repeat factor must be positive");
  const int n = degree();
  std::vector<cplx> c(2 * static_cast<std::size_t>(n * r) + 1);
  for (int k = -n; k <= n; ++k) c[static_cast<std::size_t>(k * r + n * r)] = coeff(k);
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  const int n = std::max(degree(), o.degree());
  std::vector<cplx> c(2 * static_cast<std::size_t>(n) + 1);
  for (int k = -n; k <= n; ++k) c[static_cast<std::size_t>(k + n)] = coeff(k) + o.coeff(k);
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::operator*(double s) const {
  std::vector<cplx> c = coeffs_;
  for (cplx& x : c) x *= s;
  return TrigPoly(std::move(c));
}

double eval(const TrigPoly& p, double t, double tol) {
  const cplx v = p.eval_complex(t);
  double scale = 1.0;
  double total = 0.0;
  for (const cplx& c : p.coefficients()) total += std::abs(c);
  scale = std::max(scale, total);
  if (std::abs(v.imag()) > tol * scale) {
    throw Error(ErrorKind::SymmetryViolation, "imaginary residual " + std::to_string(v.imag()));
  }
  return v.real();
}

TrigPoly dft_interpolate(std::span<const double> values, double prune_tol) {
  const std::size_t n = values.size();
  if (n == 0) throw Error(ErrorKind::EmptyData, "no values to interpolate");
  const int half = static_cast<int>(n / 2);
  const bool even = n % 2 == 0;

  std::vector<cplx> c(2 * static_cast<std::size_t>(half) + 1);
  auto dft = [&](int k) {
    cplx sum{};
    for (std::size_t m = 0; m < n; ++m) {
      // Reduce the phase index exactly before converting to an angle.
      const std::size_t phase = (static_cast<std::size_t>(k) * m) % n;
      sum += values[m] * std::polar(1.0, -kTwoPi * static_cast<double>(phase) / static_cast<double>(n));
    }
    return sum / static_cast<double>(n);
  };
  for (int k = 0; k <= half; ++k) {
    cplx d = dft(k);
    if (even && k == half) {
      // Nyquist term D cos(N t / 2): split evenly between +-N/2.
      c[0] = c[c.size() - 1] = d.real() / 2.0;
    } else {
      c[static_cast<std::size_t>(half + k)] = d;
      c[static_cast<std::size_t>(half - k)] = std::conj(d);
    }
  }
  return TrigPoly(std::move(c)).pruned(prune_tol);
}

TrigPoly lagrange_trig_interpolate(std::span<const TrigNode> points, std::span<const double> alphas, double prune_tol) {
  const std::size_t n = points.size();
  if (n == 0) throw Error(ErrorKind::EmptyData, "no nodes to interpolate");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (circular_distance(points[a].t, points[b].t) < 1e-12) {
        throw Error(ErrorKind::DuplicateNode, "nodes " + std::to_string(a) + " and " + std::to_string(b) + " coincide");
      }
    }
  }
  const bool even = n % 2 == 0;
  const int half = static_cast<int>(n / 2);

  std::vector<double> alpha(n, 0.0);
  if (even) {
    if (!alphas.empty()) {
      if (alphas.size() != 1 && alphas.size() != n) {
        throw Error(ErrorKind::InvalidArgument, "need one alpha or one per node");
      }
      for (std::size_t k = 0; k < n; ++k) alpha[k] = alphas.size() == 1 ? alphas[0] : alphas[k];
      for (std::size_t k = 0; k < n; ++k) {
        for (const TrigNode& p : points) {
          if (circular_distance(alpha[k], p.t) < 1e-12) {
            throw Error(ErrorKind::SingularAlpha, "alpha coincides with node " + std::to_string(p.t));
          }
        }
      }
    } else {
      double a = 0.0;
      auto clear = [&](double x) {
        return std::none_of(points.begin(), points.end(),
                            [&](const TrigNode& p) { return circular_distance(x, p.t) < 1e-6; });
      };
      for (int tries = 1; !clear(a); ++tries) {
        if (tries > 1000) throw Error(ErrorKind::SingularAlpha, "no admissible alpha found");
        a = std::fmod(tries * kGoldenAngle, kTwoPi);
      }
      std::fill(alpha.begin(), alpha.end(), a);
    }
  }

  // q(z) = sum_k y_k z_k^{K} z^{-K} prod_{m != k} (z - z_m)/(z_k - z_m) [ * (z - e^{i alpha})/(z_k - e^{i alpha}) ]
  const std::size_t width = 2 * static_cast<std::size_t>(half) + 1;
  std::vector<cplx> total(width);
  std::vector<cplx> basis;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx zk = std::polar(1.0, points[k].t);
    basis.assign(1, cplx(1.0));
    cplx denom(1.0);
    auto multiply = [&](cplx root) {
      basis.push_back(cplx{});
      for (std::size_t i = basis.size() - 1; i > 0; --i) basis[i] = basis[i - 1] - root * basis[i];
      basis[0] = -root * basis[0];
      denom *= zk - root;
    };
    for (std::size_t m = 0; m < n; ++m) {
      if (m != k) multiply(std::polar(1.0, points[m].t));
    }
    if (even) multiply(std::polar(1.0, alpha[k]));
    const cplx weight = points[k].y * std::polar(1.0, half * points[k].t) / denom;
    for (std::size_t i = 0; i < width; ++i) total[i] += weight * basis[i];
  }
  return TrigPoly(std::move(total)).symmetrized().pruned(prune_tol);
}

std::vector<cplx> to_circle_poly(const TrigPoly& p) {
  auto c = p.coefficients();
  return std::vector<cplx>(c.begin(), c.end());
}

}  // namespace braidfield
