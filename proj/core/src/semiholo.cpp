#include "braidfield/semiholo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "braidfield/error.hpp"

namespace braidfield {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Relative size below which a coefficient part is rounding noise.
constexpr double kNoise = 1e-13;

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

cplx unit_root(long long numerator, int denominator) {
  const long long reduced = ((numerator % denominator) + denominator) % denominator;
  if (reduced == 0) return 1.0;
  if (2 * reduced == denominator) return -1.0;
  return std::polar(1.0, kTwoPi * static_cast<double>(reduced) / denominator);
}

double clean(double x, double cut) { return std::abs(x) < cut ? 0.0 : x; }

}  // namespace

int FourierBraid::strands() const noexcept {
  int s = 0;
  for (const ComponentCurve& c : components) s += c.strands;
  return s;
}

cplx FourierBraid::root(int component, int index, double t) const {
  const ComponentCurve& c = components.at(static_cast<std::size_t>(component));
  const double x = (time_scale * t + kTwoPi * index) / c.strands;
  return lambda * cplx(a1 * c.x(x), b1 * c.y(x));
}

cplx FourierBraid::root_derivative(int component, int index, double t) const {
  const ComponentCurve& c = components.at(static_cast<std::size_t>(component));
  const double x = (time_scale * t + kTwoPi * index) / c.strands;
  const double chain = static_cast<double>(time_scale) / c.strands;
  return lambda * chain * cplx(a1 * c.x.derivative_complex(x).real(), b1 * c.y.derivative_complex(x).real());
}

std::vector<cplx> FourierBraid::roots(double t) const {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(strands()));
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (int j = 0; j < components[c].strands; ++j) out.push_back(root(static_cast<int>(c), j, t));
  }
  return out;
}

cplx FourierBraid::product(cplx u, double t) const {
  cplx p(1.0);
  for (const cplx& r : roots(t)) p *= u - r;
  return p;
}

FourierBraid FourierBraid::repeated(int r) const {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "repeat factor must be positive");
  FourierBraid out = *this;
  out.time_scale *= r;
  return out;
}

cplx FractionalLaurent::coeff(int u_power, int exponent) const {
  if (u_power < 0 || u_power > u_degree()) return {};
  const auto& row = coeffs[static_cast<std::size_t>(u_power)];
  const int i = exponent - min_exponent;
  if (i < 0 || i >= static_cast<int>(row.size())) return {};
  return row[static_cast<std::size_t>(i)];
}

double FractionalLaurent::max_magnitude() const {
  double m = 0.0;
  for (const auto& row : coeffs) {
    for (const cplx& c : row) m = std::max(m, std::abs(c));
  }
  return m;
}

FractionalLaurent expand_component(const ComponentCurve& curve, double a, double b) {
  const int s = curve.strands;
  if (s < 1) throw Error(ErrorKind::InvalidArgument, "component needs at least one strand");
  const int n = std::max(curve.x.degree(), curve.y.degree());
  const std::size_t root_width = 2 * static_cast<std::size_t>(n) + 1;

  std::vector<cplx> base(root_width);
  for (int m = -n; m <= n; ++m) base[static_cast<std::size_t>(m + n)] = a * curve.x.coeff(m) + cplx(0.0, b) * curve.y.coeff(m);

  FractionalLaurent p;
  p.denominator = s;
  p.min_exponent = -s * n;
  const std::size_t width = 2 * static_cast<std::size_t>(s * n) + 1;
  p.coeffs.assign(static_cast<std::size_t>(s) + 1, std::vector<cplx>(width));
  p.coeffs[0][static_cast<std::size_t>(s * n)] = 1.0;

  // Running window [lo, hi] of occupied exponents, shifted by s*n.
  int lo = 0, hi = 0;
  std::vector<cplx> root(root_width);
  for (int j = 0; j < s; ++j) {
    for (int m = -n; m <= n; ++m) root[static_cast<std::size_t>(m + n)] = base[static_cast<std::size_t>(m + n)] * unit_root(static_cast<long long>(j) * m, s);
    std::vector<std::vector<cplx>> next(static_cast<std::size_t>(s) + 1, std::vector<cplx>(width));
    for (int k = 0; k <= j; ++k) {
      const auto& row = p.coeffs[static_cast<std::size_t>(k)];
      auto& up = next[static_cast<std::size_t>(k) + 1];
      auto& same = next[static_cast<std::size_t>(k)];
      for (int e = lo; e <= hi; ++e) {
        const cplx c = row[static_cast<std::size_t>(e + s * n)];
        if (c == cplx{}) continue;
        up[static_cast<std::size_t>(e + s * n)] += c;
        for (int m = -n; m <= n; ++m) same[static_cast<std::size_t>(e + m + s * n)] -= c * root[static_cast<std::size_t>(m + n)];
      }
    }
    p.coeffs = std::move(next);
    lo -= n;
    hi += n;
  }
  return p;
}

IntegerLaurent assert_cancellation(const FractionalLaurent& p, double tol) {
  const int s = p.denominator;
  const double limit = tol * p.max_magnitude();
  const int max_exponent = p.min_exponent + static_cast<int>(p.coeffs.front().size()) - 1;
  const int lo = -floor_div(-p.min_exponent, s);  // ceil(min / s)
  const int hi = floor_div(max_exponent, s);

  IntegerLaurent out;
  out.denominator = 1;
  out.min_exponent = lo;
  out.coeffs.assign(p.coeffs.size(), std::vector<cplx>(static_cast<std::size_t>(std::max(hi - lo + 1, 1))));
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    for (int e = p.min_exponent; e <= max_exponent; ++e) {
      const cplx c = p.coeff(static_cast<int>(k), e);
      if (e % s == 0) {
        out.coeffs[k][static_cast<std::size_t>(e / s - lo)] = c;
      } else if (std::abs(c) >= limit && c != cplx{}) {
        throw Error(ErrorKind::CancellationFailure,
                    "u^" + std::to_string(k) + " q^" + std::to_string(e) + "/" + std::to_string(s) +
                        " has relative size " + std::to_string(std::abs(c) / p.max_magnitude()));
      }
    }
  }
  return out;
}

SemiholoPoly::SemiholoPoly(int strands, Terms terms, double lambda)
    : strands_(strands), terms_(std::move(terms)), lambda_(lambda) {
  if (lambda <= 0.0) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
}

cplx SemiholoPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cplx{} : it->second;
}

int SemiholoPoly::u_degree() const noexcept {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.u);
  return d;
}

std::vector<cplx> SemiholoPoly::u_polynomial(cplx v) const {
  int max_v = 0, max_vbar = 0;
  for (const auto& [m, c] : terms_) {
    max_v = std::max(max_v, m.v);
    max_vbar = std::max(max_vbar, m.vbar);
  }
  std::vector<cplx> vp(static_cast<std::size_t>(max_v) + 1, 1.0), vbp(static_cast<std::size_t>(max_vbar) + 1, 1.0);
  for (std::size_t i = 1; i < vp.size(); ++i) vp[i] = vp[i - 1] * v;
  for (std::size_t i = 1; i < vbp.size(); ++i) vbp[i] = vbp[i - 1] * std::conj(v);

  std::vector<cplx> out(static_cast<std::size_t>(u_degree()) + 1);
  for (const auto& [m, c] : terms_) out[static_cast<std::size_t>(m.u)] += c * vp[static_cast<std::size_t>(m.v)] * vbp[static_cast<std::size_t>(m.vbar)];
  return out;
}

std::vector<cplx> SemiholoPoly::u_polynomial_dr(double r, double t) const {
  std::vector<cplx> out(static_cast<std::size_t>(u_degree()) + 1);
  for (const auto& [m, c] : terms_) {
    const int total = m.v + m.vbar;
    if (total == 0) continue;
    out[static_cast<std::size_t>(m.u)] += c * static_cast<double>(total) * std::pow(r, total - 1) * std::polar(1.0, (m.v - m.vbar) * t);
  }
  return out;
}

cplx SemiholoPoly::operator()(cplx u, cplx v) const {
  const std::vector<cplx> p = u_polynomial(v);
  cplx acc{};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * u + *it;
  return acc;
}

double SemiholoPoly::scale() const {
  double m = 0.0;
  for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

SemiholoPoly SemiholoPoly::pruned(double rel_tol) const {
  const double cut = rel_tol * scale();
  Terms kept;
  for (const auto& [m, c] : terms_) {
    const cplx d(clean(c.real(), cut), clean(c.imag(), cut));
    if (d != cplx{}) kept.emplace(m, d);
  }
  SemiholoPoly out(strands_, std::move(kept), lambda_);
  out.braid = braid;
  out.a1 = a1;
  out.b1 = b1;
  return out;
}

SemiholoPoly assemble(const FourierBraid& fb, double tol) {
  // Product over components, indexed [u power][e^{it} exponent - lo].
  std::vector<std::vector<cplx>> acc{{cplx(1.0)}};
  int lo = 0;
  for (const ComponentCurve& curve : fb.components) {
    const IntegerLaurent part = assert_cancellation(expand_component(curve, fb.lambda * fb.a1, fb.lambda * fb.b1), tol);
    const std::size_t pw = part.coeffs.front().size();
    std::vector<std::vector<cplx>> next(acc.size() + part.coeffs.size() - 1,
                                        std::vector<cplx>(acc.front().size() + pw - 1));
    for (std::size_t k1 = 0; k1 < acc.size(); ++k1) {
      for (std::size_t e1 = 0; e1 < acc[k1].size(); ++e1) {
        const cplx c1 = acc[k1][e1];
        if (c1 == cplx{}) continue;
        for (std::size_t k2 = 0; k2 < part.coeffs.size(); ++k2) {
          for (std::size_t e2 = 0; e2 < pw; ++e2) next[k1 + k2][e1 + e2] += c1 * part.coeffs[k2][e2];
        }
      }
    }
    acc = std::move(next);
    lo += part.min_exponent;
  }

  SemiholoPoly::Terms terms;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    for (std::size_t e = 0; e < acc[k].size(); ++e) {
      if (acc[k][e] == cplx{}) continue;
      const int m = (static_cast<int>(e) + lo) * fb.time_scale;
      const Monomial mono{static_cast<int>(k), std::max(m, 0), std::max(-m, 0)};
      terms[mono] += acc[k][e];
    }
  }
  SemiholoPoly f(fb.strands(), std::move(terms), fb.lambda);
  f.a1 = fb.a1;
  f.b1 = fb.b1;
  return f.pruned(kNoise);
}

SemiholoPoly rescale(const SemiholoPoly& f, double new_lambda) {
  if (new_lambda <= 0.0) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
  const double ratio = new_lambda / f.lambda();
  SemiholoPoly::Terms terms;
  for (const auto& [m, c] : f.terms()) terms.emplace(m, c * std::pow(ratio, f.strands() - m.u));
  SemiholoPoly out(f.strands(), std::move(terms), new_lambda);
  out.braid = f.braid;
  out.a1 = f.a1;
  out.b1 = f.b1;
  return out;
}

SemiholoPoly repeat(const SemiholoPoly& f, int r) {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "repeat factor must be positive");
  SemiholoPoly::Terms terms;
  for (const auto& [m, c] : f.terms()) terms.emplace(Monomial{m.u, m.v * r, m.vbar * r}, c);
  SemiholoPoly out(f.strands(), std::move(terms), f.lambda());
  if (f.braid) out.braid = f.braid->power(r);
  out.a1 = f.a1;
  out.b1 = f.b1;
  return out;
}

FourierBraid repeat(const FourierBraid& fb, int r) { return fb.repeated(r); }

int degree(const SemiholoPoly& f) {
  int d = 0;
  for (const auto& [m, c] : f.terms()) d = std::max(d, m.degree());
  return d;
}

bool is_harmonic(const SemiholoPoly& f) {
  return std::none_of(f.terms().begin(), f.terms().end(),
                      [](const auto& term) { return term.first.v > 0 && term.first.vbar > 0; });
}

DegreeBounds degree_bounds(const BraidWord& b, std::span<const int> f_degrees) {
  const Components comps = components(b);
  const int s = b.strands();
  const int len = static_cast<int>(b.length());
  const int widest = comps.max_cycle_length();
  const int count = comps.count();

  DegreeBounds bounds;
  bounds.upper = std::max({floor_div(widest * len - 1, 2),
                           floor_div(len * widest * widest * count + widest * (len - 1) - 2, 2), s});

  int pick = 0;
  for (int c = 1; c < count; ++c) {
    const bool better = f_degrees.size() == static_cast<std::size_t>(count)
                            ? f_degrees[static_cast<std::size_t>(c)] > f_degrees[static_cast<std::size_t>(pick)]
                            : comps.cycle_length(c) > comps.cycle_length(pick);
    if (better) pick = c;
  }
  const auto crossings = component_crossings(b, comps);
  auto count_of = [&](int x, int y) {
    auto it = crossings.find({std::min(x, y), std::max(x, y)});
    return it == crossings.end() ? 0 : it->second;
  };
  const int sp = comps.cycle_length(pick);
  double lower = 2.0 * count_of(pick, pick) / (2.0 * sp - 1.0);
  for (int c = 0; c < count; ++c) {
    if (c == pick) continue;
    lower = std::max(lower, count_of(c, pick) / (2.0 * std::max(comps.cycle_length(c), sp)));
  }
  bounds.lower = lower;
  return bounds;
}

}  // namespace braidfield
