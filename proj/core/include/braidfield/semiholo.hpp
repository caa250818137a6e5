#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "braidfield/braid.hpp"
#include "braidfield/trig_poly.hpp"

namespace braidfield {

/// Strand coordinates of one link component: x = F, y = G, sampled at
/// (t + 2 pi j)/s_C for j = 0..s_C-1.
struct ComponentCurve {
  TrigPoly x;
  TrigPoly y;
  int strands = 1;
};

/// Fourier parametrisation of a braid. Root (C, j) at time t is
/// lambda * (a1 F_C + i b1 G_C)((time_scale * t + 2 pi j) / s_C).
struct FourierBraid {
  std::vector<ComponentCurve> components;
  double lambda = 1.0;
  double a1 = 1.0;
  double b1 = 1.0;
  int time_scale = 1;

  int strands() const noexcept;
  cplx root(int component, int index, double t) const;
  /// d/dt of root(component, index, t).
  cplx root_derivative(int component, int index, double t) const;
  /// All s roots at t, components in order.
  std::vector<cplx> roots(double t) const;
  /// prod over all strands of (u - root); the product form of g.
  cplx product(cplx u, double t) const;

  /// t -> r t, i.e. the closure of B^r.
  FourierBraid repeated(int r) const;
};

/// Product over the strands of one component as a polynomial in u whose
/// coefficients are Laurent polynomials in q = e^{it/s_C}.
/// `coeffs[k][m - min_exponent]` multiplies u^k q^m.
struct FractionalLaurent {
  int denominator = 1;
  int min_exponent = 0;
  std::vector<std::vector<cplx>> coeffs;

  int u_degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  cplx coeff(int u_power, int exponent) const;
  double max_magnitude() const;
};

/// The same product after cancellation: coefficients are Laurent in e^{it}.
using IntegerLaurent = FractionalLaurent;

FractionalLaurent expand_component(const ComponentCurve& curve, double a, double b);

/// Checks that every q^m with s_C not dividing m is negligible, then returns
/// the polynomial in e^{it} (denominator 1).
IntegerLaurent assert_cancellation(const FractionalLaurent& p, double tol = 1e-9);

struct Monomial {
  int u = 0;
  int v = 0;
  int vbar = 0;

  int degree() const noexcept { return u + v + vbar; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Serialization order: u descending, then v, then vbar ascending.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    if (a.u != b.u) return a.u > b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.vbar < b.vbar;
  }
};

/// Polynomial in u, v and conj(v) with complex coefficients.
class SemiholoPoly {
 public:
  using Terms = std::map<Monomial, cplx, MonomialOrder>;

  SemiholoPoly() = default;
  SemiholoPoly(int strands, Terms terms, double lambda = 1.0);

  int strands() const noexcept { return strands_; }
  double lambda() const noexcept { return lambda_; }
  const Terms& terms() const noexcept { return terms_; }
  cplx coeff(const Monomial& m) const;
  bool empty() const noexcept { return terms_.empty(); }

  void set_lambda(double lambda) noexcept { lambda_ = lambda; }
  std::optional<BraidWord> braid;
  double a1 = 1.0;
  double b1 = 1.0;

  int u_degree() const noexcept;
  cplx operator()(cplx u, cplx v) const;
  /// Coefficients of f(., v) in ascending powers of u.
  std::vector<cplx> u_polynomial(cplx v) const;
  /// Coefficients of d/dr f(., r e^{it}) in ascending powers of u.
  std::vector<cplx> u_polynomial_dr(double r, double t) const;
  /// Largest coefficient magnitude.
  double scale() const;

  SemiholoPoly pruned(double rel_tol) const;

  friend bool operator==(const SemiholoPoly& a, const SemiholoPoly& b) {
    return a.strands_ == b.strands_ && a.terms_ == b.terms_;
  }

 private:
  int strands_ = 0;
  Terms terms_;
  double lambda_ = 1.0;
};

/// Product of the components' cancelled expansions with e^{imt} -> v^m for
/// m > 0 and conj(v)^{-m} for m < 0. Honors fb.time_scale.
SemiholoPoly assemble(const FourierBraid& fb, double tol = 1e-9);

/// Multiplies the u^k coefficient by (lambda'/lambda)^{s-k}.
SemiholoPoly rescale(const SemiholoPoly& f, double new_lambda);
/// Multiplies every v and vbar exponent by r.
SemiholoPoly repeat(const SemiholoPoly& f, int r);
FourierBraid repeat(const FourierBraid& fb, int r);

int degree(const SemiholoPoly& f);
bool is_harmonic(const SemiholoPoly& f);

struct DegreeBounds {
  double lower = 0.0;  // c1
  int upper = 0;       // c2
};

/// c1 uses the component with the largest F degree when `f_degrees` is given,
/// otherwise the one with the most strands.
DegreeBounds degree_bounds(const BraidWord& b, std::span<const int> f_degrees = {});

}  // namespace braidfield
