#pragma once

#include <complex>
#include <span>
#include <vector>

namespace braidfield {

using cplx = std::complex<double>;

/// Finite trigonometric polynomial sum_{k=-N}^{N} c_k e^{ikt}.
///
/// Coefficients are stored densely, `coeffs[k + N]`. Interpolation routines
/// return conjugate-symmetric, pruned instances; the raw constructor keeps
/// whatever it is given so that symmetry violations stay observable.
class TrigPoly {
 public:
  TrigPoly() : coeffs_(1, cplx{}) {}
  explicit TrigPoly(std::vector<cplx> coeffs);

  static TrigPoly constant(double c);
  static TrigPoly cosine(int k, double amplitude = 1.0);
  static TrigPoly sine(int k, double amplitude = 1.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size() / 2); }
  cplx coeff(int k) const noexcept;
  std::span<const cplx> coefficients() const noexcept { return coeffs_; }

  /// Real-form coefficients: p(t) = a_0 + sum a_k cos kt + b_k sin kt.
  double cos_coeff(int k) const noexcept;
  double sin_coeff(int k) const noexcept;

  cplx eval_complex(double t) const noexcept;
  cplx derivative_complex(double t) const noexcept;
  double operator()(double t) const noexcept { return eval_complex(t).real(); }

  /// Largest |c_{-k} - conj(c_k)|.
  double symmetry_defect() const noexcept;
  TrigPoly symmetrized() const;
  /// Zeros coefficients below rel_tol * max|c_k| and trims the degree.
  TrigPoly pruned(double rel_tol) const;
  /// p(t) -> p(r t).
  TrigPoly repeated(int r) const;

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator*(double s) const;

  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

 private:
  std::vector<cplx> coeffs_;
};

/// Real value of p at t. Throws SymmetryViolation if the imaginary residual
/// exceeds tol * max(1, sum |c_k|).
double eval(const TrigPoly& p, double t, double tol = 1e-9);

/// Interpolant through values at the uniform nodes 2 pi n / N, n = 0..N-1.
/// Odd N gives degree (N-1)/2; even N carries a pure cosine Nyquist term.
TrigPoly dft_interpolate(std::span<const double> values, double prune_tol = 1e-9);

struct TrigNode {
  double t = 0.0;
  double y = 0.0;
};

/// Interpolant of degree floor(N/2) through arbitrary distinct nodes, built
/// from the Lagrange basis on the unit circle and symmetrized. For even N the
/// extra factor uses `alphas` (one per node, or a single shared angle); when
/// empty, 0 is used unless a node sits within 1e-6 of it, in which case
/// golden-angle multiples are tried.
TrigPoly lagrange_trig_interpolate(std::span<const TrigNode> points, std::span<const double> alphas = {},
                                   double prune_tol = 1e-9);

/// Coefficients (ascending powers) of z^N p(z), a polynomial of degree 2N
/// whose values on |z| = 1 satisfy p(e^{it}) = e^{iNt} * P(t).
std::vector<cplx> to_circle_poly(const TrigPoly& p);

}  // namespace braidfield
