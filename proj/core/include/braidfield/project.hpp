#pragma once

#include <array>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "braidfield/semiholo.hpp"
#include "braidfield/verify.hpp"

namespace braidfield {

using Point3 = std::array<double, 3>;

struct Exponent3 {
  int x = 0;
  int y = 0;
  int z = 0;

  int degree() const noexcept { return x + y + z; }
  friend auto operator<=>(const Exponent3&, const Exponent3&) = default;
};

/// Sparse polynomial in real x, y, z with complex coefficients.
class RealPoly3 {
 public:
  using Terms = std::map<Exponent3, cplx>;

  RealPoly3() = default;
  explicit RealPoly3(Terms terms);
  static RealPoly3 constant(cplx c);
  static RealPoly3 monomial(Exponent3 e, cplx c = 1.0);

  const Terms& terms() const noexcept { return terms_; }
  cplx coeff(Exponent3 e) const;
  bool empty() const noexcept { return terms_.empty(); }
  int degree() const noexcept;
  double scale() const;

  cplx operator()(const Point3& p) const;
  /// (d/dx, d/dy, d/dz) at p.
  std::array<cplx, 3> gradient(const Point3& p) const;

  RealPoly3 pruned(double rel_tol) const;
  bool is_gaussian_integer() const;

  RealPoly3& operator+=(const RealPoly3& o);
  friend RealPoly3 operator+(RealPoly3 a, const RealPoly3& b) { return a += b; }
  friend RealPoly3 operator*(const RealPoly3& a, const RealPoly3& b);
  friend RealPoly3 operator*(cplx c, RealPoly3 a);
  friend bool operator==(const RealPoly3&, const RealPoly3&) = default;

 private:
  Terms terms_;
};

/// e.g. "(1)z^2 + (1)y^2 + (1)x^2 + (0+2i)z + (-1)"; zero prints as "0".
std::string to_string(const RealPoly3& p);

/// f(u(x,y,z), v(x,y,z)) (x^2+y^2+z^2+1)^deg f under the stereographic map
/// u = (|p|^2 - 1 + 2iz)/(|p|^2 + 1), v = 2(x + iy)/(|p|^2 + 1).
RealPoly3 stereographic_project(const SemiholoPoly& f);

/// The map above, from R^3 to the unit sphere.
NodalPoint stereographic_point(const Point3& p);
/// Its inverse; undefined at the pole u = 1.
Point3 inverse_stereographic(const NodalPoint& q);

/// Images of the nodal samples, dropping those with |p| > max_radius.
std::vector<Point3> project_points(std::span<const NodalPoint> points, double max_radius = 1e6);

struct RealPair {
  RealPoly3 real;  // F1
  RealPoly3 imag;  // F2
};

RealPair split_real_imag(const RealPoly3& p);

/// Smallest singular value of the real 2x3 Jacobian of (Re p, Im p) at each
/// point, minimised.
double projected_margin(const RealPoly3& p, std::span<const Point3> points);

struct IntegerizeOptions {
  int max_power = 15;             // largest power of ten tried
  double margin_fraction = 0.05;  // allowed zero displacement, in sample spacings
};

struct Integerized {
  RealPoly3 poly;  // Gaussian-integer coefficients
  int power = 0;   // poly ~ 10^power * p
  double margin = 0.0;
  double spacing = 0.0;
  double threshold = 0.0;  // margin_fraction * margin * spacing
  double perturbation = 0.0;  // max |poly / 10^power - p| over the samples
};

/// Smallest distance between two of the points.
double sample_spacing(std::span<const Point3> points);

/// Scales by the smallest 10^k whose rounding changes p at the samples by
/// less than the threshold, then rounds. A change below margin * d moves
/// the zero set by at most about d. Throws IntegerizeFailure when no
/// k <= max_power suffices.
Integerized integerize(const RealPoly3& p, std::span<const Point3> samples, const IntegerizeOptions& options = {});

struct Reverification {
  bool passed = false;
  double max_displacement = 0.0;
  double max_residual = 0.0;  // relative to the polynomial's scale
  double spacing = 0.0;       // smallest distance between samples
};

/// Gauss-Newton projection of each sample onto the zero set of `perturbed`
/// (rescaled by 10^-power). Passes when every sample converges and moves by
/// less than a tenth of the sample spacing.
Reverification reverify(const RealPoly3& perturbed, int power, std::span<const Point3> samples);

}  // namespace braidfield
