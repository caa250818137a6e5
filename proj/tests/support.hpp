#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "braidfield/braid.hpp"
#include "braidfield/project.hpp"
#include "braidfield/semiholo.hpp"
#include "braidfield/trig_poly.hpp"

namespace testing_support {

using braidfield::cplx;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// sigma1, sigma1^2, sigma1^3, (sigma1 sigma2^-1)^2, 5_2, 6_2.
inline const std::vector<std::string> kCorpus = {"1", "1 1", "1 1 1", "1 -2 1 -2", "2 -1 2 1 1 1", "1 -2 1 -2 -2 -2"};

inline const std::string kFiveTwo = "2 -1 2 1 1 1";

/// Reference 5_2 x-values at t = 2 pi k / 18.
inline const std::vector<double> kFiveTwoX = {1, 1, 0, -1, -1, -1, -1, 0, 1, 1, 0, 1, 0, -1, -1, 0, 1, 0};

struct RealCoeff {
  bool cosine;
  int k;
  double value;
};

/// Reference nonzero real-form coefficients of the 5_2 F.
inline const std::vector<RealCoeff> kFiveTwoF = {{false, 1, -0.259288}, {true, 2, 0.959796}, {true, 4, -0.177363},
                                                 {false, 5, 0.4873},    {false, 7, 0.169238}, {true, 8, 0.217568}};

/// Reference 5_2 sign points.
inline std::vector<braidfield::TrigNode> five_two_g_points() {
  const double a = kTwoPi / 3.0, b = 2.0 * kTwoPi / 3.0;
  return {{0.523599, -1},    {0.912415, 1},     {0.134782 + a, -1}, {0.523599 + a, 1},
          {1.15567 + a, 1},  {1.5708 + a, -1},  {1.98592 + a, 1},   {0.134782 + b, 1},
          {0.912415 + b, -1}, {1.15567 + b, -1}, {1.5708 + b, 1},    {1.98592 + b, -1}};
}

/// A reference 5_2 G coefficient, with the harmonic it matches in our
/// interpolant. The reference constant equals 2 c_0 and the reference
/// table skips harmonic 4 (ours: cos 11.969, sin -1.023), so its labels
/// 4 and 5 sit at our k = 5 and 6.
struct GCoeff {
  const char* label;
  bool constant;
  bool cosine;
  int k;
  double value;
};

inline const std::vector<GCoeff> kFiveTwoG = {
    {"1", true, true, 0, 19.0248},        {"cos t", false, true, 1, -0.823358},  {"sin t", false, false, 1, 17.1048},
    {"cos 2t", false, true, 2, -15.2722}, {"sin 2t", false, false, 2, -0.13139}, {"cos 3t", false, true, 3, -0.454434},
    {"sin 3t", false, false, 3, -12.8637}, {"cos 4t", false, true, 5, -0.823379}, {"sin 4t", false, false, 5, 8.6227},
    {"cos 5t", false, true, 6, -4.10823}, {"sin 5t", false, false, 6, -0.818417}};

inline double g_coefficient(const braidfield::TrigPoly& g, const GCoeff& c) {
  if (c.constant) return 2.0 * g.cos_coeff(0);
  return c.cosine ? g.cos_coeff(c.k) : g.sin_coeff(c.k);
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

/// Eigenvalues of the companion matrix of an ascending coefficient list.
inline std::vector<cplx> companion_roots(std::span<const cplx> coeffs) {
  std::size_t size = coeffs.size();
  while (size > 0 && coeffs[size - 1] == cplx{}) --size;
  const int n = static_cast<int>(size) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -coeffs[i] / coeffs[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + n};
}

/// Largest distance in an optimal pairing of two small multisets.
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<std::size_t> perm(b.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  double best = std::numeric_limits<double>::infinity();
  if (a.size() <= 8) {
    do {
      double worst = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  // Greedy fallback for larger sets.
  double worst = 0.0;
  for (const cplx& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

/// Direct product over all strands of (u - root) from the parametrisation.
inline cplx direct_product(const braidfield::FourierBraid& fb, cplx u, double t) {
  cplx acc = 1.0;
  for (const auto& c : fb.components) {
    for (int j = 0; j < c.strands; ++j) {
      const double arg = (fb.time_scale * t + kTwoPi * j) / c.strands;
      const cplx root = fb.lambda * cplx(fb.a1 * c.x(arg), fb.b1 * c.y(arg));
      acc *= u - root;
    }
  }
  return acc;
}

/// Cyclic sign changes per generator index plus unused indices, by walking
/// the word twice.
inline int beta_by_enumeration(const braidfield::BraidWord& b) {
  int count = 0;
  const std::size_t n = b.length();
  for (int index = 1; index < b.strands(); ++index) {
    std::vector<int> signs;
    for (std::size_t k = 0; k < n; ++k) {
      if (b[k].index == index) signs.push_back(b[k].sign);
    }
    if (signs.empty()) {
      ++count;
      continue;
    }
    for (std::size_t k = 0; k < signs.size(); ++k) {
      if (signs[k] != signs[(k + 1) % signs.size()]) ++count;
    }
  }
  return count;
}

/// Random word with given strand count and length.
inline braidfield::BraidWord random_word(std::mt19937_64& rng, int strands, int length) {
  std::uniform_int_distribution<int> index(1, strands - 1), sign(0, 1);
  std::vector<braidfield::Letter> letters;
  for (int k = 0; k < length; ++k) letters.push_back({index(rng), sign(rng) ? 1 : -1});
  return braidfield::BraidWord(strands, std::move(letters));
}

inline braidfield::TrigPoly random_trig(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(2 * static_cast<std::size_t>(degree) + 1);
  c[degree] = g(rng);
  for (int k = 1; k <= degree; ++k) {
    c[degree + k] = cplx(g(rng), g(rng));
    c[degree - k] = std::conj(c[degree + k]);
  }
  return braidfield::TrigPoly(std::move(c));
}

using braidfield::Point3;

/// Splits a point cloud into closed curves by nearest-neighbour chaining; a
/// chain ends when the nearest unused point is farther than `gap`.
inline std::vector<std::vector<Point3>> follow_curves(std::vector<Point3> cloud, double gap) {
  auto dist = [](const Point3& a, const Point3& b) { return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]); };
  std::vector<std::vector<Point3>> curves;
  while (!cloud.empty()) {
    std::vector<Point3> curve{cloud.back()};
    cloud.pop_back();
    while (!cloud.empty()) {
      auto it = std::min_element(cloud.begin(), cloud.end(),
                                 [&](const Point3& p, const Point3& q) { return dist(p, curve.back()) < dist(q, curve.back()); });
      if (dist(*it, curve.back()) > gap) break;
      curve.push_back(*it);
      cloud.erase(it);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

/// Gauss linking integral of two closed polygons, midpoint rule on segments.
inline double gauss_linking(std::span<const Point3> a, std::span<const Point3> b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point3& a0 = a[i];
    const Point3& a1 = a[(i + 1) % a.size()];
    const Point3 da{a1[0] - a0[0], a1[1] - a0[1], a1[2] - a0[2]};
    const Point3 ma{(a0[0] + a1[0]) / 2, (a0[1] + a1[1]) / 2, (a0[2] + a1[2]) / 2};
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Point3& b0 = b[j];
      const Point3& b1 = b[(j + 1) % b.size()];
      const Point3 db{b1[0] - b0[0], b1[1] - b0[1], b1[2] - b0[2]};
      const Point3 r{ma[0] - (b0[0] + b1[0]) / 2, ma[1] - (b0[1] + b1[1]) / 2, ma[2] - (b0[2] + b1[2]) / 2};
      const double norm = std::hypot(r[0], r[1], r[2]);
      const Point3 cross{da[1] * db[2] - da[2] * db[1], da[2] * db[0] - da[0] * db[2], da[0] * db[1] - da[1] * db[0]};
      total += (r[0] * cross[0] + r[1] * cross[1] + r[2] * cross[2]) / (norm * norm * norm);
    }
  }
  return total / (4.0 * kPi);
}

}  // namespace testing_support
