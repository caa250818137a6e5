#include <gtest/gtest.h>

#include "braidfield/error.hpp"
#include "braidfield/trig_poly.hpp"
#include "support.hpp"

using namespace braidfield;
using namespace testing_support;

TEST(Dft, FiveTwoCoefficients) {
  const TrigPoly f = dft_interpolate(kFiveTwoX);
  EXPECT_EQ(f.degree(), 8);
  for (const RealCoeff& c : kFiveTwoF) {
    EXPECT_NEAR(c.cosine ? f.cos_coeff(c.k) : f.sin_coeff(c.k), c.value, 1e-3) << c.k;
  }
  for (int k = 0; k <= 8; ++k) {
    bool listed_cos = false, listed_sin = false;
    for (const RealCoeff& c : kFiveTwoF) {
      if (c.k == k) (c.cosine ? listed_cos : listed_sin) = true;
    }
    if (!listed_cos) {
      EXPECT_LT(std::abs(f.cos_coeff(k)), 1e-3) << "cos " << k;
    }
    if (!listed_sin) {
      EXPECT_LT(std::abs(f.sin_coeff(k)), 1e-3) << "sin " << k;
    }
  }
  EXPECT_NEAR(eval(f, 0.0), 1.0, 1e-9);
}

TEST(Dft, InterpolatesRandomData) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 40; ++n) {
    std::vector<double> y(n);
    for (double& v : y) v = g(rng);
    const TrigPoly p = dft_interpolate(y, 0.0);
    if (n % 2 == 1) {
      EXPECT_EQ(p.degree(), (n - 1) / 2);
    }
    double scale = 1.0;
    for (double v : y) scale = std::max(scale, std::abs(v));
    for (int k = 0; k < n; ++k) ASSERT_NEAR(eval(p, kTwoPi * k / n), y[k], 1e-9 * scale) << n;
    ASSERT_LT(p.symmetry_defect(), 1e-15);
  }
}

TEST(Dft, BasisReproduction) {
  const TrigPoly c = dft_interpolate(std::vector<double>(7, 2.5));
  EXPECT_EQ(c.degree(), 0);
  EXPECT_DOUBLE_EQ(c.cos_coeff(0), 2.5);
  for (int n = 4; n <= 12; ++n) {
    std::vector<double> y(n);
    for (int k = 0; k < n; ++k) y[k] = std::cos(kTwoPi * k / n);
    const TrigPoly p = dft_interpolate(y);
    EXPECT_EQ(p.degree(), 1) << n;
    EXPECT_NEAR(p.cos_coeff(1), 1.0, 1e-12);
  }
}

TEST(Dft, EvenCountNyquistIsCosine) {
  const std::vector<double> y = {1, -1, 1, -1};
  const TrigPoly p = dft_interpolate(y);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_NEAR(p.cos_coeff(2), 1.0, 1e-15);
  EXPECT_NEAR(p.sin_coeff(2), 0.0, 1e-15);
}

TEST(Dft, EmptyThrows) {
  EXPECT_THROW(dft_interpolate(std::vector<double>{}), Error);
}

TEST(Lagrange, FiveTwoCoefficients) {
  const TrigPoly g = lagrange_trig_interpolate(five_two_g_points());
  EXPECT_EQ(g.degree(), 6);
  for (const GCoeff& c : kFiveTwoG) EXPECT_LT(rel_err(g_coefficient(g, c), c.value), 1e-3) << c.label;
}

TEST(Lagrange, InterpolatesRandomNodes) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 14);
    std::vector<TrigNode> pts;
    while (static_cast<int>(pts.size()) < n) {
      const double t = angle(rng);
      bool close = false;
      for (const TrigNode& p : pts) close |= std::abs(std::remainder(p.t - t, kTwoPi)) < 0.05;
      if (!close) pts.push_back({t, g(rng)});
    }
    const TrigPoly p = lagrange_trig_interpolate(pts, {}, 0.0);
    ASSERT_EQ(p.degree() <= n / 2, true);
    double scale = 1.0;
    for (const TrigNode& q : pts) scale = std::max(scale, std::abs(q.y));
    for (const TrigNode& q : pts) ASSERT_NEAR(eval(p, q.t), q.y, 1e-9 * scale) << "n=" << n;
  }
}

TEST(Lagrange, RecoversSine) {
  const std::vector<TrigNode> pts = {{0.3, std::sin(0.3)}, {2.0, std::sin(2.0)}, {4.4, std::sin(4.4)}};
  const TrigPoly p = lagrange_trig_interpolate(pts);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> t(0.0, kTwoPi);
  for (int k = 0; k < 100; ++k) {
    const double x = t(rng);
    ASSERT_NEAR(p(x), std::sin(x), 1e-12);
  }
}

TEST(Lagrange, SinglePointIsConstant) {
  const std::vector<TrigNode> pts = {{1.2, -0.7}};
  const TrigPoly p = lagrange_trig_interpolate(pts);
  EXPECT_EQ(p.degree(), 0);
  EXPECT_DOUBLE_EQ(p.cos_coeff(0), -0.7);
}

TEST(Lagrange, Errors) {
  const std::vector<TrigNode> dup = {{1.0, 1}, {1.0 + kTwoPi, 2}};
  try {
    lagrange_trig_interpolate(dup);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateNode);
  }
  const std::vector<TrigNode> pair = {{0.5, 1}, {2.0, -1}};
  const std::vector<double> alpha = {0.5};
  try {
    lagrange_trig_interpolate(pair, alpha);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularAlpha);
  }
}

TEST(Lagrange, EvenCountNodeAtZero) {
  const std::vector<TrigNode> pts = {{0.0, 1}, {1.0, -1}, {2.5, 2}, {4.0, 0.5}};
  const TrigPoly p = lagrange_trig_interpolate(pts);
  for (const TrigNode& q : pts) EXPECT_NEAR(p(q.t), q.y, 1e-12);
}

TEST(TrigPoly, EvalAndSymmetry) {
  EXPECT_NEAR(eval(TrigPoly::cosine(1), kPi), -1.0, 1e-15);
  EXPECT_EQ(eval(TrigPoly(), 3.0), 0.0);
  const TrigPoly skew(std::vector<cplx>{cplx(0, 1), 0.0, cplx(0, 1)});
  EXPECT_THROW(eval(skew, 0.0), Error);
  const TrigPoly fixed = skew.symmetrized();
  EXPECT_LT(fixed.symmetry_defect(), 1e-15);
}

TEST(TrigPoly, CirclePolyRoundTrip) {
  const std::vector<cplx> c = to_circle_poly(TrigPoly::cosine(1));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(std::abs(c[0] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c[2] - 0.5), 0.0, 1e-15);
  EXPECT_EQ(to_circle_poly(TrigPoly::constant(1.0)).size(), 1u);

  const TrigPoly f = dft_interpolate(kFiveTwoX);
  const std::vector<cplx> q = to_circle_poly(f);
  EXPECT_EQ(q.size(), 17u);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> t(0.0, kTwoPi);
  for (int k = 0; k < 100; ++k) {
    const double x = t(rng);
    cplx acc{};
    for (std::size_t n = q.size(); n-- > 0;) acc = acc * std::polar(1.0, x) + q[n];
    ASSERT_NEAR(std::abs(acc / std::polar(1.0, 8.0 * x) - f(x)), 0.0, 1e-12);
  }
}

TEST(TrigPoly, RepeatedAndPruned) {
  const TrigPoly p = TrigPoly::sine(2, 3.0).repeated(3);
  EXPECT_EQ(p.degree(), 6);
  EXPECT_NEAR(p.sin_coeff(6), 3.0, 1e-15);
  const TrigPoly q = (TrigPoly::cosine(1) + TrigPoly::cosine(3, 1e-12)).pruned(1e-9);
  EXPECT_EQ(q.degree(), 1);
}
