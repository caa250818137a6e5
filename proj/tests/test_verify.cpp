#include <gtest/gtest.h>

#include "braidfield/error.hpp"
#include "braidfield/pipeline.hpp"
#include "braidfield/verify.hpp"
#include "support.hpp"

using namespace braidfield;
using namespace testing_support;

namespace {

SemiholoPoly make(int strands, std::initializer_list<std::pair<Monomial, cplx>> terms) {
  SemiholoPoly::Terms t;
  for (const auto& [m, c] : terms) t[m] = c;
  return SemiholoPoly(strands, std::move(t), 1.0);
}

}  // namespace

TEST(Verify, CorpusPasses) {
  for (const auto& w : kCorpus) {
    const Construction c = construct(parse_braid_word(w));
    const VerificationReport r = find_lambda(c.poly, {}, &c.fourier);
    ASSERT_TRUE(r.passed) << w << ": " << r.failed_stage << " " << r.detail;
    EXPECT_EQ(r.expected_source, "braid");
    EXPECT_EQ(r.observed, signature(c.target())) << w;
    EXPECT_TRUE(r.permutation_match && r.exponent_sum_match && r.pair_counts_match);
    EXPECT_TRUE(r.unique_intersection);
    EXPECT_GT(r.min_radial_slope, 0.0);
    EXPECT_LT(r.lambda * r.max_abs_u, 1.0);
    EXPECT_TRUE(r.transversality.passed);
    ASSERT_TRUE(r.phase_critical.has_value());
    EXPECT_GE(*r.phase_critical, beta(c.word)) << w;
    ASSERT_TRUE(r.conservative_lambda.has_value());
    EXPECT_GT(*r.conservative_lambda, 0.0);
    // Any lambda at or below the accepted one is also accepted.
    const VerificationReport smaller = find_lambda(c.poly, {.samples = 512, .lambda_floor = 1e-8, .fixed_lambda = r.lambda / 2, .radial = {}, .conservative = false});
    EXPECT_TRUE(smaller.passed) << w;
  }
}

TEST(Verify, CylinderBraidIgnoresLambda) {
  const Construction c = construct(parse_braid_word(kFiveTwo));
  for (const double lambda : {1.0, 0.5, 0.01}) {
    EXPECT_EQ(reconstruct_braid(rescale(c.poly, lambda), 512), signature(c.word)) << lambda;
  }
}

TEST(Verify, NodalPointsLieOnSphereAndZeroSet) {
  for (const auto& w : kCorpus) {
    const Construction c = construct(parse_braid_word(w));
    const VerificationReport r = find_lambda(c.poly, {.samples = 512, .lambda_floor = 1e-8, .fixed_lambda = {}, .radial = {}, .conservative = false});
    ASSERT_TRUE(r.passed);
    const SemiholoPoly scaled = rescale(c.poly, r.lambda);
    const std::vector<NodalPoint> points = sample_nodal_set(c.poly, r.lambda, 128);
    EXPECT_EQ(points.size(), 128u * static_cast<std::size_t>(c.word.strands()));
    for (const NodalPoint& p : points) {
      EXPECT_NEAR(std::norm(p.u) + std::norm(p.v), 1.0, 1e-12);
      EXPECT_LT(std::abs(scaled(p.u, p.v)), 1e-9 * scaled.scale()) << w;
    }
  }
}

TEST(Verify, DegenerateSquareFailsTransversality) {
  const VerificationReport r = find_lambda(make(2, {{{2, 0, 0}, 1.0}}));
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.failed_stage, "transversality");
}

TEST(Verify, UnknotAtFullScale) {
  const VerificationReport r = find_lambda(make(1, {{{1, 0, 0}, 1.0}}));
  ASSERT_TRUE(r.passed) << r.detail;
  EXPECT_EQ(r.lambda, 1.0);
  EXPECT_EQ(r.lambdas_tried, 1);
  EXPECT_EQ(r.expected_source, "cylinder");
  EXPECT_EQ(r.observed.permutation, std::vector<int>{0});
  EXPECT_LT(r.max_abs_f, 1e-12);
  ASSERT_TRUE(r.conservative_lambda.has_value());
  EXPECT_TRUE(std::isinf(*r.conservative_lambda));
}

TEST(Verify, TransversalityOnTorusPoints) {
  const SemiholoPoly f = make(2, {{{2, 0, 0}, 1.0}, {{0, 1, 0}, -0.25}});
  const std::vector<NodalPoint> points = sample_nodal_set(f, 1.0, 64);
  const Transversality tr = transversality_check(f, points);
  EXPECT_TRUE(tr.passed);
  // |df/du| = 2|u| = sqrt|v|, with |v|^2 + |v|/4 = 1 on the sphere.
  const double v = (-0.25 + std::sqrt(1.0 / 16.0 + 4.0)) / 2.0;
  EXPECT_NEAR(tr.min_du, std::sqrt(v), 1e-9);
}

TEST(PhaseCritical, Counts) {
  FourierBraid torus;
  torus.components.push_back({TrigPoly::cosine(1), TrigPoly::sine(1), 2});
  EXPECT_EQ(phase_critical_scan(torus).count, 0);
  const Construction one = construct(BraidWord::trivial(1));
  EXPECT_EQ(phase_critical_scan(one.fourier).count, 0);
  const Construction pair = construct(parse_braid_word("1 -1"));
  EXPECT_EQ(phase_critical_scan(pair.fourier).count, beta(pair.word));
}

TEST(Conservative, SquareRootClosedForm) {
  const ConservativeBound b = conservative_lambda(make(2, {{{2, 0, 0}, 1.0}, {{0, 1, 0}, -1.0}}));
  const double delta = std::sqrt(3.0) - 1.0;
  const double eps = std::pow(1.0 - delta, 0.75);
  EXPECT_NEAR(b.delta_tilde, 1.0, 1e-9);
  EXPECT_LT(rel_err(b.delta, delta), 0.05);
  EXPECT_NEAR(b.rouche, 1.0, 1e-12);
  EXPECT_LT(rel_err(b.eps1, eps), 0.05);
  EXPECT_LT(rel_err(b.lambda, eps), 0.05);
  EXPECT_LE(b.lambda, b.eps2);
}

TEST(Conservative, RejectsCollision) {
  EXPECT_THROW(conservative_lambda(make(2, {{{2, 0, 0}, 1.0}})), Error);
}
