#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "braidfield/braid.hpp"
#include "braidfield/roots.hpp"
#include "braidfield/semiholo.hpp"

namespace braidfield {

/// Roots in u of f(u, v, conj(v)).
std::vector<cplx> roots_at(const SemiholoPoly& f, cplx v, std::span<const cplx> seeds = {});

/// Roots of f(., e^{it}) followed over t in [0, 2 pi].
RootTrack cylinder_track(const SemiholoPoly& f, const TrackOptions& options = {});

/// Reads permutation, exponent sum and per-pair signed crossings off a track.
/// Strands are numbered by decreasing Re(u) at the first sample.
BraidSignature reconstruct_braid(const RootTrack& track);
BraidSignature reconstruct_braid(const SemiholoPoly& f, std::size_t samples);

/// A point (u, v) on the unit three-sphere.
struct NodalPoint {
  cplx u;
  cplx v;
};

/// One t-slice of the nodal set: where each root curve u_j(r, t), r from 1
/// down to 0, meets the sphere.
struct RadialSlice {
  std::vector<NodalPoint> points;
  bool unique = true;
  double min_slope = 0.0;    // smallest d/dr (|u|^2 + r^2 - 1) at the crossings
  std::string failure;
};

struct RadialOptions {
  int steps = 64;
  double collision_tol = 1e-9;
};

/// `f` must already be at the working lambda.
RadialSlice radial_slice(const SemiholoPoly& f, double t, const RadialOptions& options = {});

/// n uniform t-samples times s points. Throws VerificationFailure when a slice
/// has no unique crossing.
std::vector<NodalPoint> sample_nodal_set(const SemiholoPoly& f, double lambda, std::size_t n);

/// Nodal u-values followed over t.
RootTrack sphere_track(const SemiholoPoly& f_at_lambda, const TrackOptions& options = {});

struct Transversality {
  double min_du = 0.0;
  double min_sigma = 0.0;
  double margin = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// min over samples of |df/du| and of the smallest singular value of the real
/// 2x3 differential of f restricted to the sphere (central differences).
Transversality transversality_check(const SemiholoPoly& f_at_lambda, std::span<const NodalPoint> points);

struct ConservativeBound {
  double delta = 0.0;
  double delta_tilde = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double rouche = 0.0;  // U
  double eps1 = 0.0;
  double eps2 = 0.0;
  double lambda = 0.0;  // min(eps1, eps2); +inf for a single strand
};

ConservativeBound conservative_lambda(const SemiholoPoly& f, std::size_t samples = 256, int radial_levels = 400);

struct PhaseCriticalPoint {
  double t = 0.0;
  cplx u;
};

struct PhaseCriticalScan {
  int count = 0;
  bool lower_bound = false;
  std::vector<PhaseCriticalPoint> points;
};

PhaseCriticalScan phase_critical_scan(const FourierBraid& fb, std::size_t grid = 512);

struct VerifyOptions {
  std::size_t samples = 512;
  double lambda_floor = 1e-8;
  std::optional<double> fixed_lambda;
  RadialOptions radial;
  bool conservative = true;
};

struct VerificationReport {
  double lambda = 0.0;
  bool passed = false;
  std::string failed_stage;  // empty on success
  std::string detail;
  int lambdas_tried = 0;

  std::string expected_source;  // "braid" or "cylinder"
  BraidSignature expected;
  BraidSignature observed;
  bool permutation_match = false;
  bool exponent_sum_match = false;
  bool pair_counts_match = false;

  bool unique_intersection = false;
  double min_radial_slope = 0.0;
  double max_abs_u = 0.0;  // over roots of f at its own lambda, r = 1
  Transversality transversality;
  double max_abs_f = 0.0;
  std::optional<int> phase_critical;
  bool phase_critical_lower_bound = false;
  std::optional<double> conservative_lambda;
};

/// Halves lambda from 1 until the disc, radial-uniqueness and reconstruction
/// gates pass, then measures transversality on the nodal set. `fb`, when
/// given, enables the phase-critical scan.
VerificationReport find_lambda(const SemiholoPoly& f, const VerifyOptions& options = {},
                               const FourierBraid* fb = nullptr);

}  // namespace braidfield
