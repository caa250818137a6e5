#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace braidfield {

using cplx = std::complex<double>;

/// Value and derivative of sum c_k z^k (ascending coefficients).
std::pair<cplx, cplx> horner(std::span<const cplx> coeffs, cplx z) noexcept;

/// sum |c_k| max(1, |z|)^k, the yardstick for residuals.
double residual_scale(std::span<const cplx> coeffs, cplx z) noexcept;

struct RootOptions {
  int max_iterations = 500;
  double residual_tol = 1e-11;
};

/// All roots of a polynomial given by ascending coefficients, by Aberth-Ehrlich
/// iteration followed by Newton polishing. `seeds`, when it has one entry per
/// root, replaces the default starting circle. Throws RootSolverFailure when a
/// root's residual exceeds residual_tol * residual_scale.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs, std::span<const cplx> seeds = {},
                                   const RootOptions& options = {});

/// Coefficients of prod (z - r).
std::vector<cplx> poly_from_roots(std::span<const cplx> roots);
std::vector<cplx> derivative(std::span<const cplx> coeffs);

double min_separation(std::span<const cplx> points) noexcept;

/// Reorders `next` so that entry k is the point closest to previous[k]
/// (greedy over all pairs by distance).
std::vector<cplx> match_nearest(std::span<const cplx> previous, std::span<const cplx> next);

/// Roots over t, linked into continuous strands. `roots[i][k]` is strand k at
/// `t[i]`.
struct RootTrack {
  std::vector<double> t;
  std::vector<std::vector<cplx>> roots;

  std::size_t strands() const noexcept { return roots.empty() ? 0 : roots.front().size(); }
};

struct TrackOptions {
  std::size_t samples = 512;
  double collision_tol = 1e-9;
  int max_depth = 30;
};

using Slice = std::function<std::vector<cplx>(double)>;

/// Samples `slice` on a uniform grid over [t0, t1] (evaluated in parallel),
/// then links consecutive samples by nearest neighbour, inserting midpoints
/// where the motion is large compared with the root spacing or where a pair
/// swaps both real and imaginary order within one step. Throws
/// IncreaseSamples on root collisions or when refinement does not settle.
RootTrack track_roots(const Slice& slice, double t0, double t1, const TrackOptions& options = {});

}  // namespace braidfield
