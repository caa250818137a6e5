#include "braidfield/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <numbers>
#include <string>

#include "braidfield/error.hpp"
#include "braidfield/parallel.hpp"

namespace braidfield {

std::pair<cplx, cplx> horner(std::span<const cplx> coeffs, cplx z) noexcept {
  cplx p{}, dp{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

double residual_scale(std::span<const cplx> coeffs, cplx z) noexcept {
  const double r = std::max(1.0, std::abs(z));
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

/// One Aberth run; returns false when some residual stays above tolerance.
bool aberth(std::span<const cplx> coeffs, std::span<const cplx> seeds, const RootOptions& options,
            std::vector<cplx>& z, std::string& why) {
  std::size_t size = coeffs.size();
  while (size > 0 && coeffs[size - 1] == cplx{}) --size;
  z.clear();
  if (size <= 1) return true;
  const std::size_t n = size - 1;

  std::vector<cplx> monic(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(size));
  const cplx lead = monic.back();
  for (cplx& c : monic) c /= lead;

  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (monic[k] != cplx{}) radius = std::max(radius, std::pow(std::abs(monic[k]), 1.0 / static_cast<double>(n - k)));
  }
  if (radius == 0.0) {
    z.assign(n, cplx{});
    return true;
  }

  z.assign(n, cplx{});
  if (seeds.size() == n) {
    std::copy(seeds.begin(), seeds.end(), z.begin());
    // Coincident seeds stall the Aberth correction; nudge them apart.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (std::abs(z[i] - z[j]) < 1e-12 * radius) z[i] += std::polar(1e-8 * radius, 0.7 + static_cast<double>(i));
      }
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      z[k] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4);
    }
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [p, dp] = horner(monic, z[i]);
      if (std::abs(p) <= eps * residual_scale(monic, z[i])) continue;
      cplx repulsion{};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const cplx ratio = dp == cplx{} ? cplx(radius * 1e-3) : p / dp;
      const cplx step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[i] -= step;
      if (std::abs(step) > 4.0 * eps * std::max(1.0, std::abs(z[i]))) moved = true;
    }
    if (!moved) break;
  }

  for (cplx& root : z) {
    for (int polish = 0; polish < 3; ++polish) {
      const auto [p, dp] = horner(monic, root);
      if (dp == cplx{} || p == cplx{}) break;
      const cplx candidate = root - p / dp;
      if (std::abs(horner(monic, candidate).first) < std::abs(p)) root = candidate;
      else break;
    }
    const double residual = std::abs(horner(coeffs.first(size), root).first);
    const double bound = options.residual_tol * residual_scale(coeffs.first(size), root);
    if (!(residual <= bound)) {
      why = "residual " + sci(residual) + " exceeds " + sci(bound) + " after " +
            std::to_string(options.max_iterations) + " iterations";
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs, std::span<const cplx> seeds,
                                   const RootOptions& options) {
  std::vector<cplx> z;
  std::string why;
  if (aberth(coeffs, seeds, options, z, why)) return z;
  // Seeds sharing a symmetry with the coefficients (e.g. real seeds for a real
  // polynomial with complex roots) can trap the iteration; restart off-axis.
  if (!seeds.empty() && aberth(coeffs, {}, options, z, why)) return z;
  throw Error(ErrorKind::RootSolverFailure, why);
}

std::vector<cplx> poly_from_roots(std::span<const cplx> roots) {
  std::vector<cplx> c{cplx(1.0)};
  for (const cplx& r : roots) {
    c.push_back(cplx{});
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return c;
}

std::vector<cplx> derivative(std::span<const cplx> coeffs) {
  if (coeffs.size() <= 1) return {cplx{}};
  std::vector<cplx> d(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs[k];
  return d;
}

double min_separation(std::span<const cplx> points) noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::min(best, std::abs(points[i] - points[j]));
  }
  return best;
}

std::vector<cplx> match_nearest(std::span<const cplx> previous, std::span<const cplx> next) {
  const std::size_t n = previous.size();
  struct Pair {
    double distance;
    std::size_t from, to;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) pairs.push_back({std::abs(previous[i] - next[j]), i, j});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.distance < b.distance || (a.distance == b.distance && (a.from < b.from || (a.from == b.from && a.to < b.to)));
  });
  std::vector<cplx> out(n);
  std::vector<bool> used_from(n), used_to(n);
  for (const Pair& p : pairs) {
    if (used_from[p.from] || used_to[p.to]) continue;
    used_from[p.from] = used_to[p.to] = true;
    out[p.from] = next[p.to];
  }
  return out;
}

namespace {

bool swapped_both_ways(std::span<const cplx> a, std::span<const cplx> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const cplx before = a[i] - a[j];
      const cplx after = b[i] - b[j];
      if (before.real() * after.real() < 0.0 && before.imag() * after.imag() < 0.0) return true;
    }
  }
  return false;
}

class Linker {
 public:
  Linker(const Slice& slice, const TrackOptions& options, RootTrack& out) : slice_(slice), options_(options), out_(out) {}

  void check(std::span<const cplx> roots, double t) const {
    if (min_separation(roots) < options_.collision_tol) {
      throw Error(ErrorKind::IncreaseSamples, "roots collide near t = " + std::to_string(t));
    }
  }

  void link(double tb, const std::vector<cplx>& next, int depth) {
    check(next, tb);
    if (next.size() != out_.roots.back().size()) {
      throw Error(ErrorKind::IncreaseSamples, "root count changed near t = " + std::to_string(tb));
    }
    const std::vector<cplx>& prev = out_.roots.back();
    const double ta = out_.t.back();
    std::vector<cplx> matched = match_nearest(prev, next);
    double motion = 0.0;
    for (std::size_t k = 0; k < prev.size(); ++k) motion = std::max(motion, std::abs(matched[k] - prev[k]));
    const bool ambiguous = motion > min_separation(prev) / 3.0 || swapped_both_ways(prev, matched);
    if (!ambiguous) {
      out_.t.push_back(tb);
      out_.roots.push_back(std::move(matched));
      return;
    }
    if (depth >= options_.max_depth) {
      throw Error(ErrorKind::IncreaseSamples, "root linkage does not settle near t = " + std::to_string(tb));
    }
    const double tm = 0.5 * (ta + tb);
    link(tm, slice_(tm), depth + 1);
    link(tb, next, depth + 1);
  }

 private:
  const Slice& slice_;
  const TrackOptions& options_;
  RootTrack& out_;
};

}  // namespace

RootTrack track_roots(const Slice& slice, double t0, double t1, const TrackOptions& options) {
  const std::size_t n = std::max<std::size_t>(options.samples, 2);
  std::vector<std::vector<cplx>> base(n + 1);
  auto grid = [&](std::size_t i) { return t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n); };
  parallel_for(n + 1, [&](std::size_t i) { base[i] = slice(grid(i)); });

  RootTrack track;
  Linker linker(slice, options, track);
  linker.check(base[0], t0);
  track.t.push_back(t0);
  track.roots.push_back(base[0]);
  for (std::size_t i = 1; i <= n; ++i) linker.link(grid(i), base[i], 0);
  return track;
}

}  // namespace braidfield
