#include "braidfield/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/tools/roots.hpp>

#include "braidfield/error.hpp"
#include "braidfield/parallel.hpp"

namespace braidfield {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> rank_by_real_desc(std::span<const cplx> points) {
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return points[a].real() > points[b].real(); });
  std::vector<int> rank(points.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = static_cast<int>(pos);
  return rank;
}

cplx eval_poly(std::span<const cplx> c, cplx u) { return horner(c, u).first; }

/// Newton on f(., r e^{it}) from `u`, then the radial function and its slope.
struct RadialValue {
  cplx u;
  double phi = 0.0;
  double slope = 0.0;
};

RadialValue radial_value(const SemiholoPoly& f, double t, double r, cplx u) {
  const std::vector<cplx> c = f.u_polynomial(std::polar(r, t));
  for (int it = 0; it < 60; ++it) {
    const auto [p, dp] = horner(c, u);
    if (dp == cplx{}) break;
    const cplx step = p / dp;
    u -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(u))) break;
  }
  const cplx fu = horner(c, u).second;
  const cplx fr = eval_poly(f.u_polynomial_dr(r, t), u);
  const cplx ur = fu == cplx{} ? cplx(kInf) : -fr / fu;
  return {u, std::norm(u) + r * r - 1.0, 2.0 * (std::conj(u) * ur).real() + 2.0 * r};
}

/// Roots at r_to, ordered to continue `current` (given at r_from).
std::vector<cplx> continue_roots(const SemiholoPoly& f, double t, double r_from, double r_to,
                                 const std::vector<cplx>& current, double collision_tol, int depth = 0) {
  std::vector<cplx> next = match_nearest(current, polynomial_roots(f.u_polynomial(std::polar(r_to, t)), current));
  if (min_separation(next) < collision_tol) {
    throw Error(ErrorKind::VerificationFailure, "roots collide at r = " + std::to_string(r_to));
  }
  double motion = 0.0;
  for (std::size_t k = 0; k < next.size(); ++k) motion = std::max(motion, std::abs(next[k] - current[k]));
  if (motion > min_separation(current) / 3.0 && depth < 20) {
    const double mid = 0.5 * (r_from + r_to);
    const std::vector<cplx> half = continue_roots(f, t, r_from, mid, current, collision_tol, depth + 1);
    return continue_roots(f, t, mid, r_to, half, collision_tol, depth + 1);
  }
  return next;
}

}  // namespace

std::vector<cplx> roots_at(const SemiholoPoly& f, cplx v, std::span<const cplx> seeds) {
  return polynomial_roots(f.u_polynomial(v), seeds);
}

RootTrack cylinder_track(const SemiholoPoly& f, const TrackOptions& options) {
  return track_roots([&f](double t) { return roots_at(f, std::polar(1.0, t)); }, 0.0, kTwoPi, options);
}

BraidSignature reconstruct_braid(const RootTrack& track) {
  BraidSignature sig;
  const std::size_t n = track.strands();
  if (n == 0) return sig;
  const std::vector<int> id = rank_by_real_desc(track.roots.front());
  const std::vector<int> end = rank_by_real_desc(track.roots.back());
  sig.permutation.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) sig.permutation[static_cast<std::size_t>(id[k])] = end[k];

  for (std::size_t i = 0; i + 1 < track.roots.size(); ++i) {
    const auto& a = track.roots[i];
    const auto& b = track.roots[i + 1];
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx before = a[p] - a[q];
        const cplx after = b[p] - b[q];
        if (std::signbit(before.real()) == std::signbit(after.real())) continue;
        const double frac = before.real() / (before.real() - after.real());
        const double im = (1.0 - frac) * before.imag() + frac * after.imag();
        // p had the larger real part before the crossing iff before.real() > 0.
        const bool p_was_ahead = !std::signbit(before.real());
        const bool p_over = im > 0.0;
        const int sign = p_was_ahead == p_over ? 1 : -1;
        const int x = id[p], y = id[q];
        sig.pair_counts[{std::min(x, y), std::max(x, y)}] += sign;
        sig.exponent_sum += sign;
      }
    }
  }
  std::erase_if(sig.pair_counts, [](const auto& kv) { return kv.second == 0; });
  return sig;
}

BraidSignature reconstruct_braid(const SemiholoPoly& f, std::size_t samples) {
  TrackOptions options;
  options.samples = samples;
  return reconstruct_braid(cylinder_track(f, options));
}

RadialSlice radial_slice(const SemiholoPoly& f, double t, const RadialOptions& options) {
  RadialSlice slice;
  slice.min_slope = kInf;
  auto fail = [&](std::string why) {
    slice.unique = false;
    slice.failure = std::move(why) + " at t = " + std::to_string(t);
    return slice;
  };

  std::vector<cplx> current;
  try {
    current = roots_at(f, std::polar(1.0, t));
  } catch (const Error& e) {
    return fail(e.what());
  }
  const std::size_t n = current.size();
  if (min_separation(current) < options.collision_tol) return fail("roots collide at r = 1");

  std::vector<bool> crossed(n, false);
  slice.points.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (current[j] == cplx{}) {
      const RadialValue rv = radial_value(f, t, 1.0, current[j]);
      crossed[j] = true;
      slice.points[j] = {rv.u, std::polar(1.0, t)};
      slice.min_slope = std::min(slice.min_slope, rv.slope);
    }
  }

  const double step = 1.0 / options.steps;
  double r = 1.0;
  try {
    while (std::find(crossed.begin(), crossed.end(), false) != crossed.end()) {
      if (r <= 0.0) return fail("a root curve never meets the sphere");
      const double r_next = std::max(r - step, 0.0);
      std::vector<cplx> next = continue_roots(f, t, r, r_next, current, options.collision_tol);
      for (std::size_t j = 0; j < n; ++j) {
        const double phi_next = std::norm(next[j]) + r_next * r_next - 1.0;
        if (crossed[j]) {
          if (phi_next >= 0.0) return fail("a root curve meets the sphere twice");
          continue;
        }
        if (phi_next >= 0.0) continue;
        const double phi_hi = std::norm(current[j]) + r * r - 1.0;
        const double guess_r = r_next + (r - r_next) * (-phi_next) / (phi_hi - phi_next);
        cplx warm = current[j] + (next[j] - current[j]) * ((r - guess_r) / (r - r_next));
        auto fn = [&](double x) {
          const RadialValue rv = radial_value(f, t, x, warm);
          warm = rv.u;
          return std::make_pair(rv.phi, rv.slope);
        };
        std::uintmax_t iterations = 100;
        const double r_star = boost::math::tools::newton_raphson_iterate(fn, guess_r, r_next, r, 50, iterations);
        const RadialValue rv = radial_value(f, t, r_star, warm);
        // The Newton-refined root must still belong to strand j.
        const std::vector<cplx> all = roots_at(f, std::polar(r_star, t), next);
        const cplx expected = match_nearest(current, all)[j];
        if (std::abs(expected - rv.u) > 1e-8 * std::max(1.0, std::abs(rv.u))) return fail("radial refinement jumped strands");
        if (!(rv.slope > 0.0)) return fail("radial function not increasing at its zero");
        slice.min_slope = std::min(slice.min_slope, rv.slope);
        slice.points[j] = {rv.u, std::polar(r_star, t)};
        crossed[j] = true;
      }
      current = std::move(next);
      r = r_next;
    }
    while (r > 0.0) {
      const double r_next = std::max(r - step, 0.0);
      current = roots_at(f, std::polar(r_next, t), current);
      for (const cplx& u : current) {
        if (std::norm(u) + r_next * r_next - 1.0 >= 0.0) return fail("a root curve re-enters the ball");
      }
      r = r_next;
    }
  } catch (const Error& e) {
    return fail(e.what());
  }
  return slice;
}

std::vector<NodalPoint> sample_nodal_set(const SemiholoPoly& f, double lambda, std::size_t n) {
  const SemiholoPoly scaled = rescale(f, lambda);
  std::vector<RadialSlice> slices(n);
  parallel_for(n, [&](std::size_t i) { slices[i] = radial_slice(scaled, kTwoPi * static_cast<double>(i) / static_cast<double>(n)); });
  std::vector<NodalPoint> out;
  for (const RadialSlice& s : slices) {
    if (!s.unique) throw Error(ErrorKind::VerificationFailure, s.failure);
    out.insert(out.end(), s.points.begin(), s.points.end());
  }
  return out;
}

RootTrack sphere_track(const SemiholoPoly& f_at_lambda, const TrackOptions& options) {
  auto slice = [&f_at_lambda](double t) {
    const RadialSlice s = radial_slice(f_at_lambda, t);
    if (!s.unique) throw Error(ErrorKind::VerificationFailure, s.failure);
    std::vector<cplx> u;
    for (const NodalPoint& p : s.points) u.push_back(p.u);
    return u;
  };
  return track_roots(slice, 0.0, kTwoPi, options);
}

Transversality transversality_check(const SemiholoPoly& f, std::span<const NodalPoint> points) {
  Transversality out;
  out.threshold = 1e-8 * f.scale();
  out.min_du = kInf;
  out.min_sigma = kInf;
  constexpr double h = 1e-6;
  for (const NodalPoint& p : points) {
    const std::vector<cplx> c = f.u_polynomial(p.v);
    out.min_du = std::min(out.min_du, std::abs(horner(c, p.u).second));

    const double a = p.u.real(), b = p.u.imag(), cc = p.v.real(), d = p.v.imag();
    const std::array<std::array<double, 4>, 3> basis{{{-b, a, -d, cc}, {-cc, d, a, -b}, {-d, -cc, b, a}}};
    std::array<cplx, 3> grad{};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& e = basis[k];
      const cplx up = f(cplx(a + h * e[0], b + h * e[1]), cplx(cc + h * e[2], d + h * e[3]));
      const cplx dn = f(cplx(a - h * e[0], b - h * e[1]), cplx(cc - h * e[2], d - h * e[3]));
      grad[k] = (up - dn) / (2.0 * h);
    }
    // J J^T for J = [Re grad; Im grad].
    double m11 = 0.0, m22 = 0.0, m12 = 0.0;
    for (const cplx& g : grad) {
      m11 += g.real() * g.real();
      m22 += g.imag() * g.imag();
      m12 += g.real() * g.imag();
    }
    const double mean = 0.5 * (m11 + m22);
    const double gap = std::sqrt(0.25 * (m11 - m22) * (m11 - m22) + m12 * m12);
    out.min_sigma = std::min(out.min_sigma, std::sqrt(std::max(mean - gap, 0.0)));
  }
  if (points.empty()) out.min_du = out.min_sigma = 0.0;
  out.margin = std::min(out.min_du, out.min_sigma);
  out.passed = out.margin > out.threshold;
  return out;
}

ConservativeBound conservative_lambda(const SemiholoPoly& f, std::size_t samples, int radial_levels) {
  ConservativeBound bound;
  const SemiholoPoly f1 = rescale(f, 1.0);
  const int s = f1.u_degree();
  if (s <= 1) {
    bound.lambda = kInf;
    bound.eps1 = bound.eps2 = kInf;
    bound.delta = 1.0;
    bound.rouche = 1.0;
    return bound;
  }
  const std::size_t levels = static_cast<std::size_t>(radial_levels);
  // Per t-sample and radial level: max |d Re u/dr|, max |d Im u/dr|, sum_{j<s} |c_j|.
  std::vector<std::vector<double>> d1(samples, std::vector<double>(levels, kInf));
  std::vector<std::vector<double>> d2 = d1, coeff_sum = d1;
  std::vector<double> separation(samples, kInf);

  parallel_for(samples, [&](std::size_t i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
    std::vector<cplx> roots;
    for (std::size_t lv = 0; lv < levels; ++lv) {
      const double r = 1.0 - static_cast<double>(lv) / static_cast<double>(levels);
      const std::vector<cplx> c = f1.u_polynomial(std::polar(r, t));
      double sum = 0.0;
      for (int j = 0; j < s; ++j) sum += std::abs(c[static_cast<std::size_t>(j)]);
      coeff_sum[i][lv] = sum;
      try {
        roots = polynomial_roots(c, roots);
      } catch (const Error&) {
        break;
      }
      const double sep = min_separation(roots);
      if (lv == 0) separation[i] = sep;
      if (sep < 1e-9) break;
      const std::vector<cplx> cr = f1.u_polynomial_dr(r, t);
      double m1 = 0.0, m2 = 0.0;
      for (const cplx& u : roots) {
        const cplx ur = -eval_poly(cr, u) / horner(c, u).second;
        m1 = std::max(m1, std::abs(ur.real()));
        m2 = std::max(m2, std::abs(ur.imag()));
      }
      d1[i][lv] = m1;
      d2[i][lv] = m2;
    }
  });

  const double sep = *std::min_element(separation.begin(), separation.end());
  if (!(sep >= 1e-9)) throw Error(ErrorKind::DeltaSearchFailure, "roots collide on the unit circle");
  bound.delta_tilde = 0.5 * sep;

  // Running maxima over r in [1 - delta, 1].
  std::vector<double> D1(levels), D2(levels), Usum(levels);
  for (std::size_t lv = 0; lv < levels; ++lv) {
    double m1 = 0.0, m2 = 0.0, mu = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      m1 = std::max(m1, d1[i][lv]);
      m2 = std::max(m2, d2[i][lv]);
      mu = std::max(mu, coeff_sum[i][lv]);
    }
    D1[lv] = lv == 0 ? m1 : std::max(D1[lv - 1], m1);
    D2[lv] = lv == 0 ? m2 : std::max(D2[lv - 1], m2);
    Usum[lv] = lv == 0 ? mu : std::max(Usum[lv - 1], mu);
  }
  auto admissible = [&](std::size_t lv) { return bound.delta_tilde / std::hypot(D1[lv], D2[lv]); };

  // Largest level whose delta satisfies delta <= delta~ / |D(delta)|, then
  // push into the next level using that level's (larger) derivative bound.
  std::size_t lv = 0;
  while (lv + 1 < levels && static_cast<double>(lv + 1) / static_cast<double>(levels) <= admissible(lv + 1)) ++lv;
  const std::size_t upper = std::min(lv + 1, levels - 1);
  double delta = std::min(static_cast<double>(upper) / static_cast<double>(levels), admissible(upper));
  delta = std::max(delta, static_cast<double>(lv) / static_cast<double>(levels));
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorKind::DeltaSearchFailure, "no admissible delta");
  const std::size_t used = std::min<std::size_t>(static_cast<std::size_t>(std::ceil(delta * static_cast<double>(levels))), levels - 1);

  bound.delta = delta;
  bound.d1 = D1[used];
  bound.d2 = D2[used];
  if (!std::isfinite(bound.d1) || !std::isfinite(bound.d2)) {
    throw Error(ErrorKind::DeltaSearchFailure, "roots collide inside [1 - delta, 1]");
  }
  bound.rouche = std::max(1.0, Usum[used]);
  bound.eps1 = std::sqrt((1.0 - delta) / (bound.rouche * (bound.d1 + bound.d2)));
  bound.eps2 = delta / bound.rouche;
  bound.lambda = std::min(bound.eps1, bound.eps2);
  return bound;
}

PhaseCriticalScan phase_critical_scan(const FourierBraid& fb, std::size_t grid) {
  PhaseCriticalScan scan;
  if (fb.strands() <= 1) return scan;

  auto critical_points = [&fb](double t) {
    const std::vector<cplx> g = poly_from_roots(fb.roots(t));
    return polynomial_roots(derivative(g));
  };
  auto phase_rate = [&fb](cplx u, double t) {
    cplx acc{};
    for (std::size_t c = 0; c < fb.components.size(); ++c) {
      for (int j = 0; j < fb.components[c].strands; ++j) {
        acc -= fb.root_derivative(static_cast<int>(c), j, t) / (u - fb.root(static_cast<int>(c), j, t));
      }
    }
    return acc.imag();
  };

  TrackOptions options;
  options.samples = grid;
  RootTrack track;
  try {
    track = track_roots(critical_points, 0.0, kTwoPi, options);
  } catch (const Error&) {
    scan.lower_bound = true;
    return scan;
  }

  for (std::size_t i = 0; i + 1 < track.t.size(); ++i) {
    for (std::size_t k = 0; k < track.strands(); ++k) {
      double lo = track.t[i], hi = track.t[i + 1];
      cplx c_lo = track.roots[i][k], c_hi = track.roots[i + 1][k];
      double h_lo = phase_rate(c_lo, lo);
      const double h_hi = phase_rate(c_hi, hi);
      if (std::signbit(h_lo) == std::signbit(h_hi)) continue;
      const double span = 1.0 + std::abs(h_lo) + std::abs(h_hi);
      try {
        double h_mid = h_lo;
        cplx c_mid = c_lo;
        double t_mid = lo;
        for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
          t_mid = 0.5 * (lo + hi);
          const std::vector<cplx> cands = critical_points(t_mid);
          const cplx guess = 0.5 * (c_lo + c_hi);
          c_mid = *std::min_element(cands.begin(), cands.end(),
                                    [&](cplx x, cplx y) { return std::abs(x - guess) < std::abs(y - guess); });
          h_mid = phase_rate(c_mid, t_mid);
          if (std::signbit(h_mid) == std::signbit(h_lo)) {
            lo = t_mid;
            c_lo = c_mid;
            h_lo = h_mid;
          } else {
            hi = t_mid;
            c_hi = c_mid;
          }
        }
        // A sign change through a pole of the phase rate is not a zero.
        if (std::abs(h_mid) > 1e-6 * span) continue;
        const bool seen = std::any_of(scan.points.begin(), scan.points.end(), [&](const PhaseCriticalPoint& p) {
          return std::abs(p.t - t_mid) < 1e-6 && std::abs(p.u - c_mid) < 1e-6;
        });
        if (!seen) scan.points.push_back({t_mid, c_mid});
      } catch (const Error&) {
        scan.lower_bound = true;
      }
    }
  }
  scan.count = static_cast<int>(scan.points.size());
  return scan;
}

VerificationReport find_lambda(const SemiholoPoly& f, const VerifyOptions& options, const FourierBraid* fb) {
  VerificationReport report;
  const SemiholoPoly f1 = rescale(f, 1.0);
  TrackOptions track_options;
  track_options.samples = options.samples;

  RootTrack cylinder;
  try {
    cylinder = cylinder_track(f1, track_options);
  } catch (const Error& e) {
    report.failed_stage = "transversality";
    report.detail = std::string("f(., e^{it}) has a repeated root: ") + e.what();
    return report;
  }
  for (const auto& row : cylinder.roots) {
    for (const cplx& u : row) report.max_abs_u = std::max(report.max_abs_u, std::abs(u));
  }
  if (f.braid) {
    report.expected = signature(*f.braid);
    report.expected_source = "braid";
  } else {
    report.expected = reconstruct_braid(cylinder);
    report.expected_source = "cylinder";
  }

  std::vector<double> candidates;
  if (options.fixed_lambda) {
    candidates.push_back(*options.fixed_lambda);
  } else {
    for (double lam = 1.0; lam >= options.lambda_floor; lam *= 0.5) candidates.push_back(lam);
  }

  std::vector<RadialSlice> slices(options.samples);
  SemiholoPoly accepted;
  bool found = false;
  for (double lam : candidates) {
    ++report.lambdas_tried;
    report.lambda = lam;
    if (!(lam * report.max_abs_u < 1.0)) {
      report.failed_stage = "disc";
      report.detail = "some root at r = 1 lies outside the unit disc";
      continue;
    }
    const SemiholoPoly scaled = rescale(f1, lam);
    parallel_for(options.samples, [&](std::size_t i) {
      slices[i] = radial_slice(scaled, kTwoPi * static_cast<double>(i) / static_cast<double>(options.samples), options.radial);
    });
    const auto bad = std::find_if(slices.begin(), slices.end(), [](const RadialSlice& s) { return !s.unique; });
    if (bad != slices.end()) {
      report.failed_stage = "radial";
      report.detail = bad->failure;
      report.unique_intersection = false;
      continue;
    }
    report.unique_intersection = true;
    report.min_radial_slope = kInf;
    for (const RadialSlice& s : slices) report.min_radial_slope = std::min(report.min_radial_slope, s.min_slope);

    try {
      report.observed = reconstruct_braid(sphere_track(scaled, track_options));
    } catch (const Error& e) {
      report.failed_stage = "reconstruction";
      report.detail = e.what();
      continue;
    }
    report.permutation_match = report.observed.permutation == report.expected.permutation;
    report.exponent_sum_match = report.observed.exponent_sum == report.expected.exponent_sum;
    report.pair_counts_match = report.observed.pair_counts == report.expected.pair_counts;
    if (!(report.permutation_match && report.exponent_sum_match && report.pair_counts_match)) {
      report.failed_stage = "reconstruction";
      report.detail = "nodal braid differs from the expected braid";
      continue;
    }
    accepted = scaled;
    found = true;
    break;
  }
  if (!found) {
    if (report.failed_stage.empty()) report.failed_stage = "lambda";
    report.detail = "no lambda >= " + std::to_string(options.lambda_floor) + " passes: " + report.detail;
    return report;
  }
  report.failed_stage.clear();
  report.detail.clear();

  std::vector<NodalPoint> nodal;
  for (const RadialSlice& s : slices) nodal.insert(nodal.end(), s.points.begin(), s.points.end());
  for (const NodalPoint& p : nodal) report.max_abs_f = std::max(report.max_abs_f, std::abs(accepted(p.u, p.v)));
  report.transversality = transversality_check(accepted, nodal);

  if (fb) {
    const PhaseCriticalScan scan = phase_critical_scan(*fb, options.samples);
    report.phase_critical = scan.count;
    report.phase_critical_lower_bound = scan.lower_bound;
  }
  if (options.conservative) {
    try {
      report.conservative_lambda = conservative_lambda(f1).lambda;
    } catch (const Error&) {
      report.conservative_lambda.reset();
    }
  }

  if (!report.transversality.passed) {
    report.failed_stage = "transversality";
    report.detail = "margin " + std::to_string(report.transversality.margin) + " below threshold";
  } else if (!(report.max_abs_f < 1e-9 * accepted.scale())) {
    report.failed_stage = "nodal";
    report.detail = "|f| on the nodal set exceeds tolerance";
  }
  report.passed = report.failed_stage.empty();
  return report;
}

}  // namespace braidfield
