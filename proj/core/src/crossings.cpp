#include "braidfield/crossings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "braidfield/error.hpp"

namespace braidfield {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ScanResult {
  std::vector<Crossing> crossings;
  bool near_boundary = false;
  double boundary_t = 0.0;
};

double boundary_distance(double t, std::size_t length) {
  if (length == 0) return std::min(t, kTwoPi - t);
  const double width = kTwoPi / static_cast<double>(length);
  const double k = std::round(t / width);
  return std::abs(t - k * width);
}

int interval_of(double t, std::size_t length) {
  if (length == 0) return 1;
  const int k = static_cast<int>(std::floor(t * static_cast<double>(length) / kTwoPi)) + 1;
  return std::clamp(k, 1, static_cast<int>(length));
}

ScanResult scan(std::span<const TrigPoly> f, const Components& comps, std::size_t length,
                const CrossingOptions& options, double offset) {
  const int s = comps.strands();
  const std::size_t samples = static_cast<std::size_t>(options.grid_multiplier) * static_cast<std::size_t>(s);
  const double step = kTwoPi / static_cast<double>(samples);
  auto grid_t = [&](std::size_t i) { return i == 0 ? 0.0 : (i == samples ? kTwoPi : (static_cast<double>(i) + offset) * step); };

  // Curve values per strand id on the grid, endpoints included.
  std::vector<std::vector<double>> values(static_cast<std::size_t>(s), std::vector<double>(samples + 1));
  for (int id = 0; id < s; ++id) {
    const StrandLabel label = comps.label(id);
    const TrigPoly& poly = f[static_cast<std::size_t>(label.component)];
    const int len = comps.cycle_length(label.component);
    for (std::size_t i = 0; i <= samples; ++i) values[id][i] = curve_value(poly, len, label.index, grid_t(i));
  }

  ScanResult result;
  auto record = [&](double t0, StrandLabel a, StrandLabel b, bool transverse) {
    if (t0 >= kTwoPi) return;
    if (boundary_distance(t0, length) < options.boundary_tol) {
      result.near_boundary = true;
      result.boundary_t = t0;
    }
    result.crossings.push_back(
        Crossing{t0, std::min(a, b), std::max(a, b), transverse, interval_of(t0, length), transverse ? 1 : 2});
  };

  std::vector<double> diff(samples + 1);
  for (int p = 0; p < s; ++p) {
    for (int q = p + 1; q < s; ++q) {
      const StrandLabel lp = comps.label(p);
      const StrandLabel lq = comps.label(q);
      const TrigPoly& fp = f[static_cast<std::size_t>(lp.component)];
      const TrigPoly& fq = f[static_cast<std::size_t>(lq.component)];
      const int sp = comps.cycle_length(lp.component);
      const int sq = comps.cycle_length(lq.component);
      auto d = [&](double t) { return curve_value(fp, sp, lp.index, t) - curve_value(fq, sq, lq.index, t); };
      for (std::size_t i = 0; i <= samples; ++i) diff[i] = values[p][i] - values[q][i];

      for (std::size_t i = 0; i < samples; ++i) {
        if (diff[i] == 0.0) {
          record(grid_t(i), lp, lq, true);
          continue;
        }
        if (diff[i + 1] != 0.0 && std::signbit(diff[i]) != std::signbit(diff[i + 1])) {
          auto close = [&](double a, double b) { return std::abs(b - a) <= options.bisection_tol; };
          const auto [lo, hi] = boost::math::tools::bisect(d, grid_t(i), grid_t(i + 1), close);
          record(0.5 * (lo + hi), lp, lq, true);
        }
      }
      // Tangential touches: local minima of |d| without a sign change.
      for (std::size_t i = 1; i < samples; ++i) {
        const double a = diff[i - 1], m = diff[i], b = diff[i + 1];
        if (m == 0.0 || std::signbit(a) != std::signbit(m) || std::signbit(b) != std::signbit(m)) continue;
        if (std::abs(m) > std::abs(a) || std::abs(m) > std::abs(b)) continue;
        const double sign = std::signbit(m) ? -1.0 : 1.0;
        const auto [tmin, vmin] = boost::math::tools::brent_find_minima(
            [&](double t) { return sign * d(t); }, grid_t(i - 1), grid_t(i + 1), std::numeric_limits<double>::digits);
        if (std::abs(vmin) < options.tangent_tol) record(tmin, lp, lq, false);
      }
    }
  }
  std::sort(result.crossings.begin(), result.crossings.end(), [](const Crossing& x, const Crossing& y) {
    if (x.t0 != y.t0) return x.t0 < y.t0;
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
  return result;
}

}  // namespace

double curve_value(const TrigPoly& f, int cycle_length, int index, double t) {
  return f((t + kTwoPi * index) / cycle_length);
}

double Crossing::parameter(const StrandLabel& label, const Components& comps) const {
  return (t0 + kTwoPi * label.index) / comps.cycle_length(label.component);
}

std::vector<Crossing> find_crossings(std::span<const TrigPoly> f, const Components& comps, std::size_t length,
                                     const CrossingOptions& options) {
  if (f.size() != static_cast<std::size_t>(comps.count())) {
    throw Error(ErrorKind::InvalidArgument, "need one interpolant per component");
  }
  ScanResult first = scan(f, comps, length, options, 0.0);
  if (!first.near_boundary) return std::move(first.crossings);
  ScanResult retry = scan(f, comps, length, options, 0.5);
  if (!retry.near_boundary) return std::move(retry.crossings);
  throw Error(ErrorKind::BoundaryCrossing,
              "crossing at t = " + std::to_string(retry.boundary_t) + " lies on an interval boundary");
}

SignAssignment assign_signs(const BraidWord& b, std::span<const Crossing> crossings, const PositionChart& chart) {
  SignAssignment signs;
  signs.values.resize(b.length());
  for (std::size_t k = 0; k < b.length(); ++k) {
    const Overpass& letter = chart.letters.at(k);
    auto& w = signs.values[k];
    w[letter.over] = 1.0;
    w[letter.under] = -1.0;

    std::set<StrandLabel> others;
    for (const Crossing& c : crossings) {
      if (c.interval != static_cast<int>(k) + 1) continue;
      for (const StrandLabel& l : {c.first, c.second}) {
        if (!w.contains(l)) others.insert(l);
      }
    }
    int n = 0;
    for (const StrandLabel& l : others) {
      const double magnitude = 2.0 + n / 2;
      w[l] = n % 2 == 0 ? magnitude : -magnitude;
      ++n;
    }
  }
  return signs;
}

std::vector<std::vector<TrigNode>> g_data_points(std::span<const Crossing> crossings, const SignAssignment& signs,
                                                 const Components& comps) {
  std::vector<std::vector<TrigNode>> raw(static_cast<std::size_t>(comps.count()));
  for (const Crossing& c : crossings) {
    for (const StrandLabel& l : {c.first, c.second}) {
      raw[static_cast<std::size_t>(l.component)].push_back(
          {c.parameter(l, comps), signs.value(static_cast<std::size_t>(c.interval), l)});
    }
  }

  constexpr double kMergeTol = 1e-10;
  std::vector<std::vector<TrigNode>> out(raw.size());
  for (std::size_t comp = 0; comp < raw.size(); ++comp) {
    auto& pts = raw[comp];
    std::sort(pts.begin(), pts.end(), [](const TrigNode& a, const TrigNode& b) { return a.t < b.t; });
    auto& merged = out[comp];
    auto absorb = [&](const TrigNode& kept, const TrigNode& p) {
      if (kept.y != p.y) {
        throw Error(ErrorKind::DegenerateCrossing, "conflicting signs at t' = " + std::to_string(p.t) +
                                                       "; rerun with a perturbed grid");
      }
    };
    for (const TrigNode& p : pts) {
      if (!merged.empty() && p.t - merged.back().t < kMergeTol) {
        absorb(merged.back(), p);
        continue;
      }
      merged.push_back(p);
    }
    if (merged.size() > 1 && merged.front().t + kTwoPi - merged.back().t < kMergeTol) {
      absorb(merged.front(), merged.back());
      merged.pop_back();
    }
  }
  return out;
}

}  // namespace braidfield
