// One PASS/FAIL line per acceptance criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "braidfield/crossings.hpp"
#include "braidfield/error.hpp"
#include "braidfield/pipeline.hpp"
#include "braidfield/project.hpp"
#include "braidfield/verify.hpp"
#include "support.hpp"

using namespace braidfield;
using namespace testing_support;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > limit_seconds) {
    o.ok = false;
    o.detail << " [over time limit " << limit_seconds << " s]";
  }
  if (!o.ok) ++failures;
  std::printf("%s %2d %s (%.3f s)%s\n", o.ok ? "PASS" : "FAIL", id, name, seconds, o.detail.str().c_str());
  std::fflush(stdout);
}

SemiholoPoly make(int strands, std::initializer_list<std::pair<Monomial, cplx>> terms, double lambda) {
  SemiholoPoly::Terms t;
  for (const auto& [m, c] : terms) t[m] = c;
  return SemiholoPoly(strands, std::move(t), lambda);
}

bool same_terms(const SemiholoPoly& a, const SemiholoPoly& b, double tol) {
  if (a.terms().size() != b.terms().size()) return false;
  for (const auto& [m, c] : a.terms()) {
    if (std::abs(c - b.coeff(m)) > tol) return false;
  }
  return true;
}

/// Follows the roots of f(., r e^{it}) from r = 1 to r = 0 on a fixed grid
/// with companion eigenvalues and counts, per strand, the sign changes of
/// |u|^2 + r^2 - 1 and the sign of its slope there.
bool radial_oracle(const SemiholoPoly& scaled, double t, int levels) {
  const int s = scaled.u_degree();
  std::vector<cplx> prev = companion_roots(scaled.u_polynomial(std::polar(1.0, t)));
  std::vector<double> phi(static_cast<std::size_t>(s));
  std::vector<int> changes(static_cast<std::size_t>(s), 0);
  for (int j = 0; j < s; ++j) phi[j] = std::norm(prev[j]);
  for (int j = 0; j < s; ++j) {
    if (!(phi[j] < 1.0)) return false;
  }
  for (int lv = 1; lv <= levels; ++lv) {
    const double r = 1.0 - static_cast<double>(lv) / levels;
    std::vector<cplx> next = companion_roots(scaled.u_polynomial(std::polar(r, t)));
    std::vector<cplx> linked(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
      auto it = std::min_element(next.begin(), next.end(), [&](cplx a, cplx b) { return std::abs(a - prev[j]) < std::abs(b - prev[j]); });
      linked[j] = *it;
      next.erase(it);
    }
    for (int j = 0; j < s; ++j) {
      const double value = std::norm(linked[j]) + r * r - 1.0;
      const double before = phi[j];
      if ((value < 0.0) != (before < 0.0)) {
        ++changes[j];
        // Moving inward (r decreasing) across the zero, the value drops.
        if (!(value < before)) return false;
      }
      phi[j] = value;
    }
    prev = std::move(linked);
  }
  for (int j = 0; j < s; ++j) {
    if (changes[j] != 1) return false;
  }
  return true;
}

}  // namespace

int main() {
  std::printf("G coefficient mapping (reference label -> interpolant term):\n");
  for (const GCoeff& c : kFiveTwoG) {
    if (c.constant) {
      std::printf("  %-7s -> 2 c_0\n", c.label);
    } else {
      std::printf("  %-7s -> %s %d\n", c.label, c.cosine ? "cos" : "sin", c.k);
    }
  }

  criterion(1, "5_2 F interpolation matches reference coefficients to 1e-3", 1.0, [](Outcome& o) {
    const TrigPoly f = dft_interpolate(kFiveTwoX);
    double worst = 0.0;
    for (int k = 0; k <= f.degree(); ++k) {
      double want_cos = 0.0, want_sin = 0.0;
      for (const RealCoeff& c : kFiveTwoF) {
        if (c.k == k) (c.cosine ? want_cos : want_sin) = c.value;
      }
      worst = std::max({worst, std::abs(f.cos_coeff(k) - want_cos), std::abs(f.sin_coeff(k) - want_sin)});
    }
    o.detail << " max abs error " << worst;
    o.require(worst < 1e-3, "coefficient mismatch");
  });

  criterion(2, "5_2 G interpolation matches 11 reference coefficients to rel 1e-3", 1.0, [](Outcome& o) {
    const TrigPoly g = lagrange_trig_interpolate(five_two_g_points());
    double worst = 0.0;
    for (const GCoeff& c : kFiveTwoG) worst = std::max(worst, rel_err(g_coefficient(g, c), c.value));
    o.detail << " max rel error " << worst;
    o.require(worst < 1e-3, "coefficient mismatch");
  });

  criterion(3, "5_2 first red-green crossing at t = 0.523599", 5.0, [](Outcome& o) {
    const Construction c = construct(parse_braid_word(kFiveTwo));
    double first = std::numeric_limits<double>::infinity();
    for (const Crossing& x : c.crossings) {
      if (x.first.component == 0 && x.second.component == 0 && x.first.index == 0 && x.second.index == 1) {
        first = std::min(first, x.parameter(x.first, c.comps));
      }
    }
    o.detail << " t = " << first;
    o.require(std::abs(first - 0.523599) < 1e-4, "crossing parameter");
  });

  criterion(4, "expansion cancels fractional exponents and matches the product", 30.0, [](Outcome& o) {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> ts(0.0, kTwoPi);
    double worst_frac = 0.0, worst_value = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      FourierBraid fb;
      const int comps = 1 + static_cast<int>(rng() % 2);
      for (int k = 0; k < comps; ++k) {
        fb.components.push_back({random_trig(rng, static_cast<int>(rng() % 5)), random_trig(rng, static_cast<int>(rng() % 5)),
                                 1 + static_cast<int>(rng() % 5)});
      }
      fb.lambda = 0.5;
      for (const ComponentCurve& curve : fb.components) {
        const FractionalLaurent p = expand_component(curve, fb.lambda, fb.lambda);
        const double scale = p.max_magnitude();
        for (int k = 0; k <= p.u_degree(); ++k) {
          for (std::size_t e = 0; e < p.coeffs[k].size(); ++e) {
            if ((p.min_exponent + static_cast<int>(e)) % curve.strands != 0) {
              worst_frac = std::max(worst_frac, std::abs(p.coeffs[k][e]) / scale);
            }
          }
        }
      }
      const SemiholoPoly f = assemble(fb);
      for (int k = 0; k < 50; ++k) {
        const cplx u(g(rng), g(rng));
        const double t = ts(rng);
        const cplx want = direct_product(fb, u, t);
        worst_value = std::max(worst_value, std::abs(f(u, std::polar(1.0, t)) - want) / std::max(1.0, std::abs(want)));
      }
    }
    o.detail << " fractional " << worst_frac << ", product " << worst_value;
    o.require(worst_frac < 1e-10, "fractional coefficient");
    o.require(worst_value < 1e-9, "product mismatch");
  });

  criterion(5, "torus and Hopf closed forms", 1.0, [](Outcome& o) {
    const double lambda = 0.5;
    FourierBraid torus;
    torus.components.push_back({TrigPoly::cosine(1), TrigPoly::sine(1), 2});
    torus.lambda = lambda;
    FourierBraid hopf;
    hopf.components.push_back({TrigPoly::cosine(1), TrigPoly::sine(1), 1});
    hopf.components.push_back({TrigPoly::cosine(1, -1.0), TrigPoly::sine(1, -1.0), 1});
    hopf.lambda = lambda;
    o.require(same_terms(assemble(torus), make(2, {{{2, 0, 0}, 1.0}, {{0, 1, 0}, -lambda * lambda}}, lambda), 1e-15),
              "sigma1 is not u^2 - lambda^2 v");
    o.require(same_terms(assemble(hopf), make(2, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, -lambda * lambda}}, lambda), 1e-15),
              "sigma1^2 is not u^2 - lambda^2 v^2");
  });

  std::vector<Construction> built;
  std::vector<VerificationReport> reports;
  criterion(6, "corpus braid reconstructed from the nodal set", 120.0, [&](Outcome& o) {
    for (const auto& w : kCorpus) {
      built.push_back(construct(parse_braid_word(w)));
      const Construction& c = built.back();
      reports.push_back(find_lambda(c.poly, {}, &c.fourier));
      const VerificationReport& r = reports.back();
      o.detail << " \"" << w << "\" lambda " << r.lambda << ";";
      o.require(r.passed, w + " " + r.failed_stage);
      const BraidSignature want = signature(c.target());
      o.require(r.observed.permutation == want.permutation, w + " permutation");
      o.require(r.observed.exponent_sum == want.exponent_sum, w + " exponent sum");
      o.require(r.observed.pair_counts == want.pair_counts, w + " pair counts");
    }
  });

  criterion(7, "harmonic, transverse, degree within bounds", 120.0, [&](Outcome& o) {
    o.require(built.size() == kCorpus.size(), "corpus not built");
    for (std::size_t i = 0; i < built.size(); ++i) {
      const Construction& c = built[i];
      const VerificationReport& r = reports[i];
      const std::string& w = kCorpus[i];
      o.require(is_harmonic(c.poly), w + " harmonic");
      const double scale = rescale(c.poly, r.lambda).scale();
      o.require(r.transversality.margin > 1e-8 * scale, w + " transversality");
      std::vector<int> fdeg;
      for (const TrigPoly& p : c.f) fdeg.push_back(p.degree());
      const DegreeBounds b = degree_bounds(c.word, fdeg);
      const int s = c.word.strands();
      const int d = degree(c.poly);
      o.detail << " \"" << w << "\" " << d << " in " << std::max<double>(s, b.lower) << ".." << std::max(s, b.upper) << ";";
      o.require(std::max<double>(s, b.lower) <= d && d <= std::max(s, b.upper), w + " degree");
    }
  });

  criterion(8, "unique increasing sphere crossing per strand at 512 t-samples", 60.0, [&](Outcome& o) {
    o.require(built.size() == kCorpus.size(), "corpus not built");
    for (std::size_t i = 0; i < built.size(); ++i) {
      const SemiholoPoly scaled = rescale(built[i].poly, reports[i].lambda);
      int solver_bad = 0, oracle_bad = 0;
      for (int k = 0; k < 512; ++k) {
        const double t = kTwoPi * k / 512.0;
        const RadialSlice slice = radial_slice(scaled, t);
        if (!slice.unique || !(slice.min_slope > 0.0)) ++solver_bad;
        if (!radial_oracle(scaled, t, 400)) ++oracle_bad;
      }
      o.require(solver_bad == 0, kCorpus[i] + " radial slices");
      o.require(oracle_bad == 0, kCorpus[i] + " grid oracle");
    }
  });

  criterion(9, "projection agrees, vanishes on samples, Hopf links once", 60.0, [&](Outcome& o) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    double worst_point = 0.0, worst_zero = 0.0;
    for (std::size_t i = 0; i < built.size(); ++i) {
      const SemiholoPoly scaled = rescale(built[i].poly, reports[i].lambda);
      const RealPoly3 p = stereographic_project(scaled);
      o.require(p.degree() <= 2 * degree(scaled), kCorpus[i] + " degree");
      for (int k = 0; k < 100; ++k) {
        const Point3 x{g(rng), g(rng), g(rng)};
        const double rho = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        const cplx u = cplx(rho - 1.0, 2.0 * x[2]) / (rho + 1.0), v = cplx(2.0 * x[0], 2.0 * x[1]) / (rho + 1.0);
        const cplx want = scaled(u, v) * std::pow(rho + 1.0, degree(scaled));
        worst_point = std::max(worst_point, std::abs(p(x) - want) / (std::max(1.0, std::abs(want)) * p.scale()));
      }
      const RealPair parts = split_real_imag(p);
      for (const Point3& x : project_points(sample_nodal_set(built[i].poly, reports[i].lambda, 128))) {
        worst_zero = std::max({worst_zero, std::abs(parts.real(x)) / p.scale(), std::abs(parts.imag(x)) / p.scale()});
      }
    }
    const SemiholoPoly hopf = make(2, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, -0.25}}, 1.0);
    const auto curves = follow_curves(project_points(sample_nodal_set(hopf, 1.0, 400)), 4.0 * kTwoPi * 10.0 / 400.0);
    const double link = curves.size() == 2 ? std::abs(gauss_linking(curves[0], curves[1])) : 0.0;
    o.detail << " pointwise " << worst_point << ", nodal " << worst_zero << ", linking " << link;
    o.require(worst_point < 1e-10, "pointwise");
    o.require(worst_zero < 1e-8, "nodal samples");
    o.require(curves.size() == 2 && std::abs(link - 1.0) < 0.05, "Hopf linking");
  });

  criterion(10, "beta values and torus phase-critical count", 60.0, [](Outcome& o) {
    const BraidWord a = parse_braid_word("1 -2 1 -2");
    const BraidWord b = parse_braid_word(kFiveTwo);
    o.require(beta(a) == 0 && beta_by_enumeration(a) == 0, "beta (s1 s2^-1)^2");
    o.require(beta(b) == 2 && beta_by_enumeration(b) == 2, "beta 5_2");
    FourierBraid torus;
    torus.components.push_back({TrigPoly::cosine(1), TrigPoly::sine(1), 2});
    const PhaseCriticalScan scan = phase_critical_scan(torus);
    o.detail << " torus count " << scan.count;
    o.require(scan.count == 0, "torus phase-critical");
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
