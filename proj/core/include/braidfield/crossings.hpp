#pragma once

#include <map>
#include <span>
#include <vector>

#include "braidfield/braid.hpp"
#include "braidfield/trig_poly.hpp"

namespace braidfield {

/// Value of curve (C, j) of the interpolated diagram: F_C((t + 2 pi j) / s_C).
double curve_value(const TrigPoly& f, int cycle_length, int index, double t);

struct Crossing {
  double t0 = 0.0;
  StrandLabel first;   // first < second
  StrandLabel second;
  bool transverse = true;
  int interval = 1;      // 1-based letter interval containing t0
  int multiplicity = 1;  // 2 for tangential touches

  /// Argument of F_C at which `label` passes through this crossing.
  double parameter(const StrandLabel& label, const Components& comps) const;
};

struct CrossingOptions {
  int grid_multiplier = 4096;  // samples per strand
  double bisection_tol = 1e-12;
  double tangent_tol = 1e-9;
  double boundary_tol = 1e-9;
};

/// All crossings of the curves F_C((t + 2 pi j)/s_C), t in [0, 2 pi), sorted
/// by (t0, first, second). `length` is the braid length, used for intervals.
std::vector<Crossing> find_crossings(std::span<const TrigPoly> f, const Components& comps, std::size_t length,
                                     const CrossingOptions& options = {});

/// The per-interval bijections w_k. `values[k]` holds only the strands that
/// take part in some crossing of interval k+1, plus the letter's pair.
struct SignAssignment {
  std::vector<std::map<StrandLabel, double>> values;

  double value(std::size_t interval, const StrandLabel& label) const { return values.at(interval - 1).at(label); }
};

SignAssignment assign_signs(const BraidWord& b, std::span<const Crossing> crossings, const PositionChart& chart);

/// Data points ((t0 + 2 pi j)/s_C, w_k(C, j)) per component, sorted by t and
/// with coincident nodes merged.
std::vector<std::vector<TrigNode>> g_data_points(std::span<const Crossing> crossings, const SignAssignment& signs,
                                                 const Components& comps);

}  // namespace braidfield
