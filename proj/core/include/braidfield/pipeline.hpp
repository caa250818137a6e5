#pragma once

#include <vector>

#include "braidfield/braid.hpp"
#include "braidfield/crossings.hpp"
#include "braidfield/diagram.hpp"
#include "braidfield/semiholo.hpp"
#include "braidfield/trig_poly.hpp"

namespace braidfield {

struct ConstructionOptions {
  double tol = 1e-9;
  CrossingOptions crossing;
  double a1 = 1.0;
  double b1 = 1.0;
  int repeat = 1;
};

/// Every intermediate of the construction, braid word to polynomial at lambda = 1.
struct Construction {
  BraidWord word;
  Components comps;
  PositionChart chart;
  std::vector<std::vector<DataPoint>> f_points;
  std::vector<TrigPoly> f;
  std::vector<Crossing> crossings;
  SignAssignment signs;
  std::vector<std::vector<TrigNode>> g_points;
  std::vector<TrigPoly> g;
  FourierBraid fourier;
  SemiholoPoly poly;

  /// The braid whose closure the polynomial describes (word^repeat).
  BraidWord target() const { return word.power(fourier.time_scale); }
};

Construction construct(const BraidWord& word, const ConstructionOptions& options = {});

}  // namespace braidfield
