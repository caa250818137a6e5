#pragma once

#include <vector>

#include "braidfield/braid.hpp"

namespace braidfield {

/// Horizontal coordinate of a 1-based diagram position: equidistant strands
/// symmetric about zero, position 1 on top.
inline double position_value(int strands, int position) {
  return (strands + 1) / 2.0 - position;
}

/// `value[id][k]` is the x-value of strand `id` during interval k+1.
/// The trivial braid has a single constant interval.
struct StrandTable {
  int strands = 0;
  std::vector<std::vector<double>> value;

  std::size_t intervals() const { return value.empty() ? 0 : value.front().size(); }
};

StrandTable strand_positions(const BraidWord& b);

struct DataPoint {
  double t = 0.0;
  double value = 0.0;
};

/// Equally spaced interpolation nodes for F_C: s_C * max(l, 1) points, the
/// k-th at 2 pi k / (s_C l), walking the component's strands in order.
std::vector<DataPoint> f_data_points(const BraidWord& b, const Components& comps, int component);

struct DiagramData {
  std::vector<std::vector<DataPoint>> points;  // per component
  std::vector<double> crossing_abscissas;      // 2 pi (2k - 1) / (2 l)
};

DiagramData diagram_data(const BraidWord& b, const Components& comps);

}  // namespace braidfield
