#include "braidfield/diagram.hpp"

#include <algorithm>
#include <numbers>
#include <utility>

namespace braidfield {

StrandTable strand_positions(const BraidWord& b) {
  const int s = b.strands();
  const std::size_t intervals = std::max<std::size_t>(b.length(), 1);
  StrandTable table;
  table.strands = s;
  table.value.assign(s, std::vector<double>(intervals, 0.0));

  std::vector<int> at(s);
  for (int p = 0; p < s; ++p) at[p] = p;
  for (std::size_t k = 0; k < intervals; ++k) {
    for (int p = 0; p < s; ++p) table.value[at[p]][k] = position_value(s, p + 1);
    if (k < b.length()) std::swap(at[b[k].index - 1], at[b[k].index]);
  }
  return table;
}

std::vector<DataPoint> f_data_points(const BraidWord& b, const Components& comps, int component) {
  const StrandTable table = strand_positions(b);
  const Cycle& cycle = comps.cycles.at(component);
  const std::size_t per_strand = table.intervals();
  const std::size_t n = per_strand * cycle.strands.size();

  std::vector<DataPoint> out;
  out.reserve(n);
  for (std::size_t j = 0; j < cycle.strands.size(); ++j) {
    for (std::size_t k = 0; k < per_strand; ++k) {
      std::size_t node = j * per_strand + k;
      out.push_back({2.0 * std::numbers::pi * static_cast<double>(node) / static_cast<double>(n),
                     table.value[cycle.strands[j]][k]});
    }
  }
  return out;
}

DiagramData diagram_data(const BraidWord& b, const Components& comps) {
  DiagramData d;
  for (int c = 0; c < comps.count(); ++c) d.points.push_back(f_data_points(b, comps, c));
  const double len = static_cast<double>(b.length());
  for (std::size_t k = 1; k <= b.length(); ++k) {
    d.crossing_abscissas.push_back(2.0 * std::numbers::pi * (2.0 * static_cast<double>(k) - 1.0) / (2.0 * len));
  }
  return d;
}

}  // namespace braidfield
