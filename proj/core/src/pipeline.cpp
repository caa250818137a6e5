#include "braidfield/pipeline.hpp"

#include "braidfield/error.hpp"

namespace braidfield {

Construction construct(const BraidWord& word, const ConstructionOptions& options) {
  if (options.repeat < 1) throw Error(ErrorKind::InvalidArgument, "repeat factor must be positive");
  Construction c{word, components(word), {}, {}, {}, {}, {}, {}, {}, {}, {}};
  c.chart = position_chart(word, c.comps);

  for (int comp = 0; comp < c.comps.count(); ++comp) {
    c.f_points.push_back(f_data_points(word, c.comps, comp));
    std::vector<double> values;
    values.reserve(c.f_points.back().size());
    for (const DataPoint& p : c.f_points.back()) values.push_back(p.value);
    c.f.push_back(dft_interpolate(values, options.tol));
  }

  c.crossings = find_crossings(c.f, c.comps, word.length(), options.crossing);
  c.signs = assign_signs(word, c.crossings, c.chart);
  c.g_points = g_data_points(c.crossings, c.signs, c.comps);

  for (int comp = 0; comp < c.comps.count(); ++comp) {
    const auto& pts = c.g_points[static_cast<std::size_t>(comp)];
    c.g.push_back(pts.empty() ? TrigPoly() : lagrange_trig_interpolate(pts, {}, options.tol));
    c.fourier.components.push_back({c.f[static_cast<std::size_t>(comp)], c.g.back(), c.comps.cycle_length(comp)});
  }
  c.fourier.a1 = options.a1;
  c.fourier.b1 = options.b1;
  c.fourier = c.fourier.repeated(options.repeat);

  c.poly = assemble(c.fourier, options.tol);
  c.poly.braid = c.target();
  return c;
}

}  // namespace braidfield
