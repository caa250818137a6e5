#include "braidfield_cli/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "braidfield/error.hpp"

namespace braidfield::cli {

namespace {

Error bad_input(const std::string& message) { return Error(ErrorKind::InvalidArgument, message); }

template <typename T>
T field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw bad_input(std::string(what) + " is missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw bad_input(std::string(what) + " has a malformed \"" + key + "\"");
  }
}

cplx complex_field(const json& j, const char* what) {
  return {field<double>(j, "re", what), j.contains("im") ? field<double>(j, "im", what) : 0.0};
}

}  // namespace

json to_json(const BraidWord& b) {
  json word = json::array();
  for (const Letter& l : b.letters()) word.push_back(l.sign * l.index);
  return json{{"strands", b.strands()}, {"word", std::move(word)}};
}

BraidWord braid_from_json(const json& j) {
  const int strands = field<int>(j, "strands", "braid");
  std::string tokens;
  for (const int token : field<std::vector<int>>(j, "word", "braid")) tokens += std::to_string(token) + " ";
  return parse_braid_word(tokens, strands);
}

json to_json(const TrigPoly& p) {
  json coeffs = json::array();
  for (int k = -p.degree(); k <= p.degree(); ++k) {
    const cplx c = p.coeff(k);
    if (c != cplx{}) coeffs.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  }
  return json{{"degree", p.degree()}, {"coeffs", std::move(coeffs)}};
}

TrigPoly trig_poly_from_json(const json& j) {
  const int n = field<int>(j, "degree", "trig polynomial");
  if (n < 0) throw bad_input("trig polynomial degree is negative");
  std::vector<cplx> coeffs(2 * static_cast<std::size_t>(n) + 1);
  for (const json& term : field<json>(j, "coeffs", "trig polynomial")) {
    const int k = field<int>(term, "k", "trig coefficient");
    if (k < -n || k > n) throw bad_input("trig coefficient index exceeds the degree");
    coeffs[static_cast<std::size_t>(k + n)] = complex_field(term, "trig coefficient");
  }
  return TrigPoly(std::move(coeffs));
}

json to_json(const FourierBraid& fb) {
  json comps = json::array();
  for (const ComponentCurve& c : fb.components) {
    comps.push_back({{"strands", c.strands}, {"x", to_json(c.x)}, {"y", to_json(c.y)}});
  }
  return json{{"time_scale", fb.time_scale}, {"components", std::move(comps)}};
}

FourierBraid fourier_from_json(const json& j) {
  FourierBraid fb;
  fb.time_scale = field<int>(j, "time_scale", "fourier braid");
  if (fb.time_scale < 1) throw bad_input("fourier time_scale must be positive");
  for (const json& c : field<json>(j, "components", "fourier braid")) {
    const int strands = field<int>(c, "strands", "component");
    if (strands < 1) throw bad_input("component strand count must be positive");
    fb.components.push_back({trig_poly_from_json(field<json>(c, "x", "component")),
                             trig_poly_from_json(field<json>(c, "y", "component")), strands});
  }
  return fb;
}

json to_json(const SemiholoPoly& f, const FourierBraid* fb) {
  json doc{{"strands", f.strands()}, {"lambda", f.lambda()}, {"a1", f.a1}, {"b1", f.b1}, {"degree", degree(f)}};
  if (f.braid) doc["braid"] = to_json(*f.braid);
  if (fb) doc["fourier"] = to_json(*fb);
  json monomials = json::array();
  for (const auto& [m, c] : f.terms()) {
    monomials.push_back({{"u", m.u}, {"v", m.v}, {"vbar", m.vbar}, {"re", c.real()}, {"im", c.imag()}});
  }
  doc["monomials"] = std::move(monomials);
  return doc;
}

SemiholoPoly poly_from_json(const json& j) {
  const int strands = field<int>(j, "strands", "polynomial");
  const double lambda = j.contains("lambda") ? field<double>(j, "lambda", "polynomial") : 1.0;
  if (!(lambda > 0.0)) throw bad_input("polynomial lambda must be positive");
  SemiholoPoly::Terms terms;
  for (const json& term : field<json>(j, "monomials", "polynomial")) {
    const Monomial m{field<int>(term, "u", "monomial"), field<int>(term, "v", "monomial"),
                     field<int>(term, "vbar", "monomial")};
    if (m.u < 0 || m.v < 0 || m.vbar < 0) throw bad_input("monomial exponents must be nonnegative");
    terms[m] += complex_field(term, "monomial");
  }
  SemiholoPoly f(strands, std::move(terms), lambda);
  if (j.contains("a1")) f.a1 = field<double>(j, "a1", "polynomial");
  if (j.contains("b1")) f.b1 = field<double>(j, "b1", "polynomial");
  if (j.contains("braid")) f.braid = braid_from_json(j.at("braid"));
  return f;
}

std::optional<FourierBraid> poly_fourier_from_json(const json& j) {
  if (!j.contains("fourier")) return std::nullopt;
  FourierBraid fb = fourier_from_json(j.at("fourier"));
  fb.lambda = j.contains("lambda") ? field<double>(j, "lambda", "polynomial") : 1.0;
  fb.a1 = j.contains("a1") ? field<double>(j, "a1", "polynomial") : 1.0;
  fb.b1 = j.contains("b1") ? field<double>(j, "b1", "polynomial") : 1.0;
  return fb;
}

json to_json(const RealPoly3& p) {
  json monomials = json::array();
  for (const auto& [e, c] : p.terms()) {
    monomials.push_back({{"x", e.x}, {"y", e.y}, {"z", e.z}, {"re", c.real()}, {"im", c.imag()}});
  }
  return json{{"degree", p.degree()}, {"monomials", std::move(monomials)}};
}

RealPoly3 real_poly_from_json(const json& j) {
  RealPoly3::Terms terms;
  for (const json& term : field<json>(j, "monomials", "real polynomial")) {
    const Exponent3 e{field<int>(term, "x", "monomial"), field<int>(term, "y", "monomial"),
                      field<int>(term, "z", "monomial")};
    if (e.x < 0 || e.y < 0 || e.z < 0) throw bad_input("monomial exponents must be nonnegative");
    terms[e] += complex_field(term, "monomial");
  }
  return RealPoly3(std::move(terms));
}

json to_json(const BraidSignature& s) {
  json pairs = json::array();
  for (const auto& [key, count] : s.pair_counts) pairs.push_back({{"strands", {key.first, key.second}}, {"count", count}});
  return json{{"permutation", s.permutation}, {"exponent_sum", s.exponent_sum}, {"pair_counts", std::move(pairs)}};
}

json to_json(const VerificationReport& r) {
  json doc{{"passed", r.passed},
           {"lambda", r.lambda},
           {"failed_stage", r.failed_stage},
           {"detail", r.detail},
           {"lambdas_tried", r.lambdas_tried},
           {"expected_source", r.expected_source},
           {"expected", to_json(r.expected)},
           {"observed", to_json(r.observed)},
           {"permutation_match", r.permutation_match},
           {"exponent_sum_match", r.exponent_sum_match},
           {"pair_counts_match", r.pair_counts_match},
           {"unique_intersection", r.unique_intersection},
           {"min_radial_slope", r.min_radial_slope},
           {"max_abs_u", r.max_abs_u},
           {"transversality",
            {{"min_du", r.transversality.min_du},
             {"min_sigma", r.transversality.min_sigma},
             {"margin", r.transversality.margin},
             {"threshold", r.transversality.threshold},
             {"passed", r.transversality.passed}}},
           {"max_abs_f", r.max_abs_f}};
  if (r.phase_critical) {
    doc["phase_critical"] = {{"count", *r.phase_critical}, {"lower_bound", r.phase_critical_lower_bound}};
  } else {
    doc["phase_critical"] = "skipped";
  }
  doc["conservative_lambda"] = r.conservative_lambda ? json(*r.conservative_lambda) : json(nullptr);
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bad_input("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bad_input("cannot write " + path);
  out << text;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw bad_input(what + " is not valid JSON: " + e.what());
  }
}

void write_fdata_csv(std::ostream& out, const Construction& c) {
  out << "component,index,t,value\n";
  out.precision(17);
  for (std::size_t comp = 0; comp < c.f_points.size(); ++comp) {
    const std::size_t count = c.f_points[comp].size();
    for (std::size_t k = 0; k < count; ++k) {
      out << comp << ',' << k << ',' << c.f_points[comp][k].t << ',' << c.f_points[comp][k].value << '\n';
    }
  }
}

void write_crossings_csv(std::ostream& out, const Construction& c) {
  out << "t0,C,j,C',m,interval,transverse\n";
  out.precision(17);
  for (const Crossing& x : c.crossings) {
    out << x.t0 << ',' << x.first.component << ',' << x.first.index << ',' << x.second.component << ','
        << x.second.index << ',' << x.interval << ',' << (x.transverse ? 1 : 0) << '\n';
  }
}

void write_points_csv(std::ostream& out, std::span<const NodalPoint> points) {
  out << "re_u,im_u,re_v,im_v\n";
  out.precision(17);
  for (const NodalPoint& p : points) out << p.u.real() << ',' << p.u.imag() << ',' << p.v.real() << ',' << p.v.imag() << '\n';
}

void write_points_csv(std::ostream& out, std::span<const Point3> points) {
  out << "x,y,z\n";
  out.precision(17);
  for (const Point3& p : points) out << p[0] << ',' << p[1] << ',' << p[2] << '\n';
}

}  // namespace braidfield::cli
