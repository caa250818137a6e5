#include "braidfield_cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "braidfield/error.hpp"
#include "braidfield_cli/io.hpp"

namespace braidfield::cli {

void validate(const Config& config) {
  if (!(config.tol > 0.0 && config.tol <= 1e-3)) throw Error(ErrorKind::InvalidArgument, "--tol must lie in (0, 1e-3]");
  if (config.samples < 64) throw Error(ErrorKind::InvalidArgument, "--samples must be at least 64");
  if (config.repeat < 1) throw Error(ErrorKind::InvalidArgument, "--repeat must be at least 1");
  if (config.grid < 16) throw Error(ErrorKind::InvalidArgument, "--grid must be at least 16");
  if (config.lambda && !(*config.lambda > 0.0 && *config.lambda <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "--lambda must lie in (0, 1]");
  }
}

int exit_code(const std::exception& e) noexcept {
  const auto* error = dynamic_cast<const Error*>(&e);
  if (!error) return dynamic_cast<const nlohmann::json::exception*>(&e) ? kInputError : kStageError;
  switch (error->kind()) {
    case ErrorKind::MalformedWord:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::TrivialNeedsStrands:
    case ErrorKind::InvalidArgument:
      return kInputError;
    case ErrorKind::VerificationFailure:
      return kVerificationFailure;
    case ErrorKind::IntegerizeFailure:
      return kProjectionFailure;
    default:
      return kStageError;
  }
}

namespace {

struct Inputs {
  Config config;
  std::string braid;
  std::string braid_file;
  std::optional<int> strands;
  std::string input;
  std::string out;
  std::string text;
  std::string dump_fdata;
  std::string dump_crossings;
  bool integerize = false;
  bool r3 = false;
};

bool has_braid(const Inputs& in) { return !in.braid.empty() || !in.braid_file.empty(); }

BraidWord load_braid(const Inputs& in) {
  if (!in.braid.empty() && !in.braid_file.empty()) {
    throw Error(ErrorKind::InvalidArgument, "give either --braid or --braid-file, not both");
  }
  if (!in.braid.empty()) return parse_any_word(in.braid, in.strands);
  if (in.braid_file.empty()) throw Error(ErrorKind::InvalidArgument, "no braid given (--braid or --braid-file)");
  const std::string text = read_file(in.braid_file);
  const auto first = std::find_if_not(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
  if (first != text.end() && *first == '{') return braid_from_json(parse_json(text, in.braid_file));
  return parse_any_word(text, in.strands);
}

json load_poly_document(const Inputs& in) {
  if (in.input.empty()) throw Error(ErrorKind::InvalidArgument, "no polynomial file given");
  return parse_json(read_file(in.input), in.input);
}

Construction build_from(const Inputs& in) {
  ConstructionOptions options;
  options.tol = in.config.tol;
  options.crossing.grid_multiplier = in.config.grid;
  options.repeat = in.config.repeat;
  return construct(load_braid(in), options);
}

/// JSON goes to --out when given, else to stdout; notes go wherever JSON does not.
void emit(const Inputs& in, const std::string& document, const std::string& notes, std::ostream& out, std::ostream& err) {
  if (in.out.empty()) {
    out << document;
    err << notes;
  } else {
    write_file(in.out, document);
    out << notes;
  }
}

std::vector<int> f_degrees(const Construction& c) {
  std::vector<int> d;
  for (const TrigPoly& p : c.f) d.push_back(p.degree());
  return d;
}

int cmd_build(const Inputs& in, std::ostream& out, std::ostream& err) {
  const Construction c = build_from(in);
  if (!in.dump_fdata.empty()) {
    std::ostringstream csv;
    write_fdata_csv(csv, c);
    write_file(in.dump_fdata, csv.str());
  }
  if (!in.dump_crossings.empty()) {
    std::ostringstream csv;
    write_crossings_csv(csv, c);
    write_file(in.dump_crossings, csv.str());
  }
  const BraidWord target = c.target();
  const std::vector<int> degrees = f_degrees(c);
  const DegreeBounds bounds = degree_bounds(target, degrees);
  std::ostringstream notes;
  notes << "braid " << target.to_string() << " on " << target.strands() << " strands\n"
        << "degree " << degree(c.poly) << "\n"
        << "deg >= " << std::max<double>(target.strands(), bounds.lower) << "\n"
        << "deg <= " << bounds.upper << "\n"
        << "beta " << beta(target) << "\n"
        << "harmonic " << (is_harmonic(c.poly) ? "yes" : "no") << "\n";
  emit(in, to_json(c.poly, &c.fourier).dump(2) + "\n", notes.str(), out, err);
  return kSuccess;
}

int cmd_verify(const Inputs& in, std::ostream& out, std::ostream& err) {
  SemiholoPoly f;
  std::optional<FourierBraid> fb;
  if (has_braid(in)) {
    Construction c = build_from(in);
    f = std::move(c.poly);
    fb = std::move(c.fourier);
  } else {
    const json doc = load_poly_document(in);
    f = poly_from_json(doc);
    fb = poly_fourier_from_json(doc);
  }
  VerifyOptions options;
  options.samples = in.config.samples;
  options.fixed_lambda = in.config.lambda;
  const VerificationReport report = find_lambda(f, options, fb ? &*fb : nullptr);
  out << to_json(report).dump(2) << "\n";
  if (!report.passed) {
    err << "verification failed at stage " << report.failed_stage << ": " << report.detail << "\n";
    return kVerificationFailure;
  }
  if (!in.out.empty()) {
    if (fb) fb->lambda = report.lambda;
    write_file(in.out, to_json(rescale(f, report.lambda), fb ? &*fb : nullptr).dump(2) + "\n");
  }
  return kSuccess;
}

int cmd_project(const Inputs& in, std::ostream& out, std::ostream& err) {
  const SemiholoPoly f = poly_from_json(load_poly_document(in));
  RealPoly3 p = stereographic_project(f);
  json doc{{"source_degree", degree(f)}, {"lambda", f.lambda()}};
  if (in.integerize) {
    const std::vector<Point3> points = project_points(sample_nodal_set(f, f.lambda(), in.config.samples));
    Integerized result = integerize(p, points);
    const Reverification check = reverify(result.poly, result.power, points);
    if (!check.passed) {
      std::ostringstream msg;
      msg << "integerized polynomial moves the nodal samples by " << check.max_displacement << " (spacing "
          << check.spacing << ", residual " << check.max_residual << ")";
      throw Error(ErrorKind::IntegerizeFailure, msg.str());
    }
    doc["integerized"] = {{"power", result.power},
                          {"margin", result.margin},
                          {"spacing", result.spacing},
                          {"threshold", result.threshold},
                          {"perturbation", result.perturbation},
                          {"reverify",
                           {{"passed", check.passed},
                            {"max_displacement", check.max_displacement},
                            {"max_residual", check.max_residual}}}};
    p = std::move(result.poly);
  }
  const RealPair pair = split_real_imag(p);
  doc["degree"] = p.degree();
  doc["polynomial"] = to_json(p);
  doc["F1"] = to_json(pair.real);
  doc["F2"] = to_json(pair.imag);
  if (!in.text.empty()) write_file(in.text, "F1 = " + to_string(pair.real) + "\nF2 = " + to_string(pair.imag) + "\n");
  std::ostringstream notes;
  notes << "degree " << p.degree() << " (source degree " << degree(f) << ")\n";
  if (in.integerize) notes << "scaled by 1e" << doc["integerized"]["power"].get<int>() << "\n";
  emit(in, doc.dump(2) + "\n", notes.str(), out, err);
  return kSuccess;
}

int cmd_trace(const Inputs& in, std::ostream& out, std::ostream& err) {
  const SemiholoPoly f = poly_from_json(load_poly_document(in));
  VerifyOptions options;
  options.samples = in.config.samples;
  options.fixed_lambda = in.config.lambda;
  options.conservative = false;
  const VerificationReport report = find_lambda(f, options);
  if (!report.passed) {
    err << "verification failed at stage " << report.failed_stage << ": " << report.detail << "\n";
    return kVerificationFailure;
  }
  const std::vector<NodalPoint> points = sample_nodal_set(f, report.lambda, in.config.samples);
  std::ostringstream csv;
  if (in.r3) write_points_csv(csv, project_points(points));
  else write_points_csv(csv, points);
  std::ostringstream notes;
  notes << points.size() << " nodal points at lambda " << report.lambda << "\n";
  emit(in, csv.str(), notes.str(), out, err);
  return kSuccess;
}

int cmd_info(const Inputs& in, std::ostream& out) {
  json doc;
  if (has_braid(in)) {
    const BraidWord word = load_braid(in).power(in.config.repeat);
    const Components comps = components(word);
    json cycles = json::array();
    for (const Cycle& c : comps.cycles) cycles.push_back(c.strands);
    const DegreeBounds bounds = degree_bounds(word);
    doc = {{"braid", to_json(word)},
           {"length", word.length()},
           {"exponent_sum", word.exponent_sum()},
           {"permutation", comps.permutation},
           {"components", std::move(cycles)},
           {"beta", beta(word)},
           {"strictly_homogeneous", is_strictly_homogeneous(word)},
           {"degree_bounds", {{"lower", std::max<double>(word.strands(), bounds.lower)}, {"upper", bounds.upper}}}};
  } else {
    const json source = load_poly_document(in);
    const SemiholoPoly f = poly_from_json(source);
    doc = {{"strands", f.strands()},
           {"lambda", f.lambda()},
           {"degree", degree(f)},
           {"u_degree", f.u_degree()},
           {"monomials", f.terms().size()},
           {"harmonic", is_harmonic(f)}};
    if (f.braid) doc["braid"] = to_json(*f.braid);
  }
  out << doc.dump(2) << "\n";
  return kSuccess;
}

void add_config(CLI::App& cmd, Inputs& in) {
  cmd.add_option("--tol", in.config.tol, "Relative tolerance")->capture_default_str();
  cmd.add_option("--samples", in.config.samples, "Verification t-samples")->capture_default_str();
  cmd.add_option("--grid", in.config.grid, "Crossing scan density per strand")->capture_default_str();
  cmd.add_option("--lambda", in.config.lambda, "Fixed lambda instead of the search");
  cmd.add_option("--repeat", in.config.repeat, "Use the r-th power of the braid")->capture_default_str();
}

void add_braid(CLI::App& cmd, Inputs& in) {
  cmd.add_option("--braid", in.braid, "Braid word, e.g. \"2 -1 2 1 1 1\" or \"bAbaaa\"");
  cmd.add_option("--braid-file", in.braid_file, "File with a braid word or braid JSON");
  cmd.add_option("--strands", in.strands, "Strand count (needed for the trivial braid)");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semiholomorphic polynomials whose nodal sets are braid closures", "braidfield"};
  app.require_subcommand(1);
  Inputs in;

  auto* build = app.add_subcommand("build", "Construct the polynomial for a braid");
  add_braid(*build, in);
  add_config(*build, in);
  build->add_option("--out", in.out, "Polynomial JSON output");
  build->add_option("--dump-fdata", in.dump_fdata, "CSV of the F data points");
  build->add_option("--dump-crossings", in.dump_crossings, "CSV of the diagram crossings");

  auto* verify = app.add_subcommand("verify", "Choose lambda and check the nodal set");
  verify->add_option("input", in.input, "Polynomial JSON");
  add_braid(*verify, in);
  add_config(*verify, in);
  verify->add_option("--out", in.out, "Polynomial rescaled to the accepted lambda");

  auto* project = app.add_subcommand("project", "Stereographic projection to R^3");
  project->add_option("input", in.input, "Polynomial JSON");
  add_config(*project, in);
  project->add_option("--out", in.out, "Projected polynomial JSON");
  project->add_flag("--integerize", in.integerize, "Round to Gaussian-integer coefficients");
  project->add_option("--text", in.text, "Readable F1, F2 dump");

  auto* trace = app.add_subcommand("trace", "Sample the nodal set");
  trace->add_option("input", in.input, "Polynomial JSON");
  add_config(*trace, in);
  trace->add_option("--out", in.out, "CSV output");
  trace->add_flag("--r3", in.r3, "Write projected x,y,z instead of u,v");

  auto* info = app.add_subcommand("info", "Braid or polynomial summary");
  info->add_option("input", in.input, "Polynomial JSON");
  add_braid(*info, in);
  info->add_option("--repeat", in.config.repeat, "Use the r-th power of the braid");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    validate(in.config);
    if (build->parsed()) return cmd_build(in, out, err);
    if (verify->parsed()) return cmd_verify(in, out, err);
    if (project->parsed()) return cmd_project(in, out, err);
    if (trace->parsed()) return cmd_trace(in, out, err);
    return cmd_info(in, out);
  } catch (const std::exception& e) {
    const int code = exit_code(e);
    if (const auto* error = dynamic_cast<const Error*>(&e); error && code == kStageError) {
      err << "error in stage " << to_string(error->kind()) << ": " << e.what() << "\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    return code;
  }
}

}  // namespace braidfield::cli
