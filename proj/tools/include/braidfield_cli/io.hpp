#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "braidfield/crossings.hpp"
#include "braidfield/pipeline.hpp"
#include "braidfield/project.hpp"
#include "braidfield/verify.hpp"

namespace braidfield::cli {

using json = nlohmann::ordered_json;

json to_json(const BraidWord& b);
BraidWord braid_from_json(const json& j);

json to_json(const TrigPoly& p);
TrigPoly trig_poly_from_json(const json& j);

json to_json(const FourierBraid& fb);
FourierBraid fourier_from_json(const json& j);

/// Polynomial document: strands, lambda, amplitudes, optional braid and
/// Fourier parametrisation, monomials in serialization order.
json to_json(const SemiholoPoly& f, const FourierBraid* fb = nullptr);
SemiholoPoly poly_from_json(const json& j);
std::optional<FourierBraid> poly_fourier_from_json(const json& j);

json to_json(const RealPoly3& p);
RealPoly3 real_poly_from_json(const json& j);

json to_json(const BraidSignature& s);
json to_json(const VerificationReport& r);

/// Reads a whole file; throws InvalidArgument when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
json parse_json(const std::string& text, const std::string& what);

/// component,index,t,value
void write_fdata_csv(std::ostream& out, const Construction& c);
/// t0,C,j,C',m,interval,transverse
void write_crossings_csv(std::ostream& out, const Construction& c);
/// re_u,im_u,re_v,im_v
void write_points_csv(std::ostream& out, std::span<const NodalPoint> points);
/// x,y,z
void write_points_csv(std::ostream& out, std::span<const Point3> points);

}  // namespace braidfield::cli
