#pragma once

#include "degenkit/datum.hpp"
#include "degenkit/fans.hpp"
#include "degenkit/polytope.hpp"
#include "degenkit/theta.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace degenkit {

using Json = nlohmann::ordered_json;

/// Malformed or schema-violating input (as opposed to a mathematical failure).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json to_json(const Rational& q);
Json to_json(const RatVec& v);
/// A JSON number when it fits in 64 bits, else a decimal string.
Json to_json(const Integer& n);
Json to_json(const IntVec& v);
Json to_json(const IntMatrix& m);
Rational rational_from_json(const Json& j);
RatVec ratvec_from_json(const Json& j);
IntVec intvec_from_json(const Json& j);
IntMatrix intmatrix_from_json(const Json& j);
/// "p/q,p/q,..."
RatVec parse_rational_list(const std::string& s);

/// {"rank", "phi", "tau_valuations", "tau_units"?, "psi_signs"?, "chi_signs"?, "abelian"?, "mu"?, "plain"?}
DegenerationDatum datum_from_json(const Json& j);
Json datum_to_json(const DegenerationDatum& d);
/// Parses text; syntax errors become InputError with the byte position.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

/// {"vertices": [[...]], "facets": [{"normal": [...], "offset": "p/q"}]}
Json polytope_to_json(const LatticePolytope& p);
LatticePolytope polytope_from_json(const Json& j, std::size_t ambient);

/// {"ambient": n, "cones": [{"rays": [...], "lineality": [...]}]}
Json cone_to_json(const RationalCone& c);
RationalCone cone_from_json(const Json& j, std::size_t ambient);
Json fan_to_json(const Fan& f);
Fan fan_from_json(const Json& j);

Json face_to_json(const ComplexFace& f);
Json series_to_json(const FormalThetaSeries& s);

/// Rounded to 15 significant digits.
double round15(double x);
Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

}  // namespace degenkit
