#pragma once

// Group-spec JSON input, result JSON output and SVG boundary traces.
//
// Group spec:
//   {"name": "...", "model_dim": 2 | 3,
//    "generators": [{"name": "S", "matrix": [[re, im], [re, im], [re, im], [re, im]]}, ...],
//    "peripheral": {"generators": ["T", {"name": "U", "matrix": [...]}]},
//    "stabilizer_region": [{"kind": "sphere", "center": [x, y], "radius": R, "side": "exterior"},
//                          {"kind": "plane", "normal": [nx, ny], "offset": o, "side": "positive"}],
//    "torsion_free": true | false}
// Matrix entries are row-major a, b, c, d. Only "name", "model_dim" and
// "generators" are required.

#include <string>
#include <string_view>

#include "json.hpp"

#include "hypdom/canreg.hpp"
#include "hypdom/domains.hpp"

namespace hypdom {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchema = "hypdom/1";

/// Throws ParseError (with line or field) or DeterminantError.
GroupSpec parse_group_spec(std::string_view text, const Tolerance& tol = kDefaultTolerance);
GroupSpec load_group_spec(const std::string& path, const Tolerance& tol = kDefaultTolerance);

/// "a+bi" (H^2 and H^3), "a+bi+cj" or "x,y,r". Throws ParseError.
HalfPoint parse_center(std::string_view text);

/// Eight numbers "re,im,re,im,re,im,re,im" (a, b, c, d). Throws ParseError
/// or DeterminantError.
MoebiusMap parse_matrix(std::string_view text, const Tolerance& tol = kDefaultTolerance);

/// Serializes with every float printed to 17 significant digits, -0 as 0
/// and non-finite values as null. Two-space indentation, trailing newline.
std::string dump(const Json& j);

Json to_json(Complex z);
Json to_json(const MoebiusMap& g);
Json to_json(const HalfPoint& p);
Json to_json(const GeneralizedSphere& s);
Json to_json(const IsometryClass& c);
Json to_json(const Face& f);
Json to_json(const DfVerdict& v);
Json to_json(const DomainApprox& d, const DfVerdict* verdict);
Json to_json(const CanonicalRegion& r);

/// Static SVG of the face traces: semicircles and vertical lines in the
/// upper half-plane for 2-D domains, circles and lines on the boundary plane
/// for 3-D domains. Byte-identical for identical input.
std::string render_svg(const DomainApprox& d);

}  // namespace hypdom
