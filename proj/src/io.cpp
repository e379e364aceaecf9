#include "hypdom/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace hypdom {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field " + field + ": " + what);
}

void reject_unknown(const nlohmann::json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      field_error(where.empty() ? key : where + "." + key, "unknown field");
  }
}

double number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(field, "expected a finite number");
  return v;
}

MoebiusMap read_matrix(const nlohmann::json& j, const std::string& field, const std::string& name,
                       const Tolerance& tol) {
  if (!j.is_array() || j.size() != 4) field_error(field, "expected four [re, im] pairs");
  std::array<Complex, 4> e;
  for (std::size_t k = 0; k < 4; ++k) {
    const std::string f = field + "[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != 2) field_error(f, "expected [re, im]");
    e[k] = Complex(number(j[k][0], f + "[0]"), number(j[k][1], f + "[1]"));
  }
  const Complex det = e[0] * e[3] - e[1] * e[2];
  if (std::abs(det) < tol.alg)
    throw Error(ErrorCode::DeterminantError, "generator " + name + " has determinant " + std::to_string(std::abs(det)));
  return MoebiusMap::from_entries(e[0], e[1], e[2], e[3], tol.alg);
}

NamedGenerator read_generator(const nlohmann::json& j, const std::string& field, const Tolerance& tol) {
  if (!j.is_object()) field_error(field, "expected an object");
  reject_unknown(j, field, {"name", "matrix"});
  if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
    field_error(field + ".name", "expected a nonempty string");
  if (!j.contains("matrix")) field_error(field + ".matrix", "missing");
  const std::string name = j["name"].get<std::string>();
  return {name, read_matrix(j["matrix"], field + ".matrix", name, tol)};
}

Vec3 read_point2(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) field_error(field, "expected [x, y]");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]"), 0.0};
}

HalfSpace read_region(const nlohmann::json& j, const std::string& field, int dim) {
  if (!j.is_object()) field_error(field, "expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) field_error(field + ".kind", "expected \"sphere\" or \"plane\"");
  const std::string kind = j["kind"].get<std::string>();
  const std::string side = j.contains("side") && j["side"].is_string() ? j["side"].get<std::string>() : "";
  if (kind == "sphere") {
    reject_unknown(j, field, {"kind", "center", "radius", "side"});
    if (!j.contains("center")) field_error(field + ".center", "missing");
    if (!j.contains("radius")) field_error(field + ".radius", "missing");
    const double r = number(j["radius"], field + ".radius");
    if (!(r > 0.0)) field_error(field + ".radius", "expected a positive radius");
    if (side != "exterior" && side != "interior") field_error(field + ".side", "expected \"exterior\" or \"interior\"");
    return {GeneralizedSphere::sphere(Model::half, read_point2(j["center"], field + ".center"), r, dim),
            side == "exterior" ? 1 : -1};
  }
  if (kind == "plane") {
    reject_unknown(j, field, {"kind", "normal", "offset", "side"});
    if (!j.contains("normal")) field_error(field + ".normal", "missing");
    if (!j.contains("offset")) field_error(field + ".offset", "missing");
    const Vec3 n = read_point2(j["normal"], field + ".normal");
    if (n.norm() == 0.0) field_error(field + ".normal", "expected a nonzero normal");
    if (side != "positive" && side != "negative") field_error(field + ".side", "expected \"positive\" or \"negative\"");
    return {GeneralizedSphere::plane(Model::half, n, number(j["offset"], field + ".offset"), dim),
            side == "positive" ? 1 : -1};
  }
  field_error(field + ".kind", "expected \"sphere\" or \"plane\"");
}

void print_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void dump_into(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        dump_into(out, value, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          dump_into(out, j[k], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += inner;
        dump_into(out, j[k], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      print_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text, const Tolerance& tol) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");
  reject_unknown(j, "", {"name", "model_dim", "generators", "peripheral", "stabilizer_region", "torsion_free"});

  GroupSpec spec;
  if (!j.contains("name") || !j["name"].is_string()) field_error("name", "expected a string");
  spec.name = j["name"].get<std::string>();
  if (!j.contains("model_dim") || !j["model_dim"].is_number_integer()) field_error("model_dim", "expected 2 or 3");
  spec.model_dim = j["model_dim"].get<int>();
  if (spec.model_dim != 2 && spec.model_dim != 3) field_error("model_dim", "expected 2 or 3");

  if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
    field_error("generators", "expected a nonempty array");
  std::set<std::string> names;
  for (std::size_t k = 0; k < j["generators"].size(); ++k) {
    const std::string field = "generators[" + std::to_string(k) + "]";
    NamedGenerator g = read_generator(j["generators"][k], field, tol);
    if (!names.insert(g.name).second) field_error(field + ".name", "duplicate generator name " + g.name);
    spec.generators.push_back(std::move(g));
  }

  if (j.contains("peripheral")) {
    const auto& p = j["peripheral"];
    if (!p.is_object()) field_error("peripheral", "expected an object");
    reject_unknown(p, "peripheral", {"generators"});
    if (!p.contains("generators") || !p["generators"].is_array() || p["generators"].empty())
      field_error("peripheral.generators", "expected a nonempty array");
    for (std::size_t k = 0; k < p["generators"].size(); ++k) {
      const std::string field = "peripheral.generators[" + std::to_string(k) + "]";
      const auto& e = p["generators"][k];
      if (e.is_string()) {
        const std::string name = e.get<std::string>();
        auto it = std::find_if(spec.generators.begin(), spec.generators.end(),
                               [&](const NamedGenerator& g) { return g.name == name; });
        if (it == spec.generators.end()) field_error(field, "unknown generator " + name);
        spec.peripheral.push_back(*it);
      } else {
        NamedGenerator g = read_generator(e, field, tol);
        if (names.count(g.name)) field_error(field + ".name", "name " + g.name + " already used");
        spec.peripheral.push_back(std::move(g));
      }
    }
  }

  if (j.contains("stabilizer_region")) {
    const auto& r = j["stabilizer_region"];
    if (!r.is_array()) field_error("stabilizer_region", "expected an array");
    for (std::size_t k = 0; k < r.size(); ++k)
      spec.stabilizer_region.push_back(read_region(r[k], "stabilizer_region[" + std::to_string(k) + "]", spec.model_dim));
  }

  if (j.contains("torsion_free")) {
    if (!j["torsion_free"].is_boolean()) field_error("torsion_free", "expected true or false");
    spec.torsion_free = j["torsion_free"].get<bool>();
  }

  if (spec.model_dim == 2) {
    auto check_real = [&](const NamedGenerator& g) {
      for (Complex e : g.map.entries())
        if (std::abs(e.imag()) > tol.alg) field_error("generators", "2-D generator " + g.name + " has a non-real entry");
    };
    for (const auto& g : spec.generators) check_real(g);
    for (const auto& g : spec.peripheral) check_real(g);
  }
  return spec;
}

GroupSpec load_group_spec(const std::string& path, const Tolerance& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_group_spec(ss.str(), tol);
}

HalfPoint parse_center(std::string_view text) {
  const std::string s(text);
  auto fail = [&](const std::string& why) -> HalfPoint {
    throw Error(ErrorCode::ParseError, "center '" + s + "': " + why);
  };
  double x = 0.0, y = 0.0, r = 0.0;
  if (std::count(s.begin(), s.end(), ',') == 2) {
    std::istringstream ss(s);
    std::string item;
    std::array<double, 3> v{};
    for (double& c : v) {
      std::getline(ss, item, ',');
      char* end = nullptr;
      c = std::strtod(item.c_str(), &end);
      if (item.empty() || *end != '\0') return fail("expected x,y,r");
    }
    x = v[0];
    y = v[1];
    r = v[2];
  } else {
    // Terms "a", "+bi", "-cj"; a bare unit means coefficient 1.
    bool seen_real = false, seen_i = false, seen_j = false;
    std::size_t pos = 0;
    if (s.empty()) return fail("empty");
    while (pos < s.size()) {
      double sign = 1.0;
      if (s[pos] == '+' || s[pos] == '-') {
        sign = s[pos] == '-' ? -1.0 : 1.0;
        ++pos;
      }
      const char* begin = s.c_str() + pos;
      char* end = nullptr;
      double value = std::strtod(begin, &end);
      if (end == begin) value = 1.0;
      pos += static_cast<std::size_t>(end - begin);
      const char unit = pos < s.size() ? s[pos] : '\0';
      if (unit == 'i' || unit == 'j') ++pos;
      if (end == begin && unit != 'i' && unit != 'j') return fail("expected a number");
      if (unit == 'i') {
        if (seen_i) return fail("repeated i term");
        seen_i = true;
        y = sign * value;
      } else if (unit == 'j') {
        if (seen_j) return fail("repeated j term");
        seen_j = true;
        r = sign * value;
      } else {
        if (seen_real || seen_i || seen_j) return fail("unexpected real term");
        seen_real = true;
        x = sign * value;
      }
      if (pos < s.size() && s[pos] != '+' && s[pos] != '-') return fail("unexpected character");
    }
    // "a+bi" alone is a point of the upper half-plane: height b.
    if (!seen_j) {
      if (!seen_i) return fail("no height given");
      r = y;
      y = 0.0;
    }
  }
  if (!(r > 0.0)) return fail("height must be positive");
  return HalfPoint::at(x, y, r);
}

MoebiusMap parse_matrix(std::string_view text, const Tolerance& tol) {
  std::vector<double> v;
  std::string item;
  std::istringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "matrix entry '" + item + "' is not a number");
    }
  }
  if (v.size() != 8) throw Error(ErrorCode::ParseError, "matrix needs 8 numbers (re, im of a, b, c, d)");
  const Complex a(v[0], v[1]), b(v[2], v[3]), c(v[4], v[5]), d(v[6], v[7]);
  if (std::abs(a * d - b * c) < tol.alg) throw Error(ErrorCode::DeterminantError, "matrix has determinant 0");
  return MoebiusMap::from_entries(a, b, c, d, tol.alg);
}

std::string dump(const Json& j) {
  std::string out;
  dump_into(out, j, 0);
  out += "\n";
  return out;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const MoebiusMap& g) {
  Json out = Json::array();
  for (Complex e : g.entries()) out.push_back(to_json(e));
  return out;
}

Json to_json(const HalfPoint& p) {
  if (p.infinite) return "infinity";
  return Json::array({p.z.real(), p.z.imag(), p.r});
}

Json to_json(const GeneralizedSphere& s) {
  Json out;
  out["kind"] = s.is_sphere() ? "sphere" : "plane";
  out["model"] = s.model == Model::half ? "half" : "ball";
  if (s.is_sphere()) {
    out["center"] = s.model == Model::half ? Json::array({s.center.x(), s.center.y()})
                                           : Json::array({s.center.x(), s.center.y(), s.center.z()});
    out["radius"] = s.radius;
    out["normal"] = nullptr;
    out["offset"] = nullptr;
  } else {
    out["center"] = nullptr;
    out["radius"] = nullptr;
    out["normal"] = s.model == Model::half ? Json::array({s.normal.x(), s.normal.y()})
                                           : Json::array({s.normal.x(), s.normal.y(), s.normal.z()});
    out["offset"] = s.offset;
  }
  return out;
}

Json to_json(const IsometryClass& c) {
  Json out;
  out["class"] = std::string(to_string(c.kind));
  if (c.order) out["order"] = *c.order;
  return out;
}

Json to_json(const Face& f) {
  Json out = to_json(f.surface());
  out.erase("model");
  out["side"] = f.side.sign;
  out["pairing_word"] = f.label;
  out["pairing_matrix"] = to_json(f.pairing);
  return out;
}

Json to_json(const DfVerdict& v) {
  Json out;
  out["is_df"] = v.is_df;
  out["common_direction"] =
      v.common_direction ? Json::array({v.common_direction->x(), v.common_direction->y(), v.common_direction->z()})
                         : Json(nullptr);
  out["ideal_vertex"] = v.ideal_vertex ? to_json(*v.ideal_vertex) : Json(nullptr);
  Json checks = Json::array();
  for (const FaceCheck& c : v.checks)
    checks.push_back({{"pairing_word", c.label},
                      {"d_minus_abar", c.d_minus_abar},
                      {"plane_at_infinity", c.plane_at_infinity},
                      {"passes", c.passes}});
  out["checks"] = checks;
  Json centers = Json::array();
  for (const HalfPoint& p : v.second_centers) centers.push_back(to_json(p));
  out["dc_centers"] = centers;
  out["notes"] = v.notes;
  return out;
}

Json to_json(const DomainApprox& d, const DfVerdict* verdict) {
  Json out;
  out["kind"] = d.kind == DomainApprox::Kind::dirichlet ? "dirichlet" : "ford";
  out["model_dim"] = d.model_dim;
  out["center"] = to_json(d.center);
  out["max_length"] = d.max_length;
  Json faces = Json::array();
  for (const Face& f : d.faces) faces.push_back(to_json(f));
  out["faces"] = faces;
  out["verdict"] = verdict ? to_json(*verdict) : Json(nullptr);
  Json flags = Json::array();
  if (d.stabilizer_nontrivial) flags.push_back("stabilizer_nontrivial");
  if (d.possibly_incomplete) flags.push_back("possibly_incomplete");
  out["flags"] = flags;
  out["bounded"] = std::string(to_string(d.bounded));
  out["stabilizer"] = d.stabilizer_words;
  out["torsion_witness"] = d.torsion_witness ? Json(*d.torsion_witness) : Json(nullptr);
  out["notes"] = d.notes;
  return out;
}

Json to_json(const CanonicalRegion& r) {
  Json out;
  auto ideal = [](std::optional<Complex> z) { return z ? to_json(*z) : Json("infinity"); };
  switch (r.shape) {
    case CanonicalRegion::Shape::horoball:
      out["shape"] = "horoball";
      out["base"] = ideal(r.base.boundary_value());
      out[r.base.infinite ? "height" : "diameter"] = r.size;
      break;
    case CanonicalRegion::Shape::cone:
      out["shape"] = "cone";
      out["axis"] = Json::array({ideal(r.axis.p), ideal(r.axis.q)});
      out["slope"] = r.slope;
      break;
    case CanonicalRegion::Shape::fixset:
      out["shape"] = "fixset";
      out["axis"] = Json::array({ideal(r.axis.p), ideal(r.axis.q)});
      break;
  }
  out["source"] = to_json(r.source);
  return out;
}

namespace {

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const DomainApprox& d) {
  // Bounding box of the traces in boundary coordinates.
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
  for (const Face& f : d.faces) {
    const GeneralizedSphere& s = f.surface();
    if (!s.is_sphere()) {
      const Vec3 base = s.offset * s.normal;
      xmin = std::min(xmin, base.x() - 0.5);
      xmax = std::max(xmax, base.x() + 0.5);
      ymin = std::min(ymin, base.y() - 0.5);
      ymax = std::max(ymax, base.y() + 0.5);
      continue;
    }
    xmin = std::min(xmin, s.center.x() - s.radius);
    xmax = std::max(xmax, s.center.x() + s.radius);
    ymin = std::min(ymin, s.center.y() - s.radius);
    ymax = std::max(ymax, s.center.y() + s.radius);
  }
  const bool plane2 = d.model_dim == 2;
  if (plane2) {
    ymin = 0.0;
    ymax = std::max(xmax - xmin, 1.0) * 0.75;
  }
  const double margin = 0.1 * std::max(xmax - xmin, ymax - ymin);
  xmin -= margin;
  xmax += margin;
  if (!plane2) ymin -= margin;
  ymax += margin;
  const double size = 600.0;
  const double scale = size / std::max(xmax - xmin, ymax - ymin);
  const double width = (xmax - xmin) * scale, height = (ymax - ymin) * scale;
  auto sx = [&](double x) { return fmt((x - xmin) * scale); };
  auto sy = [&](double y) { return fmt((ymax - y) * scale); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (plane2)
    out << "<line x1=\"0\" y1=\"" << sy(0.0) << "\" x2=\"" << fmt(width) << "\" y2=\"" << sy(0.0)
        << "\" stroke=\"gray\"/>\n";
  for (const Face& f : d.faces) {
    const GeneralizedSphere& s = f.surface();
    double lx, ly;
    if (s.is_sphere()) {
      const double r = s.radius * scale;
      if (plane2) {
        out << "<path d=\"M " << sx(s.center.x() - s.radius) << ' ' << sy(0.0) << " A " << fmt(r) << ' ' << fmt(r)
            << " 0 0 1 " << sx(s.center.x() + s.radius) << ' ' << sy(0.0) << "\" fill=\"none\" stroke=\"black\"/>\n";
        lx = s.center.x();
        ly = s.radius;
      } else {
        out << "<circle cx=\"" << sx(s.center.x()) << "\" cy=\"" << sy(s.center.y()) << "\" r=\"" << fmt(r)
            << "\" fill=\"none\" stroke=\"black\"/>\n";
        lx = s.center.x();
        ly = s.center.y() + s.radius;
      }
    } else {
      const Vec3 base = s.offset * s.normal;
      const Vec3 along(-s.normal.y(), s.normal.x(), 0.0);
      const double reach = 2.0 * std::max(xmax - xmin, ymax - ymin);
      if (plane2) {
        out << "<line x1=\"" << sx(base.x()) << "\" y1=\"" << sy(0.0) << "\" x2=\"" << sx(base.x()) << "\" y2=\""
            << sy(ymax) << "\" stroke=\"black\"/>\n";
        lx = base.x();
        ly = 0.5 * ymax;
      } else {
        const Vec3 p = base - reach * along, q = base + reach * along;
        out << "<line x1=\"" << sx(p.x()) << "\" y1=\"" << sy(p.y()) << "\" x2=\"" << sx(q.x()) << "\" y2=\""
            << sy(q.y()) << "\" stroke=\"black\"/>\n";
        lx = base.x();
        ly = base.y();
      }
    }
    out << "<text x=\"" << sx(lx) << "\" y=\"" << sy(ly) << "\" font-size=\"12\" fill=\"blue\">" << xml_escape(f.label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace hypdom
