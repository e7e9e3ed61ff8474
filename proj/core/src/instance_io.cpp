#include "incidence/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace incidence {

using nlohmann::json;

namespace {

json bound_json(const Bound& b) { return b ? json(to_string(*b)) : json(nullptr); }

Rational rational_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  throw InvalidInput("expected a rational given as a string or integer, got " + j.dump());
}

Bound bound_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return rational_json(j);
}

json rationals_json(const std::vector<Rational>& v) {
  json arr = json::array();
  for (const Rational& x : v) arr.push_back(to_string(x));
  return arr;
}

std::vector<Rational> rationals_from(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of rationals");
  std::vector<Rational> out;
  for (const json& x : j) out.push_back(rational_json(x));
  return out;
}

json point_json(const Point& p) { return rationals_json(p.coords); }

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw InvalidInput(std::string("missing field '") + name + "'");
  return *it;
}

json to_json_value(const Range& range) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        json j;
        if constexpr (std::is_same_v<T, Box>) {
          j["type"] = "box";
          json lo = json::array(), hi = json::array();
          for (std::size_t i = 0; i < r.dim(); ++i) {
            lo.push_back(bound_json(r.lo[i]));
            hi.push_back(bound_json(r.hi[i]));
          }
          j["lo"] = lo;
          j["hi"] = hi;
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          j["type"] = "halfspace";
          if (r.kind == HalfspaceKind::general) {
            j["kind"] = "general";
            j["normal"] = rationals_json(r.normal);
            j["rhs"] = to_string(r.rhs);
            j["sense"] = r.less_equal ? "<=" : ">=";
          } else {
            j["kind"] = r.kind == HalfspaceKind::upper ? "upper" : "lower";
            j["slopes"] = rationals_json(r.plane.slopes);
            j["offset"] = to_string(r.plane.offset);
          }
        } else if constexpr (std::is_same_v<T, Ball>) {
          j["type"] = "ball";
          j["center"] = point_json(r.center);
          j["radius2"] = to_string(r.radius2);
        } else if constexpr (std::is_same_v<T, Line>) {
          j["type"] = "line";
          j["slope"] = to_string(r.slope);
          j["intercept"] = to_string(r.intercept);
        } else if constexpr (std::is_same_v<T, Wedge>) {
          j["type"] = "wedge";
          j["dim"] = r.dim;
          j["a"] = to_string(r.a);
          j["b"] = to_string(r.b);
          j["c"] = to_string(r.c);
        } else if constexpr (std::is_same_v<T, Curtain>) {
          j["type"] = "curtain";
          j["a"] = to_string(r.a);
          j["b"] = to_string(r.b);
          j["lo"] = bound_json(r.lo);
          j["hi"] = bound_json(r.hi);
        } else if constexpr (std::is_same_v<T, Triangle>) {
          j["type"] = "triangle";
          j["vertices"] = json::array({point_json(r.v[0]), point_json(r.v[1]), point_json(r.v[2])});
        } else {
          j["type"] = "polyhedron";
          j["dimension"] = r.dimension;
          json facets = json::array();
          for (const Facet& f : r.facets) facets.push_back({{"normal", rationals_json(f.normal)}, {"rhs", to_string(f.rhs)}});
          j["facets"] = facets;
        }
        return j;
      },
      range);
}

Range range_from_json(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "box") {
    const json& lo = field(j, "lo");
    const json& hi = field(j, "hi");
    if (!lo.is_array() || !hi.is_array()) throw InvalidInput("box bounds must be arrays");
    std::vector<Bound> l, h;
    for (const json& x : lo) l.push_back(bound_from(x));
    for (const json& x : hi) h.push_back(bound_from(x));
    return make_box(std::move(l), std::move(h));
  }
  if (type == "halfspace") {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "general") {
      const std::string sense = j.value("sense", std::string("<="));
      if (sense != "<=" && sense != ">=") throw InvalidInput("halfspace sense must be <= or >=");
      return general_halfspace(rationals_from(field(j, "normal")), rational_json(field(j, "rhs")), sense == "<=");
    }
    Hyperplane plane{rationals_from(field(j, "slopes")), rational_json(field(j, "offset"))};
    if (kind == "upper") return upper_halfspace(std::move(plane));
    if (kind == "lower") return lower_halfspace(std::move(plane));
    throw InvalidInput("unknown halfspace kind '" + kind + "'");
  }
  if (type == "ball") return make_ball(Point(rationals_from(field(j, "center"))), rational_json(field(j, "radius2")));
  if (type == "line") return Line{rational_json(field(j, "slope")), rational_json(field(j, "intercept"))};
  if (type == "wedge") {
    const int dim = field(j, "dim").get<int>();
    if (dim != 2 && dim != 3) throw InvalidInput("wedge dimension must be 2 or 3");
    return Wedge{dim, rational_json(field(j, "a")), rational_json(field(j, "b")), rational_json(field(j, "c"))};
  }
  if (type == "curtain") {
    return Curtain{rational_json(field(j, "a")), rational_json(field(j, "b")), bound_from(j.value("lo", json())),
                   bound_from(j.value("hi", json()))};
  }
  if (type == "triangle") {
    const json& v = field(j, "vertices");
    if (!v.is_array() || v.size() != 3) throw InvalidInput("triangle needs exactly 3 vertices");
    Triangle t;
    for (int i = 0; i < 3; ++i) {
      t.v[i] = Point(rationals_from(v[i]));
      if (t.v[i].dim() != 2) throw InvalidInput("triangle vertices must be 2-dimensional");
    }
    return t;
  }
  if (type == "polyhedron") {
    Polyhedron p;
    p.dimension = field(j, "dimension").get<std::size_t>();
    for (const json& f : field(j, "facets")) {
      Facet facet{rationals_from(field(f, "normal")), rational_json(field(f, "rhs"))};
      if (facet.normal.size() != p.dimension) throw InvalidInput("facet normal dimension mismatch");
      p.facets.push_back(std::move(facet));
    }
    return p;
  }
  throw InvalidInput("unknown range type '" + type + "'");
}

}  // namespace

std::string to_json(const Instance& inst, int indent) {
  json j;
  j["dimension"] = inst.dimension;
  json pts = json::array();
  for (const Point& p : inst.points) pts.push_back(point_json(p));
  j["points"] = pts;
  json rs = json::array();
  for (const Range& r : inst.ranges) rs.push_back(to_json_value(r));
  j["ranges"] = rs;
  j["k"] = inst.k ? json(*inst.k) : json(nullptr);
  j["provenance"] = inst.provenance;
  return j.dump(indent);
}

Instance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  try {
    Instance inst;
    inst.dimension = field(j, "dimension").get<std::size_t>();
    for (const json& p : field(j, "points")) {
      Point pt(rationals_from(p));
      if (pt.dim() != inst.dimension) throw InvalidInput("point dimension does not match instance dimension");
      inst.points.push_back(std::move(pt));
    }
    for (const json& r : field(j, "ranges")) inst.ranges.push_back(range_from_json(r));
    if (j.contains("k") && !j["k"].is_null()) inst.k = j["k"].get<unsigned>();
    if (j.contains("provenance") && j["provenance"].is_object()) {
      for (const auto& [key, value] : j["provenance"].items()) {
        inst.provenance[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    return inst;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad instance field: ") + e.what());
  }
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << to_json(inst) << '\n';
}

std::string range_to_json(const Range& r) { return to_json_value(r).dump(); }
std::string point_to_json(const Point& p) { return point_json(p).dump(); }

std::string fingerprint(const std::vector<Point>& points, const std::vector<Range>& ranges) {
  // FNV-1a over the compact serialization.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const Point& p : points) mix(point_to_json(p));
  mix("|");
  for (const Range& r : ranges) mix(range_to_json(r));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace incidence
