#pragma once

// JSON encoding of instances. Rationals are "p/q" strings; integers may also
// be given as JSON integers when reading.

#include <string>
#include <vector>

#include <json.hpp>

#include "mpart/geom.hpp"
#include "mpart/mass.hpp"
#include "mpart/parity.hpp"
#include "mpart/subspace.hpp"

namespace mpart {

using Json = nlohmann::ordered_json;

namespace io {

[[noreturn]] inline void bad(const std::string& where, const std::string& what) {
  throw InvalidInput(where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

inline const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) bad(where + "." + key, "expected an array");
  return a;
}

inline Json rat(const Rat& q) { return format_rat(q); }

inline Rat rat(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const InvalidInput&) {
      bad(where, "not a rational: '" + j.get<std::string>() + "'");
    }
  }
  if (j.is_number_integer()) return Rat(j.get<long>());
  bad(where, "rationals must be strings like \"p/q\"");
}

inline Json point(const Point2& p) { return Json::array({rat(p.x), rat(p.y)}); }
inline Json point(const Point3& p) { return Json::array({rat(p.x), rat(p.y), rat(p.z)}); }

inline Point2 point2(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where, "expected [x, y]");
  return {rat(j[0], where + "[0]"), rat(j[1], where + "[1]")};
}
inline Point3 point3(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) bad(where, "expected [x, y, z]");
  return {rat(j[0], where + "[0]"), rat(j[1], where + "[1]"), rat(j[2], where + "[2]")};
}

inline Json line(const OrientedLine2& l) {
  return Json{{"normal", point(l.normal().vec())}, {"offset", rat(l.offset())}};
}
inline OrientedLine2 line2(const Json& j, const std::string& where) {
  Point2 n = point2(field(j, "normal", where), where + ".normal");
  if (n.x == 0 && n.y == 0) bad(where + ".normal", "zero normal");
  return OrientedLine2(Direction2(n), rat(field(j, "offset", where), where + ".offset"));
}

inline Json line(const Line3& l) { return Json{{"base", point(l.base)}, {"dir", point(l.dir.vec())}}; }
inline Line3 line3(const Json& j, const std::string& where) {
  Point3 d = point3(field(j, "dir", where), where + ".dir");
  if (d.x == 0 && d.y == 0 && d.z == 0) bad(where + ".dir", "zero direction");
  return {point3(field(j, "base", where), where + ".base"), Direction3(d.x, d.y, d.z)};
}

inline std::vector<Line3> lines3(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of lines");
  std::vector<Line3> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(line3(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}
inline Json lines(const std::vector<Line3>& ls) {
  Json a = Json::array();
  for (const auto& l : ls) a.push_back(line(l));
  return a;
}

inline bool unit_weights(const std::vector<Rat>& w) {
  for (const auto& x : w)
    if (x != 1) return false;
  return true;
}

inline Json mass(const Mass2D& m) {
  if (m.is_points()) {
    Json pts = Json::array(), ws = Json::array();
    std::vector<Rat> w;
    for (const auto& wp : m.as_points().points) {
      pts.push_back(point(wp.p));
      ws.push_back(rat(wp.w));
      w.push_back(wp.w);
    }
    Json j{{"type", "points"}, {"points", pts}};
    if (!unit_weights(w)) j["weights"] = ws;
    return j;
  }
  if (m.is_polygon()) {
    Json vs = Json::array();
    for (const auto& v : m.as_polygon().vertices) vs.push_back(point(v));
    return Json{{"type", "polygon"}, {"vertices", vs}};
  }
  return Json{{"type", "disk"}, {"center", point(m.as_disk().center)}, {"radius", rat(m.as_disk().radius)}};
}

inline std::vector<Rat> weights(const Json& j, std::size_t n, const std::string& where) {
  std::vector<Rat> w(n, Rat(1));
  if (!j.contains("weights")) return w;
  const Json& a = array_field(j, "weights", where);
  if (a.size() != n) bad(where + ".weights", "expected one weight per point");
  for (std::size_t i = 0; i < n; ++i) w[i] = rat(a[i], where + ".weights[" + std::to_string(i) + "]");
  return w;
}

inline Mass2D mass2d(const Json& j, const std::string& where) {
  const Json& type = field(j, "type", where);
  if (!type.is_string()) bad(where + ".type", "expected a string");
  std::string t = type.get<std::string>();
  try {
    if (t == "points") {
      const Json& pts = array_field(j, "points", where);
      auto w = weights(j, pts.size(), where);
      std::vector<WeightedPoint> out;
      for (std::size_t i = 0; i < pts.size(); ++i)
        out.push_back({point2(pts[i], where + ".points[" + std::to_string(i) + "]"), w[i]});
      return Mass2D::points(std::move(out));
    }
    if (t == "polygon") {
      const Json& vs = array_field(j, "vertices", where);
      std::vector<Point2> out;
      for (std::size_t i = 0; i < vs.size(); ++i)
        out.push_back(point2(vs[i], where + ".vertices[" + std::to_string(i) + "]"));
      return Mass2D::polygon(std::move(out));
    }
    if (t == "disk")
      return Mass2D::disk(point2(field(j, "center", where), where + ".center"),
                          rat(field(j, "radius", where), where + ".radius"));
  } catch (const InvalidInput& e) {
    std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    bad(where, msg);
  }
  bad(where + ".type", "unknown mass type '" + t + "'");
}

inline std::vector<Mass2D> masses2d(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of masses");
  std::vector<Mass2D> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(mass2d(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}
inline Json masses(const std::vector<Mass2D>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(mass(m));
  return a;
}

inline Json points3(const std::vector<WeightedPoint3>& pts) {
  Json ps = Json::array(), ws = Json::array();
  std::vector<Rat> w;
  for (const auto& q : pts) {
    ps.push_back(point(q.p));
    ws.push_back(rat(q.w));
    w.push_back(q.w);
  }
  Json j{{"points", ps}};
  if (!unit_weights(w)) j["weights"] = ws;
  return j;
}
inline std::vector<WeightedPoint3> points3(const Json& j, const std::string& where) {
  const Json& ps = array_field(j, "points", where);
  if (ps.empty()) bad(where + ".points", "expected at least one point");
  auto w = weights(j, ps.size(), where);
  std::vector<WeightedPoint3> out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (sign_of(w[i]) <= 0) bad(where + ".weights", "weights must be positive");
    out.push_back({point3(ps[i], where + ".points[" + std::to_string(i) + "]"), w[i]});
  }
  return out;
}

inline Json mass(const Mass1D& m) {
  if (m.is_points()) {
    Json ps = Json::array(), ws = Json::array();
    std::vector<Rat> w;
    for (const auto& [x, wt] : m.as_points()) {
      ps.push_back(rat(x));
      ws.push_back(rat(wt));
      w.push_back(wt);
    }
    Json j{{"type", "points1d"}, {"points", ps}};
    if (!unit_weights(w)) j["weights"] = ws;
    return j;
  }
  return Json{{"type", "interval"}, {"a", rat(m.as_interval().a)}, {"b", rat(m.as_interval().b)}};
}
inline Mass1D mass1d(const Json& j, const std::string& where) {
  std::string t = field(j, "type", where).get<std::string>();
  try {
    if (t == "points1d") {
      const Json& ps = array_field(j, "points", where);
      auto w = weights(j, ps.size(), where);
      Mass1D::Points out;
      for (std::size_t i = 0; i < ps.size(); ++i)
        out.emplace_back(rat(ps[i], where + ".points[" + std::to_string(i) + "]"), w[i]);
      return Mass1D::points(std::move(out));
    }
    if (t == "interval")
      return Mass1D::interval(rat(field(j, "a", where), where + ".a"), rat(field(j, "b", where), where + ".b"));
  } catch (const InvalidInput& e) {
    std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    bad(where, msg);
  }
  bad(where + ".type", "unknown 1D mass type '" + t + "'");
}

}  // namespace io

// ---------------------------------------------------------------------------

/// One assignment of a product or horizontal instance.
struct AssignmentSpec {
  std::string family;  ///< constant | strip | project_points | project_ball | slice_lines
  std::vector<Mass2D> mass;  ///< constant, strip (exactly one element)
  std::size_t other = 0;     ///< strip: index of the other line
  Rat width{0};              ///< strip
  std::vector<WeightedPoint3> points;  ///< project_points
  Point3 center;                       ///< project_ball
  Rat radius{0};                       ///< project_ball
  std::vector<Line3> lines;            ///< slice_lines
};

namespace io {

inline Json assignment(const AssignmentSpec& a) {
  Json j{{"family", a.family}};
  if (a.family == "constant") {
    j["mass"] = mass(a.mass.at(0));
  } else if (a.family == "strip") {
    j["mass"] = mass(a.mass.at(0));
    j["other"] = a.other;
    j["width"] = rat(a.width);
  } else if (a.family == "project_points") {
    Json p = points3(a.points);
    for (auto& [k, v] : p.items()) j[k] = v;
  } else if (a.family == "project_ball") {
    j["center"] = point(a.center);
    j["radius"] = rat(a.radius);
  } else {
    j["lines"] = lines(a.lines);
  }
  return j;
}

inline AssignmentSpec assignment(const Json& j, const std::string& where) {
  AssignmentSpec a;
  a.family = field(j, "family", where).get<std::string>();
  if (a.family == "constant") {
    a.mass.push_back(mass2d(field(j, "mass", where), where + ".mass"));
  } else if (a.family == "strip") {
    a.mass.push_back(mass2d(field(j, "mass", where), where + ".mass"));
    const Json& o = field(j, "other", where);
    if (!o.is_number_unsigned()) bad(where + ".other", "expected a line index");
    a.other = o.get<std::size_t>();
    a.width = rat(field(j, "width", where), where + ".width");
    if (sign_of(a.width) <= 0) bad(where + ".width", "strip width must be positive");
  } else if (a.family == "project_points") {
    a.points = points3(j, where);
  } else if (a.family == "project_ball") {
    a.center = point3(field(j, "center", where), where + ".center");
    a.radius = rat(field(j, "radius", where), where + ".radius");
    if (sign_of(a.radius) <= 0) bad(where + ".radius", "radius must be positive");
  } else if (a.family == "slice_lines") {
    a.lines = lines3(field(j, "lines", where), where + ".lines");
    for (std::size_t i = 0; i < a.lines.size(); ++i)
      if (a.lines[i].dir.x() == 0 && a.lines[i].dir.y() == 0)
        bad(where + ".lines[" + std::to_string(i) + "]", "slice lines must not be vertical");
    if (a.lines.empty()) bad(where + ".lines", "expected at least one line");
  } else {
    bad(where + ".family", "unknown assignment family '" + a.family + "'");
  }
  return a;
}

}  // namespace io

inline ProductAssignment build_product_assignment(const AssignmentSpec& a) {
  if (a.family == "constant") return constant_assignment(a.mass.at(0));
  if (a.family == "strip") return strip_assignment(a.mass.at(0), a.other, a.width);
  throw InvalidInput("assignment family '" + a.family + "' is not defined on tuples of origin lines");
}

inline MassAssignment2D build_plane_assignment(const AssignmentSpec& a) {
  if (a.family == "project_points") return project_points_assignment(a.points);
  if (a.family == "project_ball") return project_ball_assignment(a.center, a.radius);
  if (a.family == "slice_lines") return as_mass_assignment(slice_lines_assignment(a.lines));
  throw InvalidInput("assignment family '" + a.family + "' is not defined on planes");
}

// ---------------------------------------------------------------------------

struct Instance {
  std::string kind;
  Lines3Instance lines3;                              ///< lines3
  std::vector<Mass2D> masses;                         ///< hs2d, centerpoint (one), parity origin
  std::vector<std::vector<WeightedPoint3>> masses3;   ///< transversal
  std::string mode;                                   ///< parity: origin | lifted
  std::vector<Mass1D> masses1d;                       ///< parity lifted
  std::vector<OrientedLine2> lines;                   ///< parity: optional arrangement
  std::vector<AssignmentSpec> assignments;            ///< product, horizontal
};

inline const std::vector<std::string>& instance_kinds() {
  static const std::vector<std::string> kinds{"lines3",  "hs2d",    "centerpoint", "transversal",
                                              "parity", "product", "horizontal"};
  return kinds;
}

inline Instance parse_instance(const Json& j) {
  using namespace io;
  Instance inst;
  const Json& k = field(j, "kind", "instance");
  if (!k.is_string()) bad("instance.kind", "expected a string");
  inst.kind = k.get<std::string>();
  if (inst.kind == "lines3") {
    inst.lines3.R = lines3(field(j, "R", "instance"), "R");
    inst.lines3.B = lines3(field(j, "B", "instance"), "B");
    inst.lines3.G = lines3(field(j, "G", "instance"), "G");
  } else if (inst.kind == "hs2d") {
    inst.masses = masses2d(field(j, "masses", "instance"), "masses");
    if (inst.masses.size() != 2) bad("masses", "hs2d needs exactly two masses");
  } else if (inst.kind == "centerpoint") {
    inst.masses.push_back(mass2d(field(j, "mass", "instance"), "mass"));
    if (!inst.masses[0].is_points()) bad("mass", "centerpoint needs a point mass");
  } else if (inst.kind == "transversal") {
    const Json& ms = array_field(j, "masses", "instance");
    for (std::size_t i = 0; i < ms.size(); ++i) inst.masses3.push_back(points3(ms[i], "masses[" + std::to_string(i) + "]"));
  } else if (inst.kind == "parity") {
    inst.mode = field(j, "mode", "instance").get<std::string>();
    if (inst.mode == "origin") {
      inst.masses = masses2d(field(j, "masses", "instance"), "masses");
    } else if (inst.mode == "lifted") {
      const Json& ms = array_field(j, "masses", "instance");
      for (std::size_t i = 0; i < ms.size(); ++i) inst.masses1d.push_back(mass1d(ms[i], "masses[" + std::to_string(i) + "]"));
    } else {
      bad("instance.mode", "expected 'origin' or 'lifted'");
    }
    if (j.contains("lines")) {
      const Json& ls = array_field(j, "lines", "instance");
      for (std::size_t i = 0; i < ls.size(); ++i) inst.lines.push_back(line2(ls[i], "lines[" + std::to_string(i) + "]"));
    }
  } else if (inst.kind == "product" || inst.kind == "horizontal") {
    const Json& as = array_field(j, "assignments", "instance");
    for (std::size_t i = 0; i < as.size(); ++i)
      inst.assignments.push_back(assignment(as[i], "assignments[" + std::to_string(i) + "]"));
  } else {
    bad("instance.kind", "unknown kind '" + inst.kind + "'");
  }
  return inst;
}

inline Json instance_json(const Instance& inst) {
  using namespace io;
  Json j{{"kind", inst.kind}};
  if (inst.kind == "lines3") {
    j["R"] = lines(inst.lines3.R);
    j["B"] = lines(inst.lines3.B);
    j["G"] = lines(inst.lines3.G);
  } else if (inst.kind == "hs2d") {
    j["masses"] = masses(inst.masses);
  } else if (inst.kind == "centerpoint") {
    j["mass"] = mass(inst.masses.at(0));
  } else if (inst.kind == "transversal") {
    j["masses"] = Json::array();
    for (const auto& m : inst.masses3) j["masses"].push_back(points3(m));
  } else if (inst.kind == "parity") {
    j["mode"] = inst.mode;
    if (inst.mode == "origin") {
      j["masses"] = masses(inst.masses);
    } else {
      j["masses"] = Json::array();
      for (const auto& m : inst.masses1d) j["masses"].push_back(mass(m));
    }
    if (!inst.lines.empty()) {
      j["lines"] = Json::array();
      for (const auto& l : inst.lines) j["lines"].push_back(line(l));
    }
  } else {
    j["assignments"] = Json::array();
    for (const auto& a : inst.assignments) j["assignments"].push_back(assignment(a));
  }
  return j;
}

}  // namespace mpart
