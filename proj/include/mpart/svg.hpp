#pragma once
// Deterministic SVG 1.1 drawings of planar instances and certificates.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "mpart/certificate.hpp"
#include "mpart/errors.hpp"
#include "mpart/io.hpp"
#include "mpart/parity.hpp"

namespace mpart {

namespace svg {

inline constexpr const char* kPositive = "#add8e6";  // light blue
inline constexpr const char* kNegative = "#90ee90";  // green
inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> p{"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  return p;
}
inline const std::string& color(std::size_t i) { return palette()[i % palette().size()]; }

using P = Vec2<double>;

class Canvas {
 public:
  void include(P p) {
    lo_.x = std::min(lo_.x, p.x);
    lo_.y = std::min(lo_.y, p.y);
    hi_.x = std::max(hi_.x, p.x);
    hi_.y = std::max(hi_.y, p.y);
  }
  void include(const Point2& p) { include(to_double(p)); }
  void include_disk(const Disk& d) {
    double r = d.radius.get_d();
    P c = to_double(d.center);
    include(P{c.x - r, c.y - r});
    include(P{c.x + r, c.y + r});
  }

  /// Fixes the view box; call after every include and before drawing.
  void freeze() {
    if (lo_.x > hi_.x) lo_ = {-1, -1}, hi_ = {1, 1};
    double span = std::max({hi_.x - lo_.x, hi_.y - lo_.y, 1e-9});
    double m = 0.08 * span + 0.5;
    lo_.x -= m, lo_.y -= m, hi_.x += m, hi_.y += m;
    scale_ = kWidth / std::max(hi_.x - lo_.x, hi_.y - lo_.y);
  }

  std::vector<P> box() const { return {{lo_.x, lo_.y}, {hi_.x, lo_.y}, {hi_.x, hi_.y}, {lo_.x, hi_.y}}; }

  void polygon(const std::vector<P>& pts, const std::string& fill, const std::string& stroke, double opacity) {
    body_ << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << num(sx(pts[i].x)) << ',' << num(sy(pts[i].y));
    body_ << "\" fill=\"" << fill << "\" fill-opacity=\"" << num(opacity) << "\" stroke=\"" << stroke
          << "\" stroke-width=\"1\"/>\n";
  }
  void disk(const Disk& d, const std::string& fill) {
    P c = to_double(d.center);
    body_ << "<circle cx=\"" << num(sx(c.x)) << "\" cy=\"" << num(sy(c.y)) << "\" r=\"" << num(d.radius.get_d() * scale_)
          << "\" fill=\"" << fill << "\" fill-opacity=\"0.45\" stroke=\"" << fill << "\" stroke-width=\"1\"/>\n";
  }
  void dot(P p, const std::string& fill, double r = 3.5) {
    body_ << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y)) << "\" r=\"" << num(r) << "\" fill=\"" << fill
          << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  }
  void segment(P a, P b, const std::string& stroke, double width) {
    body_ << "<line x1=\"" << num(sx(a.x)) << "\" y1=\"" << num(sy(a.y)) << "\" x2=\"" << num(sx(b.x)) << "\" y2=\""
          << num(sy(b.y)) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"/>\n";
  }
  /// The line clipped to the view box, with a short tick toward its positive side.
  void line(const OrientedLine2& l, const std::string& stroke) {
    P n = to_double(l.normal().vec());
    double c = l.offset().get_d();
    std::vector<P> hits;
    auto box_pts = box();
    for (std::size_t i = 0; i < 4; ++i) {
      P a = box_pts[i], b = box_pts[(i + 1) % 4];
      double fa = n.x * a.x + n.y * a.y - c, fb = n.x * b.x + n.y * b.y - c;
      if ((fa <= 0 && fb >= 0) || (fa >= 0 && fb <= 0)) {
        if (fa == fb) continue;
        double s = fa / (fa - fb);
        hits.push_back({a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)});
      }
    }
    if (hits.size() < 2) return;
    auto [mn, mx] = std::minmax_element(hits.begin(), hits.end(), [](const P& a, const P& b) {
      return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    segment(*mn, *mx, stroke, 2);
    P mid{(mn->x + mx->x) / 2, (mn->y + mx->y) / 2};
    double len = std::hypot(n.x, n.y);
    double tick = 12 / scale_;
    segment(mid, {mid.x + tick * n.x / len, mid.y + tick * n.y / len}, stroke, 2);
  }
  void label(P p, const std::string& text) {
    body_ << "<text x=\"" << num(sx(p.x)) << "\" y=\"" << num(sy(p.y)) << "\" font-family=\"sans-serif\" font-size=\"12\">"
          << text << "</text>\n";
  }

  std::string str(const std::string& title) const {
    std::ostringstream out;
    double h = (hi_.y - lo_.y) * scale_;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(kWidth) << "\" height=\"" << num(h)
        << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(h) << "\">\n"
        << "<title>" << title << "</title>\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(h) << "\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  static constexpr double kWidth = 640;
  static std::string num(double v) {
    if (std::fabs(v) < 5e-4) v = 0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
  }
  double sx(double x) const { return (x - lo_.x) * scale_; }
  double sy(double y) const { return (hi_.y - y) * scale_; }

  P lo_{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  P hi_{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  double scale_ = 1;
  std::ostringstream body_;
};

inline void include_mass(Canvas& c, const Mass2D& m) {
  if (m.is_points())
    for (const auto& wp : m.as_points().points) c.include(wp.p);
  else if (m.is_polygon())
    for (const auto& v : m.as_polygon().vertices) c.include(v);
  else
    c.include_disk(m.as_disk());
}

inline void draw_mass(Canvas& c, const Mass2D& m, const std::string& col) {
  if (m.is_points())
    for (const auto& wp : m.as_points().points) c.dot(to_double(wp.p), col);
  else if (m.is_polygon()) {
    std::vector<P> pts;
    for (const auto& v : m.as_polygon().vertices) pts.push_back(to_double(v));
    c.polygon(pts, col, col, 0.45);
  } else {
    c.disk(m.as_disk(), col);
  }
}

/// Light blue / green two-coloring of the view box by line parity.
inline void draw_parity(Canvas& c, const std::vector<OrientedLine2>& lines) {
  std::vector<P> normals;
  std::vector<double> offsets;
  for (const auto& l : lines) {
    normals.push_back(to_double(l.normal().vec()));
    offsets.push_back(l.offset().get_d());
  }
  for (const auto& [cell, sign] : detail::parity_cells<double>(c.box(), normals, offsets))
    c.polygon(cell, sign > 0 ? kPositive : kNegative, "none", 1.0);
}

}  // namespace svg

/// SVG for an instance or certificate document. 3D payloads are drawn only
/// when a certificate supplies the plane to draw in.
inline std::string plot_document(const Json& doc) {
  bool is_cert = doc.contains("solution") && doc.contains("instance");
  Instance inst = parse_instance(is_cert ? doc["instance"] : doc);
  const Json* sol = is_cert ? &doc["solution"] : nullptr;
  svg::Canvas c;
  const std::string& kind = inst.kind;
  std::string title = kind + (is_cert ? " certificate" : " instance");

  if (kind == "lines3" || kind == "horizontal") {
    if (!sol) throw UnsupportedKind(kind + " instances are 3D; plot a certificate to get a plane");
    auto frame = VerticalPlaneFrame::at(io::rat(io::field(*sol, "t", "solution"), "solution.t"));
    OrientedLine2 cut = io::line2(io::field(*sol, "cut", "solution"), "solution.cut");
    std::vector<Mass2D> ms;
    if (kind == "lines3") {
      for (const auto& pts : detail::slice_all(inst.lines3, frame)) ms.push_back(Mass2D::unit_points(pts));
    } else {
      for (const auto& a : detail::plane_assignments(inst)) ms.push_back(a(frame.frame()));
    }
    for (const auto& m : ms) svg::include_mass(c, m);
    c.freeze();
    for (std::size_t i = 0; i < ms.size(); ++i) svg::draw_mass(c, ms[i], svg::color(i));
    c.line(cut, "black");
    return c.str(title);
  }
  if (kind == "transversal") throw UnsupportedKind("transversal payloads are 3D with no plane frame");

  if (kind == "parity" && inst.mode == "lifted") {
    // Draw the line as the x-axis; masses as marks, cuts as vertical ticks.
    std::vector<Cut1D> cuts;
    if (sol) cuts = detail::cuts1d(*sol);
    for (const auto& m : inst.masses1d) {
      if (m.is_points())
        for (const auto& [x, w] : m.as_points()) c.include(svg::P{x.get_d(), 0});
      else {
        c.include(svg::P{m.as_interval().a.get_d(), 0});
        c.include(svg::P{m.as_interval().b.get_d(), 0});
      }
    }
    for (const auto& k : cuts) c.include(svg::P{k.at.get_d(), 0});
    c.include(svg::P{0, 1});
    c.include(svg::P{0, -1});
    c.freeze();
    if (!cuts.empty()) {
      std::vector<OrientedLine2> vert;
      for (const auto& k : cuts) vert.emplace_back(Direction2(Rat(k.orientation), Rat(0)), Rat(k.orientation * k.at));
      svg::draw_parity(c, vert);
    }
    for (std::size_t i = 0; i < inst.masses1d.size(); ++i) {
      const auto& m = inst.masses1d[i];
      double y = -0.2 * static_cast<double>(i);
      if (m.is_points())
        for (const auto& [x, w] : m.as_points()) c.dot({x.get_d(), y}, svg::color(i));
      else
        c.segment({m.as_interval().a.get_d(), y}, {m.as_interval().b.get_d(), y}, svg::color(i), 5);
    }
    for (const auto& k : cuts) c.segment({k.at.get_d(), -1}, {k.at.get_d(), 1}, "black", 2);
    return c.str(title);
  }

  std::vector<Mass2D> ms;
  std::vector<OrientedLine2> lines;
  bool parity = kind == "parity";
  if (kind == "product") {
    for (const auto& a : inst.assignments) ms.push_back(a.mass.at(0));
    if (sol) {
      const Json& ns = io::array_field(*sol, "normals", "solution");
      for (std::size_t i = 0; i < ns.size(); ++i)
        lines.emplace_back(Direction2(io::point2(ns[i], "solution.normals")), Rat(0));
    }
    c.include(svg::P{0, 0});
  } else {
    ms = inst.masses;
    if (parity) {
      lines = sol ? detail::lines2(*sol, "lines") : inst.lines;
      c.include(svg::P{0, 0});
    } else if (sol && kind == "hs2d") {
      lines.push_back(io::line2(io::field(*sol, "cut", "solution"), "solution.cut"));
    }
  }
  for (const auto& m : ms) svg::include_mass(c, m);
  c.freeze();
  if (parity && !lines.empty()) svg::draw_parity(c, lines);
  for (std::size_t i = 0; i < ms.size(); ++i) svg::draw_mass(c, ms[i], svg::color(i));
  for (const auto& l : lines) c.line(l, "black");
  if (kind == "centerpoint" && sol) {
    Point2 p = io::point2(io::field(*sol, "point", "solution"), "solution.point");
    c.dot(to_double(p), "black", 6);
  }
  return c.str(title);
}

}  // namespace mpart
