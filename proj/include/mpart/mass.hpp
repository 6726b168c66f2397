#pragma once

// Planar masses (weighted points, convex polygons, disks), their half-plane
// measures, and mass assignments over 2-planes of R^3.

#include <cmath>
#include <cstdio>
#include <memory>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mpart/geom.hpp"

namespace mpart {

/// A measure value: exact for point and polygon masses, a double for disks.
class Quantity {
 public:
  Quantity() : v_(Rat(0)) {}
  Quantity(Rat q) : v_(std::move(q)) {}  // NOLINT(google-explicit-constructor)
  Quantity(double d) : v_(d) {}          // NOLINT(google-explicit-constructor)

  bool exact() const { return std::holds_alternative<Rat>(v_); }
  const Rat& rat() const {
    if (!exact()) throw InvalidInput("quantity is not exact");
    return std::get<Rat>(v_);
  }
  double approx() const { return exact() ? std::get<Rat>(v_).get_d() : std::get<double>(v_); }

  friend Quantity operator+(const Quantity& a, const Quantity& b) {
    if (a.exact() && b.exact()) return Quantity(Rat(a.rat() + b.rat()));
    return Quantity(a.approx() + b.approx());
  }
  friend Quantity operator-(const Quantity& a, const Quantity& b) {
    if (a.exact() && b.exact()) return Quantity(Rat(a.rat() - b.rat()));
    return Quantity(a.approx() - b.approx());
  }
  friend Quantity operator-(const Quantity& a) {
    return a.exact() ? Quantity(Rat(-a.rat())) : Quantity(-a.approx());
  }
  Quantity abs() const { return exact() ? Quantity(Rat(rat_abs(rat()))) : Quantity(std::fabs(approx())); }

  /// |this| <= tol; exact comparison when exact and tol == 0.
  bool within(double tol) const {
    if (exact() && tol == 0) return rat() == 0;
    return exact() ? rat_abs(rat()) <= exact_rat(tol) : std::fabs(approx()) <= tol;
  }

  std::string str() const;

 private:
  std::variant<Rat, double> v_;
};

inline std::string Quantity::str() const {
  if (exact()) return format_rat(rat());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", approx());
  return buf;
}

// ---------------------------------------------------------------------------

struct WeightedPoint {
  Point2 p;
  Rat w{1};
};

struct WeightedPoints {
  std::vector<WeightedPoint> points;
};
struct ConvexPolygon {
  std::vector<Point2> vertices;  ///< counterclockwise, strictly convex
};
struct Disk {
  Point2 center;
  Rat radius;
};

class Mass2D {
 public:
  using Variant = std::variant<WeightedPoints, ConvexPolygon, Disk>;

  static Mass2D points(std::vector<WeightedPoint> pts) { return Mass2D(WeightedPoints{std::move(pts)}); }
  static Mass2D unit_points(const std::vector<Point2>& pts) {
    std::vector<WeightedPoint> w;
    w.reserve(pts.size());
    for (const auto& p : pts) w.push_back({p, Rat(1)});
    return points(std::move(w));
  }
  static Mass2D polygon(std::vector<Point2> ccw) { return Mass2D(ConvexPolygon{std::move(ccw)}); }
  static Mass2D disk(Point2 c, Rat r) { return Mass2D(Disk{std::move(c), std::move(r)}); }

  const Variant& variant() const { return v_; }
  bool is_points() const { return std::holds_alternative<WeightedPoints>(v_); }
  bool is_polygon() const { return std::holds_alternative<ConvexPolygon>(v_); }
  bool is_disk() const { return std::holds_alternative<Disk>(v_); }
  bool exact() const { return !is_disk(); }
  const WeightedPoints& as_points() const { return std::get<WeightedPoints>(v_); }
  const ConvexPolygon& as_polygon() const { return std::get<ConvexPolygon>(v_); }
  const Disk& as_disk() const { return std::get<Disk>(v_); }

  Quantity total() const;

 private:
  explicit Mass2D(Variant v);
  Variant v_;
};

// ---------------------------------------------------------------------------
// Convex polygon helpers (exact).

inline Rat polygon_area(std::span<const Point2> poly) {
  Rat twice(0);
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) twice += cross(poly[i], poly[(i + 1) % n]);
  return twice / 2;
}

/// Part of a convex polygon with normal.p >= offset (or <= when keep_negative).
template <class T>
std::vector<Vec2<T>> clip_halfplane(const std::vector<Vec2<T>>& poly, const Vec2<T>& normal,
                                    const T& offset, bool keep_negative = false) {
  std::vector<Vec2<T>> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  auto value = [&](const Vec2<T>& p) {
    T v = dot(normal, p) - offset;
    return keep_negative ? T(-v) : v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    T va = value(a), vb = value(b);
    if (sign_of(va) >= 0) out.push_back(a);
    if ((sign_of(va) > 0 && sign_of(vb) < 0) || (sign_of(va) < 0 && sign_of(vb) > 0)) {
      T s = va / (va - vb);
      out.push_back(a + s * (b - a));
    }
  }
  // Drop consecutive duplicates produced by vertices on the boundary.
  std::vector<Vec2<T>> dedup;
  for (auto& p : out)
    if (dedup.empty() || dedup.back() != p) dedup.push_back(p);
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  return dedup;
}

// ---------------------------------------------------------------------------
// Disk helpers (closed form, double precision).

/// Area of the part of a disk on the positive side of a line whose signed
/// distance from the center is h (positive side: distance > h).
inline double disk_cap_area(double r, double h) {
  if (h >= r) return 0.0;
  if (h <= -r) return std::numbers::pi * r * r;
  return r * r * std::acos(h / r) - h * std::sqrt(r * r - h * h);
}

/// Signed area of the intersection of the disk of radius r at the origin
/// with the triangle (0, a, b).
inline double disk_triangle_area(Vec2<double> a, Vec2<double> b, double r) {
  auto inside_piece = [](const Vec2<double>& p, const Vec2<double>& q) { return cross(p, q) / 2; };
  auto sector_piece = [r](const Vec2<double>& p, const Vec2<double>& q) {
    return r * r * std::atan2(cross(p, q), dot(p, q)) / 2;
  };
  Vec2<double> d = b - a;
  double A = dot(d, d);
  if (A == 0) return 0.0;
  double B = 2 * dot(a, d);
  double C = dot(a, a) - r * r;
  double disc = B * B - 4 * A * C;
  if (disc <= 0) return sector_piece(a, b);
  double sq = std::sqrt(disc);
  double s1 = std::clamp((-B - sq) / (2 * A), 0.0, 1.0);
  double s2 = std::clamp((-B + sq) / (2 * A), 0.0, 1.0);
  Vec2<double> p1 = a + s1 * d, p2 = a + s2 * d;
  return sector_piece(a, p1) + inside_piece(p1, p2) + sector_piece(p2, b);
}

/// Area of a disk intersected with a convex polygon given counterclockwise.
inline double disk_polygon_area(const Disk& disk, std::span<const Vec2<double>> poly) {
  Vec2<double> c = to_double(disk.center);
  double r = disk.radius.get_d();
  double total = 0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i)
    total += disk_triangle_area(poly[i] - c, poly[(i + 1) % n] - c, r);
  return total;
}

/// Exact axis-aligned square containing the disk.
inline std::vector<Point2> disk_bounding_square(const Disk& d, const Rat& margin = Rat(1)) {
  Rat h = d.radius + margin;
  const Point2& c = d.center;
  return {{Rat(c.x - h), Rat(c.y - h)}, {Rat(c.x + h), Rat(c.y - h)},
          {Rat(c.x + h), Rat(c.y + h)}, {Rat(c.x - h), Rat(c.y + h)}};
}

// ---------------------------------------------------------------------------

inline Mass2D::Mass2D(Variant v) : v_(std::move(v)) {
  if (auto* wp = std::get_if<WeightedPoints>(&v_)) {
    if (wp->points.empty()) throw InvalidInput("point mass must be nonempty");
    for (const auto& p : wp->points)
      if (sign_of(p.w) <= 0) throw InvalidInput("point weights must be positive");
  } else if (auto* poly = std::get_if<ConvexPolygon>(&v_)) {
    const auto& vs = poly->vertices;
    if (vs.size() < 3) throw InvalidInput("polygon needs at least three vertices");
    for (std::size_t i = 0, n = vs.size(); i < n; ++i)
      if (orient2d(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) <= 0)
        throw InvalidInput("polygon must be strictly convex and counterclockwise");
  } else {
    if (sign_of(std::get<Disk>(v_).radius) <= 0) throw InvalidInput("disk radius must be positive");
  }
}

inline Quantity Mass2D::total() const {
  if (auto* wp = std::get_if<WeightedPoints>(&v_)) {
    Rat s(0);
    for (const auto& p : wp->points) s += p.w;
    return s;
  }
  if (auto* poly = std::get_if<ConvexPolygon>(&v_)) return polygon_area(poly->vertices);
  double r = std::get<Disk>(v_).radius.get_d();
  return std::numbers::pi * r * r;
}

struct HalfplaneMeasureResult {
  Quantity positive_side, negative_side, on_boundary;

  Quantity imbalance() const { return positive_side - negative_side; }
  Quantity total() const { return positive_side + negative_side + on_boundary; }
};

inline HalfplaneMeasureResult halfplane_measure(const Mass2D& mu, const OrientedLine2& l) {
  const Point2& n = l.normal().vec();
  if (mu.is_points()) {
    Rat pos(0), neg(0), on(0);
    for (const auto& wp : mu.as_points().points) {
      int s = side_of(l, wp.p);
      (s > 0 ? pos : s < 0 ? neg : on) += wp.w;
    }
    return {pos, neg, on};
  }
  if (mu.is_polygon()) {
    const auto& vs = mu.as_polygon().vertices;
    Rat pos = polygon_area(clip_halfplane(vs, n, l.offset()));
    Rat neg = polygon_area(clip_halfplane(vs, n, l.offset(), true));
    return {pos, neg, Rat(0)};
  }
  const Disk& d = mu.as_disk();
  double r = d.radius.get_d();
  double h = Rat(l.offset() - dot(n, d.center)).get_d() / std::sqrt(dot(n, n).get_d());
  double pos = disk_cap_area(r, h);
  double neg = disk_cap_area(r, -h);
  return {pos, neg, 0.0};
}

/// For point masses a line bisects when each open side carries at most half
/// of the weight. For polygons and disks, |positive - negative| <= tol.
inline bool is_bisected(const Mass2D& mu, const OrientedLine2& l, double tol = 0) {
  auto m = halfplane_measure(mu, l);
  if (mu.is_points()) {
    Rat half = mu.total().rat() / 2;
    return m.positive_side.rat() <= half && m.negative_side.rat() <= half;
  }
  return m.imbalance().within(tol);
}

// ---------------------------------------------------------------------------
// Mass assignments on 2-planes through the origin of R^3.

/// A deterministic map from a 2-plane (given by an orthonormal frame) to a
/// planar mass in that plane's coordinates. Continuity is the caller's
/// contract; `continuity_note` documents it.
struct MassAssignment2D {
  std::function<Mass2D(const PlaneFrame3&)> eval;
  std::string continuity_note;

  Mass2D operator()(const PlaneFrame3& f) const { return eval(f); }
};

struct WeightedPoint3 {
  Point3 p;
  Rat w{1};
};

/// Orthogonal projection of a 3D weighted point set onto each plane.
inline MassAssignment2D project_points_assignment(std::vector<WeightedPoint3> pts) {
  if (pts.empty()) throw InvalidInput("projection assignment needs points");
  for (const auto& p : pts)
    if (sign_of(p.w) <= 0) throw InvalidInput("point weights must be positive");
  auto shared = std::make_shared<const std::vector<WeightedPoint3>>(std::move(pts));
  return {[shared](const PlaneFrame3& f) {
            std::vector<WeightedPoint> out;
            out.reserve(shared->size());
            for (const auto& q : *shared) out.push_back({f.coords(q.p), q.w});
            return Mass2D::points(std::move(out));
          },
          "orthogonal projection (Lipschitz in the frame)"};
}

/// Projection of a solid ball onto each plane: a disk of the same radius.
inline MassAssignment2D project_ball_assignment(Point3 center, Rat radius) {
  if (sign_of(radius) <= 0) throw InvalidInput("ball radius must be positive");
  return {[center, radius](const PlaneFrame3& f) { return Mass2D::disk(f.coords(center), radius); },
          "projection of a ball (Lipschitz in the frame)"};
}

/// The crossing points of each line with a plane, in the plane's coordinates.
class SliceLines {
 public:
  explicit SliceLines(std::vector<Line3> lines) : lines_(std::move(lines)) {
    for (const auto& l : lines_)
      if (l.dir.x() == 0 && l.dir.y() == 0) throw InvalidInput("slice lines must not be vertical");
  }

  const std::vector<Line3>& lines() const { return lines_; }

  std::vector<Point2> operator()(const PlaneFrame3& f) const {
    std::vector<Point2> out;
    out.reserve(lines_.size());
    for (std::size_t i = 0; i < lines_.size(); ++i) out.push_back(intersect_line_plane(lines_[i], f, i));
    return out;
  }
  std::vector<Point2> operator()(const VerticalPlaneFrame& f) const { return (*this)(f.frame()); }

 private:
  std::vector<Line3> lines_;
};

inline SliceLines slice_lines_assignment(std::vector<Line3> lines) { return SliceLines(std::move(lines)); }

/// Unit-weight point mass assignment from line slices.
inline MassAssignment2D as_mass_assignment(SliceLines slices) {
  return {[s = std::move(slices)](const PlaneFrame3& f) { return Mass2D::unit_points(s(f)); },
          "line slices: continuous away from planes parallel to a line"};
}

}  // namespace mpart
