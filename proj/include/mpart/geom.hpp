#pragma once

// Exact rational primitives: points, directions, oriented lines, 3D lines,
// vertical plane frames and the angular candidate enumeration used by every
// sweep in the library.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mpart/errors.hpp"

namespace mpart {

using Rat = mpq_class;

inline int sign_of(const Rat& q) { return sgn(q); }
inline int sign_of(double v) { return (v > 0) - (v < 0); }

inline Rat rat_abs(const Rat& q) { return Rat(abs(q)); }

/// p/q in canonical form (the two-argument mpq constructor does not reduce).
inline Rat frac(long p, long q) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

inline double to_double(const Rat& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

/// Exact conversion of a finite double.
inline Rat exact_rat(double v) {
  if (!std::isfinite(v)) throw InvalidInput("non-finite value cannot become a rational");
  return Rat(v);
}

inline Rat parse_rat(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos && s.find_first_of("eE") == std::string::npos) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw InvalidInput("not a rational number: '" + s + "'");
    // Check before canonicalizing, which divides by the denominator.
    if (q.get_den() == 0) throw InvalidInput("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
  }
  // Decimal notation: read digits exactly, never through a double.
  std::string mant = s;
  long exp10 = 0;
  if (auto e = mant.find_first_of("eE"); e != std::string::npos) {
    try {
      exp10 = std::stol(mant.substr(e + 1));
    } catch (...) {
      throw InvalidInput("not a number: '" + s + "'");
    }
    mant = mant.substr(0, e);
  }
  if (auto d = mant.find('.'); d != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - d - 1);
    mant.erase(d, 1);
  }
  mpz_class num;
  if (mant.empty() || num.set_str(mant, 10) != 0) throw InvalidInput("not a number: '" + s + "'");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rat q = exp10 < 0 ? Rat(num, scale) : Rat(num * scale);
  q.canonicalize();
  return q;
}

inline std::string format_rat(const Rat& q) { return q.get_str(); }

template <class T>
struct Vec2 {
  T x{}, y{};

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {T(a.x + b.x), T(a.y + b.y)}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {T(a.x - b.x), T(a.y - b.y)}; }
  friend Vec2 operator-(const Vec2& a) { return {T(-a.x), T(-a.y)}; }
  friend Vec2 operator*(const T& s, const Vec2& a) { return {T(s * a.x), T(s * a.y)}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
};

template <class T>
struct Vec3 {
  T x{}, y{}, z{};

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {T(a.x + b.x), T(a.y + b.y), T(a.z + b.z)};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {T(a.x - b.x), T(a.y - b.y), T(a.z - b.z)};
  }
  friend Vec3 operator-(const Vec3& a) { return {T(-a.x), T(-a.y), T(-a.z)}; }
  friend Vec3 operator*(const T& s, const Vec3& a) { return {T(s * a.x), T(s * a.y), T(s * a.z)}; }
  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator!=(const Vec3& a, const Vec3& b) { return !(a == b); }
};

using Point2 = Vec2<Rat>;
using Point3 = Vec3<Rat>;

template <class T>
T dot(const Vec2<T>& a, const Vec2<T>& b) {
  return T(a.x * b.x + a.y * b.y);
}
template <class T>
T cross(const Vec2<T>& a, const Vec2<T>& b) {
  return T(a.x * b.y - a.y * b.x);
}
template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return T(a.x * b.x + a.y * b.y + a.z * b.z);
}
template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {T(a.y * b.z - a.z * b.y), T(a.z * b.x - a.x * b.z), T(a.x * b.y - a.y * b.x)};
}
/// Counterclockwise quarter turn.
template <class T>
Vec2<T> perp(const Vec2<T>& a) {
  return {T(-a.y), a.x};
}

inline Vec2<double> to_double(const Point2& p) { return {p.x.get_d(), p.y.get_d()}; }
inline Vec3<double> to_double(const Point3& p) { return {p.x.get_d(), p.y.get_d(), p.z.get_d()}; }

/// Sign of |q-p, r-p|.
inline int orient2d(const Point2& p, const Point2& q, const Point2& r) {
  return sign_of(cross(q - p, r - p));
}

/// Nonzero planar direction, compared projectively.
class Direction2 {
 public:
  Direction2(Rat x, Rat y) : v_{std::move(x), std::move(y)} {
    if (v_.x == 0 && v_.y == 0) throw InvalidInput("direction must be nonzero");
  }
  explicit Direction2(const Point2& v) : Direction2(v.x, v.y) {}

  const Rat& x() const { return v_.x; }
  const Rat& y() const { return v_.y; }
  const Point2& vec() const { return v_; }
  Direction2 operator-() const { return Direction2(-v_.x, -v_.y); }

  /// Proportional: the same unoriented line.
  bool same_line(const Direction2& o) const { return cross(v_, o.v_) == 0; }
  /// Positively proportional.
  bool same_orientation(const Direction2& o) const {
    return same_line(o) && sign_of(dot(v_, o.v_)) > 0;
  }

 private:
  Point2 v_;
};

class Direction3 {
 public:
  Direction3(Rat x, Rat y, Rat z) : v_{std::move(x), std::move(y), std::move(z)} {
    if (v_.x == 0 && v_.y == 0 && v_.z == 0) throw InvalidInput("direction must be nonzero");
  }
  explicit Direction3(const Point3& v) : Direction3(v.x, v.y, v.z) {}

  const Rat& x() const { return v_.x; }
  const Rat& y() const { return v_.y; }
  const Rat& z() const { return v_.z; }
  const Point3& vec() const { return v_; }

  bool same_line(const Direction3& o) const {
    Point3 c = cross(v_, o.v_);
    return c.x == 0 && c.y == 0 && c.z == 0;
  }
  bool same_orientation(const Direction3& o) const {
    return same_line(o) && sign_of(dot(v_, o.v_)) > 0;
  }

 private:
  Point3 v_;
};

/// The line {p : normal.p = offset}; its positive side is normal.p > offset.
class OrientedLine2 {
 public:
  OrientedLine2(Direction2 normal, Rat offset) : normal_(std::move(normal)), offset_(std::move(offset)) {}

  static OrientedLine2 through(const Point2& p, const Point2& q) {
    Direction2 n(perp(q - p));
    Rat c = dot(n.vec(), p);
    return OrientedLine2(std::move(n), std::move(c));
  }

  const Direction2& normal() const { return normal_; }
  const Rat& offset() const { return offset_; }
  OrientedLine2 flip() const { return OrientedLine2(-normal_, -offset_); }

  /// Same point set, orientation ignored.
  bool same_line(const OrientedLine2& o) const {
    if (!normal_.same_line(o.normal_)) return false;
    // (n, c) and (k n, k c) describe the same line for k != 0.
    const Point2& a = normal_.vec();
    const Point2& b = o.normal_.vec();
    return a.x != 0 ? offset_ * b.x == o.offset_ * a.x : offset_ * b.y == o.offset_ * a.y;
  }

 private:
  Direction2 normal_;
  Rat offset_;
};

inline int side_of(const OrientedLine2& l, const Point2& p) {
  return sign_of(Rat(dot(l.normal().vec(), p) - l.offset()));
}

struct Line3 {
  Point3 base;
  Direction3 dir;

  Point3 at(const Rat& s) const { return base + s * dir.vec(); }
};

/// Orthonormal axes (a, b) of a 2-plane through the origin of R^3. In-plane
/// coordinates of x are (a.x, b.x).
struct PlaneFrame3 {
  Point3 a, b;

  Point3 normal() const { return cross(a, b); }
  Point2 coords(const Point3& p) const { return {dot(a, p), dot(b, p)}; }
  Point3 embed(const Point2& q) const { return q.x * a + q.y * b; }
};

/// A vertical plane through the origin and the z-axis, parameterized by the
/// tangent of half the angle of its horizontal axis u. The plane with
/// u = (-1, 0, 0) is the infinite parameter.
class VerticalPlaneFrame {
 public:
  static VerticalPlaneFrame at(Rat t) { return VerticalPlaneFrame(std::move(t)); }
  static VerticalPlaneFrame at_infinity() { return VerticalPlaneFrame(); }

  bool is_infinite() const { return !t_.has_value(); }
  const Rat& t() const {
    if (!t_) throw InvalidInput("infinite plane parameter has no rational value");
    return *t_;
  }

  Point3 u() const {
    if (!t_) return {Rat(-1), Rat(0), Rat(0)};
    const Rat& t = *t_;
    Rat den = 1 + t * t;
    return {Rat((1 - t * t) / den), Rat(2 * t / den), Rat(0)};
  }
  static Point3 z_axis() { return {Rat(0), Rat(0), Rat(1)}; }
  /// Horizontal unit normal of the plane, u x z (the frame's own normal).
  Point3 normal() const {
    Point3 uu = u();
    return {uu.y, Rat(-uu.x), Rat(0)};
  }
  PlaneFrame3 frame() const { return {u(), z_axis()}; }

 private:
  VerticalPlaneFrame() = default;
  explicit VerticalPlaneFrame(Rat t) : t_(std::move(t)) {}
  std::optional<Rat> t_;
};

inline VerticalPlaneFrame plane_frame(const Rat& t) { return VerticalPlaneFrame::at(t); }

/// In-plane coordinates of the intersection of a line with a plane through
/// the origin. Throws ParallelToPlane (tagged with `line_index`).
inline Point2 intersect_line_plane(const Line3& l, const PlaneFrame3& f, std::size_t line_index = 0) {
  Point3 n = f.normal();
  Rat nd = dot(n, l.dir.vec());
  if (nd == 0) throw ParallelToPlane(line_index);
  Rat s = -dot(n, l.base) / nd;
  return f.coords(l.at(s));
}

/// (u-coordinate, z-coordinate) of the line's crossing with a vertical plane.
inline Point2 intersect_line_vplane(const Line3& l, const VerticalPlaneFrame& f,
                                    std::size_t line_index = 0) {
  return intersect_line_plane(l, f.frame(), line_index);
}

/// Rational unit normal from inverse stereographic projection of (s, t):
/// covers the closed upper hemisphere on the unit disk.
inline Point3 stereographic_normal(const Rat& s, const Rat& t) {
  Rat den = 1 + s * s + t * t;
  return {Rat(2 * s / den), Rat(2 * t / den), Rat((1 - s * s - t * t) / den)};
}

/// Rational orthonormal completion of a rational unit vector n (n.z != -1).
inline PlaneFrame3 frame_from_unit_normal(const Point3& n) {
  if (dot(n, n) != 1) throw InvalidInput("normal must be a unit vector");
  Rat k = 1 + n.z;
  if (k == 0) throw InvalidInput("normal (0,0,-1) has no rational completion here; use (0,0,1)");
  Point3 a{Rat(1 - n.x * n.x / k), Rat(-n.x * n.y / k), Rat(-n.x)};
  Point3 b{Rat(-n.x * n.y / k), Rat(1 - n.y * n.y / k), Rat(-n.y)};
  return {a, b};
}

// ---------------------------------------------------------------------------
// Angular candidate enumeration.
//
// A sweep whose combinatorics only change at finitely many critical
// directions needs one test per critical direction and one per open arc
// between consecutive critical directions.

/// 0 for angles in [0, pi), 1 for [pi, 2 pi).
template <class T>
int half_of(const Vec2<T>& v) {
  return (sign_of(v.y) < 0 || (sign_of(v.y) == 0 && sign_of(v.x) < 0)) ? 1 : 0;
}

/// Strict angular order on [0, 2 pi).
template <class T>
bool angle_less(const Vec2<T>& a, const Vec2<T>& b) {
  int ha = half_of(a), hb = half_of(b);
  if (ha != hb) return ha < hb;
  return sign_of(cross(a, b)) > 0;
}

/// Representative of the projective class with angle in [0, pi).
template <class T>
Vec2<T> canonical_line_dir(const Vec2<T>& v) {
  return half_of(v) == 0 ? v : -v;
}

template <class T>
struct AngularCandidate {
  Vec2<T> dir;
  bool critical = false;  ///< on a critical direction (otherwise inside an arc)
};

namespace detail {

template <class T>
std::vector<Vec2<T>> sorted_unique_dirs(std::vector<Vec2<T>> dirs) {
  std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) { return angle_less(a, b); });
  std::vector<Vec2<T>> out;
  for (auto& d : dirs) {
    if (!out.empty() && !angle_less(out.back(), d)) continue;
    out.push_back(std::move(d));
  }
  return out;
}

/// A direction strictly inside the counterclockwise arc from a to b.
template <class T>
Vec2<T> arc_interior(const Vec2<T>& a, const Vec2<T>& b) {
  int c = sign_of(cross(a, b));
  if (c > 0) return a + b;
  if (c == 0) return perp(a);  // a and b antipodal, or a == b (full circle)
  return -(a + b);
}

}  // namespace detail

/// All directions on the full circle that a sweep over `critical` must test,
/// in angular order from angle 0.
template <class T>
std::vector<AngularCandidate<T>> circle_candidates(std::vector<Vec2<T>> critical) {
  auto crit = detail::sorted_unique_dirs(std::move(critical));
  std::vector<AngularCandidate<T>> out;
  if (crit.empty()) {
    out.push_back({Vec2<T>{T(1), T(0)}, false});
    return out;
  }
  for (std::size_t i = 0; i < crit.size(); ++i) {
    out.push_back({crit[i], true});
    const auto& next = crit[(i + 1) % crit.size()];
    out.push_back({detail::arc_interior(crit[i], next), false});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return angle_less(a.dir, b.dir); });
  return out;
}

/// Same as circle_candidates, but for unoriented directions (angles taken
/// modulo pi); every returned direction has angle in [0, pi).
template <class T>
std::vector<AngularCandidate<T>> line_candidates(const std::vector<Vec2<T>>& critical) {
  std::vector<Vec2<T>> both;
  both.reserve(critical.size() * 2);
  for (const auto& c : critical) {
    both.push_back(c);
    both.push_back(-c);
  }
  if (both.empty()) {
    return {{Vec2<T>{T(1), T(0)}, false}, {Vec2<T>{T(0), T(1)}, false}};
  }
  auto all = circle_candidates(std::move(both));
  std::vector<AngularCandidate<T>> out;
  for (auto& c : all)
    if (half_of(c.dir) == 0) out.push_back(std::move(c));
  return out;
}

}  // namespace mpart
