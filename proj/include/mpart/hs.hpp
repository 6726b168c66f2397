#pragma once

// Planar Ham-Sandwich cuts, Tukey depth, centerpoints and center transversal
// checks.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "mpart/geom.hpp"
#include "mpart/mass.hpp"

namespace mpart {

// ---------------------------------------------------------------------------
// Common cuts of several weighted point sets.

template <class T>
struct PlanarWeightedPoint {
  Vec2<T> p;
  T w;
};

template <class T>
using PlanarPointSet = std::vector<PlanarWeightedPoint<T>>;

template <class T>
struct OffsetInterval {
  T lo, hi;
};

/// Closed interval of offsets c for which at most half of the weight has
/// value > c and at most half has value < c. `vals` holds (value, weight)
/// and is sorted in place.
template <class T>
OffsetInterval<T> median_offsets(std::vector<std::pair<T, T>>& vals) {
  std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  T total(0);
  for (const auto& v : vals) total += v.second;
  T half = total / 2;
  // Groups of equal values.
  std::vector<std::pair<T, T>> groups;
  for (const auto& v : vals) {
    if (!groups.empty() && groups.back().first == v.first)
      groups.back().second += v.second;
    else
      groups.push_back(v);
  }
  OffsetInterval<T> out{groups.front().first, groups.back().first};
  T below(0);
  bool lo_set = false;
  for (const auto& g : groups) {
    T above = total - below - g.second;
    if (!lo_set && above <= half) {
      out.lo = g.first;
      lo_set = true;
    }
    if (below <= half) out.hi = g.first;
    below += g.second;
  }
  return out;
}

struct CutSearchOptions {
  /// Only accept cuts through no point of any set.
  bool point_free = true;
  /// Reject cuts parallel to the y-axis (normals with zero y-component).
  bool forbid_vertical = false;
};

template <class T>
struct PlanarCut {
  Vec2<T> normal;
  T offset;
};

/// First cut, in angular order of its normal from angle 0, that bisects every
/// set (at most half of each weight strictly on either side). Point-free cuts
/// are placed at the midpoint of the feasible offset interval; otherwise the
/// smallest feasible offset is used.
template <class T>
std::optional<PlanarCut<T>> find_common_cut(const std::vector<PlanarPointSet<T>>& sets,
                                             CutSearchOptions opt = {}) {
  std::vector<Vec2<T>> pts;
  for (const auto& s : sets)
    for (const auto& wp : s) pts.push_back(wp.p);
  std::vector<Vec2<T>> critical;
  critical.reserve(pts.size() * pts.size() / 2 + 1);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] != pts[j]) critical.push_back(perp(pts[j] - pts[i]));
  if (opt.forbid_vertical) critical.push_back({T(1), T(0)});

  std::vector<std::pair<T, T>> vals;
  for (const auto& cand : line_candidates(critical)) {
    if (opt.point_free && cand.critical) continue;
    if (opt.forbid_vertical && sign_of(cand.dir.y) == 0) continue;
    const Vec2<T>& n = cand.dir;
    bool first = true;
    T lo(0), hi(0);
    for (const auto& s : sets) {
      vals.clear();
      for (const auto& wp : s) vals.emplace_back(dot(n, wp.p), wp.w);
      auto iv = median_offsets(vals);
      if (first || iv.lo > lo) lo = iv.lo;
      if (first || iv.hi < hi) hi = iv.hi;
      first = false;
    }
    if (opt.point_free ? lo < hi : lo <= hi) {
      return PlanarCut<T>{n, opt.point_free ? T((lo + hi) / 2) : lo};
    }
  }
  return std::nullopt;
}

template <class T>
PlanarPointSet<T> planar_set(const WeightedPoints& wp);

template <>
inline PlanarPointSet<Rat> planar_set<Rat>(const WeightedPoints& wp) {
  PlanarPointSet<Rat> out;
  for (const auto& p : wp.points) out.push_back({p.p, p.w});
  return out;
}
template <>
inline PlanarPointSet<double> planar_set<double>(const WeightedPoints& wp) {
  PlanarPointSet<double> out;
  for (const auto& p : wp.points) out.push_back({to_double(p.p), p.w.get_d()});
  return out;
}

inline OrientedLine2 to_line(const PlanarCut<Rat>& c) { return OrientedLine2(Direction2(c.normal), c.offset); }

// ---------------------------------------------------------------------------

struct HSCut2D {
  OrientedLine2 line;
  std::vector<HalfplaneMeasureResult> measures;
  /// The cut was moved off every point (all boundary measures are zero).
  bool perturbed = false;
};

/// Ham-Sandwich cut of two weighted point masses, exact. A cut missing every
/// point is preferred; otherwise the cut may pass through points.
inline HSCut2D hs_cut_point_masses(const Mass2D& r, const Mass2D& b) {
  if (!r.is_points() || !b.is_points()) throw InvalidInput("hs_cut_point_masses takes point masses");
  std::vector<PlanarPointSet<Rat>> sets{planar_set<Rat>(r.as_points()), planar_set<Rat>(b.as_points())};
  auto cut = find_common_cut(sets, {.point_free = true});
  bool perturbed = cut.has_value();
  if (!cut) cut = find_common_cut(sets, {.point_free = false});
  if (!cut) throw SearchExhausted("no Ham-Sandwich cut among candidate lines (degenerate input)");
  OrientedLine2 line = to_line(*cut);
  return {line, {halfplane_measure(r, line), halfplane_measure(b, line)}, perturbed};
}

/// Ham-Sandwich cut of two unit-weight point sets, exact.
inline HSCut2D hs_cut_points(const std::vector<Point2>& red, const std::vector<Point2>& blue) {
  if (red.empty() || blue.empty()) throw InvalidInput("both point sets must be nonempty");
  return hs_cut_point_masses(Mass2D::unit_points(red), Mass2D::unit_points(blue));
}

namespace detail {

/// Imbalance (positive - negative) of a continuous mass in double precision.
inline double approx_imbalance(const Mass2D& mu, Vec2<double> n, double c) {
  if (mu.is_disk()) {
    const Disk& d = mu.as_disk();
    double r = d.radius.get_d();
    double len = std::hypot(n.x, n.y);
    double h = (c - dot(n, to_double(d.center))) / len;
    return disk_cap_area(r, h) - disk_cap_area(r, -h);
  }
  if (mu.is_polygon()) {
    std::vector<Vec2<double>> poly;
    for (const auto& v : mu.as_polygon().vertices) poly.push_back(to_double(v));
    auto area = [](const std::vector<Vec2<double>>& p) {
      double a = 0;
      for (std::size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
      return a / 2;
    };
    return area(clip_halfplane(poly, n, c)) - area(clip_halfplane(poly, n, c, true));
  }
  double s = 0;
  for (const auto& wp : mu.as_points().points) {
    double v = dot(n, to_double(wp.p)) - c;
    s += v > 0 ? wp.w.get_d() : v < 0 ? -wp.w.get_d() : 0.0;
  }
  return s;
}

/// Range of n.x over the support of a mass.
inline std::pair<double, double> support_range(const Mass2D& mu, Vec2<double> n) {
  if (mu.is_disk()) {
    double c = dot(n, to_double(mu.as_disk().center));
    double r = mu.as_disk().radius.get_d() * std::hypot(n.x, n.y);
    return {c - r, c + r};
  }
  double lo = INFINITY, hi = -INFINITY;
  auto take = [&](const Point2& p) {
    double v = dot(n, to_double(p));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  if (mu.is_polygon())
    for (const auto& v : mu.as_polygon().vertices) take(v);
  else
    for (const auto& wp : mu.as_points().points) take(wp.p);
  return {lo, hi};
}

/// Offset along normal n whose line bisects a continuous mass.
inline double bisecting_offset(const Mass2D& mu, Vec2<double> n) {
  auto [lo, hi] = support_range(mu, n);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(lo) + std::fabs(hi)); ++it) {
    double mid = (lo + hi) / 2;
    if (approx_imbalance(mu, n, mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace detail

struct HSMeasureOptions {
  double tol = 1e-9;
  int max_iterations = 1000;
};

/// Ham-Sandwich cut of two polygon/disk masses. For every normal direction
/// the first mass is bisected exactly by an offset search; the second mass's
/// imbalance changes sign between antipodal normals, and a bisection over
/// the half circle of normals locates its zero.
inline HSCut2D hs_cut_measures(const Mass2D& mu1, const Mass2D& mu2, HSMeasureOptions opt = {}) {
  if (mu1.is_points() || mu2.is_points())
    throw InvalidInput("hs_cut_measures takes polygon or disk masses; use hs_cut_points");
  auto normal = [](double th) { return Vec2<double>{std::cos(th), std::sin(th)}; };
  auto second_imbalance = [&](double th) {
    auto n = normal(th);
    return detail::approx_imbalance(mu2, n, detail::bisecting_offset(mu1, n));
  };
  double a = 0, b = std::numbers::pi;
  double ga = second_imbalance(a);
  double theta = a;
  if (ga != 0) {
    for (int it = 0; it < opt.max_iterations; ++it) {
      double mid = (a + b) / 2;
      if (mid == a || mid == b) break;
      double gm = second_imbalance(mid);
      theta = mid;
      if (gm == 0) break;
      if ((gm > 0) == (ga > 0)) {
        a = mid;
        ga = gm;
      } else {
        b = mid;
      }
    }
  }
  auto n = normal(theta);
  double c = detail::bisecting_offset(mu1, n);
  OrientedLine2 line(Direction2(exact_rat(n.x), exact_rat(n.y)), exact_rat(c));
  HSCut2D cut{line, {halfplane_measure(mu1, line), halfplane_measure(mu2, line)}, true};
  for (const auto& m : cut.measures)
    if (!m.imbalance().within(opt.tol))
      throw ToleranceNotReached("Ham-Sandwich imbalance " + m.imbalance().str() + " exceeds tolerance");
  return cut;
}

// ---------------------------------------------------------------------------
// Depth.

struct DepthReport {
  Point2 point;
  /// Minimum, over closed half-planes with the point on the boundary, of the
  /// contained fraction of the total weight.
  Rat depth;
  Rat weight;  ///< the same minimum in absolute weight
  /// Inward normal of a minimizing closed half-plane {x : n.(x - point) >= 0}.
  Point2 witness_normal;
};

namespace detail {

/// Minimum closed half-plane weight through the origin over vectors `vs`.
template <class T>
std::pair<T, Vec2<T>> min_halfplane_weight(const std::vector<std::pair<Vec2<T>, T>>& vs) {
  T at_origin(0);
  std::vector<Vec2<T>> critical;
  for (const auto& [v, w] : vs) {
    if (sign_of(v.x) == 0 && sign_of(v.y) == 0) {
      at_origin += w;
    } else {
      critical.push_back(perp(v));
      critical.push_back(-perp(v));
    }
  }
  T best(0);
  Vec2<T> arg{T(1), T(0)};
  bool have = false;
  for (const auto& cand : circle_candidates(critical)) {
    if (cand.critical) continue;
    T s = at_origin;
    for (const auto& [v, w] : vs)
      if (sign_of(dot(cand.dir, v)) > 0) s += w;
    if (!have || s < best) {
      best = s;
      arg = cand.dir;
      have = true;
    }
  }
  if (!have) best = at_origin;
  return {best, arg};
}

}  // namespace detail

/// Exact Tukey depth of a point with respect to a weighted point mass.
inline DepthReport depth(const Point2& p, const Mass2D& mu) {
  if (!mu.is_points()) throw InvalidInput("depth is defined here for point masses only");
  std::vector<std::pair<Point2, Rat>> vs;
  Rat total(0);
  for (const auto& wp : mu.as_points().points) {
    vs.emplace_back(wp.p - p, wp.w);
    total += wp.w;
  }
  auto [w, n] = detail::min_halfplane_weight(vs);
  return {p, Rat(w / total), w, n};
}

/// Approximate depth in double precision; used to rank candidates only.
inline double approx_depth_weight(const Vec2<double>& p, const PlanarPointSet<double>& pts) {
  std::vector<std::pair<Vec2<double>, double>> vs;
  for (const auto& wp : pts) vs.emplace_back(wp.p - p, wp.w);
  return detail::min_halfplane_weight(vs).first;
}

struct Depth3Report {
  Rat weight;
  Point3 witness_normal;  ///< closed halfspace {x : n.(x - p) >= 0}
};

/// Exact Tukey depth in R^3 (minimum closed halfspace weight through p).
inline Depth3Report depth3_weight(const Point3& p, const std::vector<WeightedPoint3>& pts) {
  Rat at_p(0);
  std::vector<std::pair<Point3, Rat>> vs;
  for (const auto& q : pts) {
    Point3 v = q.p - p;
    if (v.x == 0 && v.y == 0 && v.z == 0)
      at_p += q.w;
    else
      vs.emplace_back(v, q.w);
  }
  if (vs.empty()) return {at_p, {Rat(0), Rat(0), Rat(1)}};

  std::vector<Point3> vertex_normals;
  auto nonzero = [](const Point3& v) { return v.x != 0 || v.y != 0 || v.z != 0; };
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      Point3 m = cross(vs[i].first, vs[j].first);
      if (nonzero(m)) {
        vertex_normals.push_back(m);
        vertex_normals.push_back(-m);
      }
    }
  if (vertex_normals.empty()) {
    // All points on one line through p: any plane containing it works.
    const Point3& v0 = vs[0].first;
    Point3 e = rat_abs(v0.x) <= rat_abs(v0.y) && rat_abs(v0.x) <= rat_abs(v0.z) ? Point3{Rat(1), Rat(0), Rat(0)}
               : rat_abs(v0.y) <= rat_abs(v0.z)                                  ? Point3{Rat(0), Rat(1), Rat(0)}
                                                                                 : Point3{Rat(0), Rat(0), Rat(1)};
    Point3 m = cross(v0, e);
    vertex_normals = {m, -m};
  }

  Rat best(0);
  Point3 arg;
  bool have = false;
  for (const auto& m : vertex_normals) {
    Rat strict(0);
    std::vector<std::pair<Point3, Rat>> in_plane;
    for (const auto& [v, w] : vs) {
      int s = sign_of(dot(m, v));
      if (s > 0)
        strict += w;
      else if (s == 0)
        in_plane.push_back({v, w});
    }
    if (have && strict + at_p >= best) continue;
    // Perturbing m inside the plane reduces to a planar depth problem.
    Point3 a = in_plane.front().first;
    Point3 b = cross(m, a);
    std::vector<std::pair<Point2, Rat>> planar;
    for (const auto& [v, w] : in_plane) planar.emplace_back(Point2{dot(a, v), dot(b, v)}, w);
    auto [w2, n2] = detail::min_halfplane_weight(planar);
    Rat total = at_p + strict + w2;
    if (!have || total < best) {
      best = total;
      // Exact witness: K m + (n2.x a + n2.y b), with K dominating off-plane terms.
      Point3 tilt = n2.x * a + n2.y * b;
      Rat k(1);
      for (const auto& [v, w] : vs) {
        Rat mv = dot(m, v);
        if (mv != 0) {
          Rat ratio = rat_abs(dot(tilt, v)) / rat_abs(mv);
          if (ratio >= k) k = ratio + 1;
        }
      }
      arg = k * m + tilt;
      have = true;
    }
  }
  return {best, arg};
}

// ---------------------------------------------------------------------------
// Centerpoints.

namespace detail {

inline std::vector<Point2> bounding_box(std::span<const Point2> pts, const Rat& margin = Rat(1)) {
  Rat x0 = pts[0].x, x1 = pts[0].x, y0 = pts[0].y, y1 = pts[0].y;
  for (const auto& p : pts) {
    if (p.x < x0) x0 = p.x;
    if (p.x > x1) x1 = p.x;
    if (p.y < y0) y0 = p.y;
    if (p.y > y1) y1 = p.y;
  }
  x0 -= margin;
  y0 -= margin;
  x1 += margin;
  y1 += margin;
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

/// Clips `region` by every closed half-plane bounded by a line through two
/// points of `pts` whose weight exceeds total - target. The result contains
/// the depth >= target region.
inline std::vector<Point2> clip_depth_region(std::vector<Point2> region, const WeightedPoints& pts,
                                             const Rat& target) {
  Rat total(0);
  for (const auto& p : pts.points) total += p.w;
  Rat limit = total - target;
  const auto& ps = pts.points;
  for (std::size_t i = 0; i < ps.size() && !region.empty(); ++i)
    for (std::size_t j = i + 1; j < ps.size() && !region.empty(); ++j) {
      if (ps[i].p == ps[j].p) continue;
      Point2 n = perp(ps[j].p - ps[i].p);
      Rat c = dot(n, ps[i].p);
      Rat pos(0), neg(0), on(0);
      for (const auto& q : ps) {
        int s = sign_of(Rat(dot(n, q.p) - c));
        (s > 0 ? pos : s < 0 ? neg : on) += q.w;
      }
      if (pos + on > limit) region = clip_halfplane(region, n, c);
      if (!region.empty() && neg + on > limit) region = clip_halfplane(region, n, c, true);
    }
  return region;
}

inline Point2 vertex_average(std::span<const Point2> poly) {
  Point2 s{Rat(0), Rat(0)};
  for (const auto& p : poly) s = s + p;
  Rat k(static_cast<long>(poly.size()));
  return {Rat(s.x / k), Rat(s.y / k)};
}

/// Candidate points for a deep point, best guesses first.
inline std::vector<Point2> region_candidates(const std::vector<Point2>& region) {
  std::vector<Point2> out;
  if (region.empty()) return out;
  out.push_back(vertex_average(region));
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto& a = region[i];
    const auto& b = region[(i + 1) % region.size()];
    out.push_back({Rat((a.x + b.x) / 2), Rat((a.y + b.y) / 2)});
  }
  for (const auto& v : region) out.push_back(v);
  return out;
}

}  // namespace detail

/// A point of depth at least one third of the total weight (Rado's bound).
inline DepthReport centerpoint(const Mass2D& mu) {
  if (!mu.is_points()) throw InvalidInput("centerpoint takes a point mass");
  const auto& ps = mu.as_points().points;
  Rat total = mu.total().rat();
  Rat target = total / 3;
  std::vector<Point2> coords;
  for (const auto& p : ps) coords.push_back(p.p);

  auto region = detail::clip_depth_region(detail::bounding_box(coords), mu.as_points(), target);
  for (const auto& c : detail::region_candidates(region)) {
    auto rep = depth(c, mu);
    if (rep.weight >= target) return rep;
  }
  // Fallback: vertices of the depth region are crossings of point-pair lines.
  std::vector<Point2> cands(coords);
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      for (std::size_t k = i; k < ps.size(); ++k)
        for (std::size_t l = k + 1; l < ps.size(); ++l) {
          if ((k == i && l <= j) || ps[i].p == ps[j].p || ps[k].p == ps[l].p) continue;
          Point2 d1 = ps[j].p - ps[i].p, d2 = ps[l].p - ps[k].p;
          Rat den = cross(d1, d2);
          if (den == 0) continue;
          Rat s = cross(ps[k].p - ps[i].p, d2) / den;
          cands.push_back(ps[i].p + s * d1);
        }
  auto approx = planar_set<double>(mu.as_points());
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < cands.size(); ++i)
    ranked.emplace_back(-approx_depth_weight(to_double(cands[i]), approx), i);
  std::stable_sort(ranked.begin(), ranked.end());
  DepthReport best = depth(cands[ranked.front().second], mu);
  for (const auto& [neg, i] : ranked) {
    auto rep = depth(cands[i], mu);
    if (rep.weight >= target) return rep;
    if (rep.weight > best.weight) best = rep;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Center transversals in R^3.

/// The affine flat point + span(dirs).
struct AffineFlat {
  Point3 point;
  std::vector<Point3> dirs;
};

struct TransversalMassCheck {
  Rat depth_fraction;     ///< min closed-halfspace fraction over halfspaces containing g
  Rat threshold;          ///< 1 / (d - k + 2)
  Point3 witness_normal;  ///< a minimizing halfspace {x : n.(x - g.point) >= 0}
  bool ok = false;
};

struct TransversalCheck {
  bool ok = false;
  std::vector<TransversalMassCheck> masses;
};

/// Checks that every closed halfspace containing the (k-1)-flat g holds at
/// least a 1/(d-k+2) fraction of each mass, by projecting the masses along
/// g's direction space and measuring the depth of g's image.
inline TransversalCheck check_center_transversal(const AffineFlat& g,
                                                 const std::vector<std::vector<WeightedPoint3>>& masses,
                                                 int d = 3, int k = -1) {
  if (d != 3) throw DimensionMismatch("center transversal checks are implemented for d = 3");
  int dim = static_cast<int>(g.dirs.size());
  if (k < 0) k = dim + 1;
  if (k != dim + 1) throw DimensionMismatch("k must equal dim(g) + 1");
  if (k < 1 || k > 3) throw DimensionMismatch("g must have dimension 0, 1 or 2");
  auto is_zero = [](const Point3& v) { return v.x == 0 && v.y == 0 && v.z == 0; };
  for (const auto& v : g.dirs)
    if (is_zero(v)) throw DimensionMismatch("zero direction in g");
  if (dim == 2 && is_zero(cross(g.dirs[0], g.dirs[1])))
    throw DimensionMismatch("directions of g are linearly dependent");

  Rat threshold = frac(1, d - k + 2);
  TransversalCheck out{true, {}};
  for (const auto& mass : masses) {
    if (mass.empty()) throw InvalidInput("empty mass");
    Rat total(0);
    for (const auto& q : mass) total += q.w;
    TransversalMassCheck mc;
    mc.threshold = threshold;
    if (dim == 0) {
      auto rep = depth3_weight(g.point, mass);
      mc.depth_fraction = rep.weight / total;
      mc.witness_normal = rep.witness_normal;
    } else if (dim == 1) {
      const Point3& w = g.dirs[0];
      Point3 e = rat_abs(w.x) <= rat_abs(w.y) && rat_abs(w.x) <= rat_abs(w.z) ? Point3{Rat(1), Rat(0), Rat(0)}
                 : rat_abs(w.y) <= rat_abs(w.z)                                ? Point3{Rat(0), Rat(1), Rat(0)}
                                                                               : Point3{Rat(0), Rat(0), Rat(1)};
      Point3 a = cross(w, e), b = cross(w, a);
      std::vector<std::pair<Point2, Rat>> planar;
      for (const auto& q : mass) {
        Point3 v = q.p - g.point;
        planar.emplace_back(Point2{dot(a, v), dot(b, v)}, q.w);
      }
      auto [wt, n2] = detail::min_halfplane_weight(planar);
      mc.depth_fraction = wt / total;
      mc.witness_normal = n2.x * a + n2.y * b;
    } else {
      Point3 n = cross(g.dirs[0], g.dirs[1]);
      Rat pos(0), neg(0);
      for (const auto& q : mass) {
        int s = sign_of(dot(n, q.p - g.point));
        if (s >= 0) pos += q.w;
        if (s <= 0) neg += q.w;
      }
      mc.depth_fraction = std::min(pos, neg) / total;
      mc.witness_normal = pos <= neg ? n : -n;
    }
    mc.ok = mc.depth_fraction >= threshold;
    out.ok = out.ok && mc.ok;
    out.masses.push_back(std::move(mc));
  }
  return out;
}

struct TransversalSearchOptions {
  int initial_grid = 8;  ///< samples per axis of the direction grid
  int refinements = 4;   ///< grid doublings before giving up
};

struct TransversalSearchResult {
  AffineFlat line;
  TransversalCheck check;
};

/// Searches a stereographic grid of directions for a line that is a common
/// (1,3)-center transversal of two point masses. Heavy points can shrink a
/// depth region to a segment or a point, and then the good directions form
/// a set the grid misses; lines through input points are tried after the
/// grid.
inline TransversalSearchResult search_center_transversal_line(
    const std::vector<std::vector<WeightedPoint3>>& masses, TransversalSearchOptions opt = {}) {
  if (masses.size() != 2) throw DimensionMismatch("a (1,3)-center transversal line needs exactly two masses");
  const Rat target_fraction = frac(1, 3);

  auto try_direction = [&](const Point3& w) -> std::optional<TransversalSearchResult> {
    Point3 e = rat_abs(w.x) <= rat_abs(w.y) && rat_abs(w.x) <= rat_abs(w.z) ? Point3{Rat(1), Rat(0), Rat(0)}
               : rat_abs(w.y) <= rat_abs(w.z)                                ? Point3{Rat(0), Rat(1), Rat(0)}
                                                                             : Point3{Rat(0), Rat(0), Rat(1)};
    Point3 a = cross(w, e), b = cross(w, a);
    std::vector<Mass2D> projected;
    std::vector<Point2> all;
    for (const auto& mass : masses) {
      std::vector<WeightedPoint> pts;
      for (const auto& q : mass) {
        pts.push_back({Point2{dot(a, q.p), dot(b, q.p)}, q.w});
        all.push_back(pts.back().p);
      }
      projected.push_back(Mass2D::points(std::move(pts)));
    }
    auto region = detail::bounding_box(all);
    for (const auto& m : projected)
      region = detail::clip_depth_region(std::move(region), m.as_points(), Rat(m.total().rat() / 3));
    for (const auto& c : detail::region_candidates(region)) {
      bool ok = true;
      for (const auto& m : projected) ok = ok && depth(c, m).depth >= target_fraction;
      if (!ok) continue;
      Point3 p = Rat(c.x / dot(a, a)) * a + Rat(c.y / dot(b, b)) * b;
      AffineFlat g{p, {w}};
      auto check = check_center_transversal(g, masses, 3, 2);
      if (check.ok) return TransversalSearchResult{g, check};
    }
    return std::nullopt;
  };

  int n = std::max(2, opt.initial_grid);
  for (int level = 0; level <= opt.refinements; ++level, n *= 2) {
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        if (level > 0 && i % 2 == 0 && j % 2 == 0) continue;  // visited at the coarser level
        Rat s = frac(2 * i - n, n), t = frac(2 * j - n, n);
        if (auto r = try_direction(stereographic_normal(s, t))) return *r;
      }
  }
  // A region shrunk to a point pins the line to an input point p, and one
  // shrunk to a segment leaves a pencil of lines through p meeting a segment
  // between two other input points.
  std::vector<Point3> all;
  for (const auto& mass : masses)
    for (const auto& q : mass) all.push_back(q.p);
  const int steps = 32;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      for (std::size_t k = j + 1; k < all.size(); ++k) {
        if (j == i || k == i) continue;
        for (int m = 0; m <= steps; ++m) {
          Point3 w = all[j] + frac(m, steps) * Point3(all[k] - all[j]) - all[i];
          if (w == Point3{}) continue;
          AffineFlat g{all[i], {w}};
          auto check = check_center_transversal(g, masses, 3, 2);
          if (check.ok) return TransversalSearchResult{g, check};
        }
      }
  // Regions shrunk to points in both projections pin the line to a point
  // and two lines through input pairs (or to four such lines, which has no
  // rational answer in general). Only the first kind is tried, on small sets.
  const std::size_t max_points_for_pairs = 12;
  if (all.size() <= max_points_for_pairs) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < all.size(); ++j)
      for (std::size_t k = j + 1; k < all.size(); ++k) pairs.emplace_back(j, k);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t a = 0; a < pairs.size(); ++a) {
        auto [j, k] = pairs[a];
        if (j == i || k == i) continue;
        Point3 n1 = cross(Point3(all[j] - all[i]), Point3(all[k] - all[i]));
        if (n1 == Point3{}) continue;
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
          auto [l, m] = pairs[b];
          if (l == i || m == i) continue;
          Point3 w = cross(n1, cross(Point3(all[l] - all[i]), Point3(all[m] - all[i])));
          if (w == Point3{}) continue;
          AffineFlat g{all[i], {w}};
          auto check = check_center_transversal(g, masses, 3, 2);
          if (check.ok) return TransversalSearchResult{g, check};
        }
      }
  }
  throw SearchExhausted("no common center transversal line on the direction grid");
}

}  // namespace mpart
