#pragma once

// Sweep solvers over families of subspaces: vertical planes through the
// z-axis, all planes through the origin, and tuples of lines through the
// origin.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpart/geom.hpp"
#include "mpart/hs.hpp"
#include "mpart/mass.hpp"

namespace mpart {

struct Lines3Instance {
  std::vector<Line3> R, B, G;

  std::array<const std::vector<Line3>*, 3> sets() const { return {&R, &B, &G}; }
};

struct GPViolation {
  std::string clause;  ///< "i", "ii" or "iii"
  std::string message;
};

struct GeneralPositionReport {
  std::vector<GPViolation> violations;
  std::string clause_iv = "not checked globally";

  bool ok() const { return violations.empty(); }
};

namespace detail {
inline std::string line_label(int set, std::size_t i) {
  static const char* names[] = {"R", "B", "G"};
  return std::string(names[set]) + "[" + std::to_string(i) + "]";
}
}  // namespace detail

/// Exact test of: (i) no two lines parallel, (ii) no vertical line,
/// (iii) no line meets the z-axis.
inline GeneralPositionReport check_general_position(const Lines3Instance& inst) {
  GeneralPositionReport rep;
  std::vector<std::pair<const Line3*, std::string>> all;
  auto sets = inst.sets();
  for (int s = 0; s < 3; ++s)
    for (std::size_t i = 0; i < sets[s]->size(); ++i) all.emplace_back(&(*sets[s])[i], detail::line_label(s, i));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i].first->dir.same_line(all[j].first->dir))
        rep.violations.push_back({"i", "clause (i): lines " + all[i].second + " and " + all[j].second + " are parallel"});
  for (const auto& [l, name] : all) {
    const auto& d = l->dir;
    bool vertical = d.x() == 0 && d.y() == 0;
    if (vertical) rep.violations.push_back({"ii", "clause (ii): line " + name + " is vertical"});
    bool meets_axis = vertical ? (l->base.x == 0 && l->base.y == 0)
                               : cross(Point2{l->base.x, l->base.y}, Point2{d.x(), d.y()}) == 0;
    if (meets_axis) rep.violations.push_back({"iii", "clause (iii): line " + name + " meets the z-axis"});
  }
  return rep;
}

/// +1 if l is below r (the vertical line meeting both visits l first going
/// up), -1 if above, 0 if the lines intersect.
inline int below_in_3d(const Line3& l, const Line3& r) {
  Point2 dl{l.dir.x(), l.dir.y()}, dr{r.dir.x(), r.dir.y()};
  Rat den = cross(dl, dr);
  if (den == 0) throw NoVerticalTransversal("xy-projections of the lines are parallel");
  Point2 off{Rat(r.base.x - l.base.x), Rat(r.base.y - l.base.y)};
  Rat s = cross(off, dr) / den;
  Rat s2 = cross(off, dl) / den;
  Rat zl = l.base.z + s * l.dir.z();
  Rat zr = r.base.z + s2 * r.dir.z();
  return zl < zr ? 1 : zl > zr ? -1 : 0;
}

struct SweepConfig {
  int grid_size = 720;
  int max_refinements = 30;
  std::uint64_t seed = 0;

  void validate() const {
    if (grid_size < 8) throw InvalidInput("grid_size must be at least 8");
    if (max_refinements < 0) throw InvalidInput("max_refinements must be non-negative");
  }
};

namespace detail {

/// Visits vertical plane parameters level by level. Level L uses spacing
/// 2/(grid_size 2^L) and skips points already visited. The seed shifts the
/// whole grid by a rational phase. Stops when `visit` returns true.
template <class Visit>
bool sweep_plane_grid(const SweepConfig& cfg, Visit&& visit) {
  Rat phase = frac(static_cast<long>(cfg.seed % 1000), 1000) * frac(2, cfg.grid_size);
  long n = cfg.grid_size;
  for (int level = 0; level <= cfg.max_refinements; ++level, n *= 2) {
    Rat spacing = frac(2, n);
    for (long i = 0; i < n; ++i) {
      if (level > 0 && i % 2 == 0) continue;
      Rat t = -1 + phase + i * spacing;
      if (visit(t, spacing, level)) return true;
    }
  }
  return false;
}

/// Moves t off parameters where some line is parallel to the plane.
inline Rat nudge_off_parallel(Rat t, const Rat& spacing, const std::vector<const std::vector<Line3>*>& sets) {
  for (int tries = 0; tries < 64; ++tries) {
    Point3 n = VerticalPlaneFrame::at(t).normal();
    bool bad = false;
    for (const auto* s : sets)
      for (const auto& l : *s)
        if (dot(n, l.dir.vec()) == 0) bad = true;
    if (!bad) return t;
    t += spacing / 1024;
  }
  return t;
}

/// Orients a cut (in-plane coords (u, z)) so its normal has positive z.
inline PlanarCut<Rat> upward(PlanarCut<Rat> c) {
  if (sign_of(c.normal.y) < 0) {
    c.normal = -c.normal;
    c.offset = -c.offset;
  }
  return c;
}

/// The in-plane line {na u + nz z = c} as a line of R^3 (requires nz != 0).
inline Line3 embed_cut(const VerticalPlaneFrame& f, const OrientedLine2& cut) {
  Point3 u = f.u();
  const Rat& na = cut.normal().x();
  const Rat& nz = cut.normal().y();
  return {{Rat(0), Rat(0), Rat(cut.offset() / nz)}, Direction3(u.x, u.y, Rat(-na / nz))};
}

}  // namespace detail

struct Lines3Certificate {
  VerticalPlaneFrame frame = VerticalPlaneFrame::at(Rat(0));
  OrientedLine2 cut{Direction2(Rat(0), Rat(1)), Rat(0)};  ///< in (u, z) coordinates, normal pointing up
  std::array<long, 3> below_counts{};
  Line3 line3d{{Rat(0), Rat(0), Rat(0)}, Direction3(Rat(1), Rat(0), Rat(0))};
  /// Sampled radius in t within which the same in-plane cut keeps every slice
  /// point strictly on its side.
  Rat stability_radius{0};
  int grid_level = 0;
};

struct Lines3Verification {
  std::array<long, 3> below{}, above{}, touching{};
  bool in_plane = false;
  bool ok = false;
};

/// Exact recount of a certificate with the 3D above/below predicate.
inline Lines3Verification verify_lines3(const Lines3Instance& inst, const Lines3Certificate& cert) {
  Lines3Verification v;
  Point3 n = cert.frame.normal();
  v.in_plane = dot(n, cert.line3d.base) == 0 && dot(n, cert.line3d.dir.vec()) == 0;
  bool all_half = true;
  auto sets = inst.sets();
  for (int s = 0; s < 3; ++s) {
    for (const auto& r : *sets[s]) {
      int b;
      try {
        b = below_in_3d(cert.line3d, r);
      } catch (const NoVerticalTransversal&) {
        b = 0;
      }
      (b > 0 ? v.below : b < 0 ? v.above : v.touching)[s]++;
    }
    long half = static_cast<long>(sets[s]->size() / 2);
    all_half = all_half && v.below[s] == half && v.above[s] == half && v.touching[s] == 0 &&
               cert.below_counts[s] == half;
  }
  v.ok = v.in_plane && all_half;
  return v;
}

namespace detail {

inline std::array<std::vector<Point2>, 3> slice_all(const Lines3Instance& inst, const VerticalPlaneFrame& f) {
  auto sets = inst.sets();
  std::array<std::vector<Point2>, 3> out;
  for (int s = 0; s < 3; ++s)
    for (std::size_t i = 0; i < sets[s]->size(); ++i) out[s].push_back(intersect_line_vplane((*sets[s])[i], f, i));
  return out;
}

inline bool same_sides(const Lines3Instance& inst, const Rat& t, const OrientedLine2& cut,
                       const std::array<std::vector<Point2>, 3>& ref) {
  std::array<std::vector<Point2>, 3> pts;
  try {
    pts = slice_all(inst, VerticalPlaneFrame::at(t));
  } catch (const ParallelToPlane&) {
    return false;
  }
  for (int s = 0; s < 3; ++s)
    for (std::size_t i = 0; i < pts[s].size(); ++i) {
      int a = side_of(cut, pts[s][i]);
      if (a == 0 || a != side_of(cut, ref[s][i])) return false;
    }
  return true;
}

template <class T>
std::vector<PlanarPointSet<T>> unit_sets(const std::array<std::vector<Point2>, 3>& pts) {
  std::vector<PlanarPointSet<T>> out(3);
  for (int s = 0; s < 3; ++s)
    for (const auto& p : pts[s]) {
      if constexpr (std::is_same_v<T, Rat>)
        out[s].push_back({p, Rat(1)});
      else
        out[s].push_back({to_double(p), 1.0});
    }
  return out;
}

}  // namespace detail

/// A line of R^3 lying below exactly half of each of three even-sized line
/// sets, found on a vertical plane through the z-axis where the slices of
/// all three sets have a common point-free Ham-Sandwich cut.
inline Lines3Certificate solve_lines3(const Lines3Instance& inst, SweepConfig cfg = {}) {
  cfg.validate();
  auto sets = inst.sets();
  for (int s = 0; s < 3; ++s)
    if (sets[s]->empty() || sets[s]->size() % 2 != 0)
      throw InvalidInput("line set " + detail::line_label(s, 0).substr(0, 1) + " must be nonempty with even size");
  auto gp = check_general_position(inst);
  if (!gp.ok()) throw InvalidInput("general position violated: " + gp.violations.front().message);

  std::vector<const std::vector<Line3>*> setv(sets.begin(), sets.end());
  std::optional<Lines3Certificate> found;
  detail::sweep_plane_grid(cfg, [&](Rat t, const Rat& spacing, int level) {
    t = detail::nudge_off_parallel(std::move(t), spacing, setv);
    VerticalPlaneFrame f = VerticalPlaneFrame::at(t);
    std::array<std::vector<Point2>, 3> pts;
    try {
      pts = detail::slice_all(inst, f);
    } catch (const ParallelToPlane&) {
      return false;
    }
    CutSearchOptions opt{.point_free = true, .forbid_vertical = true};
    if (!find_common_cut(detail::unit_sets<double>(pts), opt)) return false;
    auto exact = find_common_cut(detail::unit_sets<Rat>(pts), opt);
    if (!exact) return false;
    auto c = detail::upward(*exact);
    Lines3Certificate cert;
    cert.frame = f;
    cert.cut = to_line(c);
    cert.line3d = detail::embed_cut(f, cert.cut);
    for (int s = 0; s < 3; ++s)
      for (const auto& p : pts[s])
        if (side_of(cert.cut, p) > 0) cert.below_counts[s]++;
    cert.grid_level = level;
    Rat delta = spacing / 2;
    for (int j = 0; j < 24; ++j, delta /= 2) {
      if (detail::same_sides(inst, t + delta, cert.cut, pts) && detail::same_sides(inst, t - delta, cert.cut, pts) &&
          detail::same_sides(inst, t + delta / 2, cert.cut, pts) &&
          detail::same_sides(inst, t - delta / 2, cert.cut, pts)) {
        cert.stability_radius = delta;
        break;
      }
    }
    found = std::move(cert);
    return true;
  });
  if (!found) throw SearchExhausted("no vertical plane with a common point-free cut within the grid budget");
  return *found;
}

// ---------------------------------------------------------------------------

struct HorizontalCertificate {
  VerticalPlaneFrame frame = VerticalPlaneFrame::at(Rat(0));
  OrientedLine2 cut{Direction2(Rat(0), Rat(1)), Rat(0)};
  std::vector<HalfplaneMeasureResult> measures;
  bool exact = true;
};

namespace detail {

inline std::optional<std::vector<Mass2D>> eval_all(const std::vector<MassAssignment2D>& as, const PlaneFrame3& f) {
  std::vector<Mass2D> out;
  try {
    for (const auto& a : as) out.push_back(a(f));
  } catch (const ParallelToPlane&) {
    return std::nullopt;
  }
  return out;
}

template <class T>
std::vector<PlanarPointSet<T>> point_sets(const std::vector<Mass2D>& ms) {
  std::vector<PlanarPointSet<T>> out;
  for (const auto& m : ms) out.push_back(planar_set<T>(m.as_points()));
  return out;
}

/// Common exact cut of planar point masses (double pre-filter, exact confirm).
inline std::optional<PlanarCut<Rat>> exact_common_cut(const std::vector<Mass2D>& ms, CutSearchOptions opt) {
  if (!find_common_cut(point_sets<double>(ms), opt)) return std::nullopt;
  return find_common_cut(point_sets<Rat>(ms), opt);
}

enum class MassKind { Points, Continuous, Mixed };

inline MassKind kind_of(const std::vector<Mass2D>& ms) {
  bool pts = false, cont = false;
  for (const auto& m : ms) (m.is_points() ? pts : cont) = true;
  return pts && cont ? MassKind::Mixed : pts ? MassKind::Points : MassKind::Continuous;
}

}  // namespace detail

/// Vertical plane through the z-axis and a line in it that bisects all three
/// assigned masses (d = 3, k = 2).
inline HorizontalCertificate solve_horizontal_hs(const std::vector<MassAssignment2D>& as, SweepConfig cfg = {},
                                                 int d = 3, int k = 2, double tol = 1e-9) {
  if (d != 3 || k != 2) throw UnsupportedDimension("horizontal sweep is implemented for d = 3, k = 2");
  if (as.size() != static_cast<std::size_t>(d - k + 2))
    throw InvalidInput("horizontal sweep needs exactly d - k + 2 = 3 assignments");
  cfg.validate();

  // Variant of the assigned masses, read off at the first usable plane.
  std::optional<detail::MassKind> kind;
  for (int i = 0; i < 64 && !kind; ++i)
    if (auto ms = detail::eval_all(as, VerticalPlaneFrame::at(frac(i, 64)).frame())) kind = detail::kind_of(*ms);
  if (!kind) throw InvalidInput("assignments could not be evaluated on any vertical plane");
  if (*kind == detail::MassKind::Mixed)
    throw InvalidInput("assignments mix point masses with continuous masses");

  std::optional<HorizontalCertificate> found;
  if (*kind == detail::MassKind::Points) {
    // Point-free cuts over a whole level first, then cuts through points.
    SweepConfig one = cfg;
    long n = cfg.grid_size;
    for (int level = 0; level <= cfg.max_refinements && !found; ++level, n *= 2) {
      for (bool point_free : {true, false}) {
        one.max_refinements = 0;
        one.grid_size = static_cast<int>(n);
        detail::sweep_plane_grid(one, [&](Rat t, const Rat& spacing, int) {
          if (level > 0) {
            // only the points new at this level
            Rat idx = (t + 1 - frac(static_cast<long>(cfg.seed % 1000), 1000) * frac(2, cfg.grid_size)) / spacing;
            if (idx.get_den() == 1 && idx.get_num() % 2 == 0) return false;
          }
          std::optional<std::vector<Mass2D>> ms;
          for (int tries = 0; tries < 64 && !(ms = detail::eval_all(as, VerticalPlaneFrame::at(t).frame())); ++tries)
            t += spacing / 1024;
          if (!ms) return false;
          auto c = detail::exact_common_cut(*ms, {.point_free = point_free, .forbid_vertical = true});
          if (!c) return false;
          HorizontalCertificate cert;
          cert.frame = VerticalPlaneFrame::at(t);
          cert.cut = to_line(detail::upward(*c));
          for (const auto& m : *ms) cert.measures.push_back(halfplane_measure(m, cert.cut));
          found = std::move(cert);
          return true;
        });
        if (found) break;
      }
    }
    if (!found) throw SearchExhausted("no vertical plane with a common cut within the grid budget");
    return *found;
  }

  // Continuous masses: follow the Ham-Sandwich cut of the first two masses
  // around the half-turn of planes with a consistently oriented normal and
  // look for a sign change of the third imbalance.
  struct Sample {
    double t;
    Vec3<double> normal3;
    double g;
    bool ok;
  };
  auto sample = [&](double t, const Vec3<double>* prev) -> Sample {
    auto f = VerticalPlaneFrame::at(exact_rat(t));
    auto ms = detail::eval_all(as, f.frame());
    if (!ms) return {t, {}, 0, false};
    try {
      auto hs = hs_cut_measures((*ms)[0], (*ms)[1], {.tol = tol});
      Vec2<double> n = to_double(hs.line.normal().vec());
      double c = hs.line.offset().get_d();
      Vec3<double> u = to_double(f.u());
      Vec3<double> n3{n.x * u.x, n.x * u.y, n.y};
      if (prev && dot(n3, *prev) < 0) {
        n3 = -n3;
        n = -n;
        c = -c;
      }
      return {t, n3, detail::approx_imbalance((*ms)[2], n, c), true};
    } catch (const ToleranceNotReached&) {
      return {t, {}, 0, false};
    }
  };
  auto certify = [&](const Sample& s) -> std::optional<HorizontalCertificate> {
    auto f = VerticalPlaneFrame::at(exact_rat(s.t));
    auto ms = detail::eval_all(as, f.frame());
    if (!ms) return std::nullopt;
    std::optional<HSCut2D> hs;
    try {
      hs = hs_cut_measures((*ms)[0], (*ms)[1], {.tol = tol});
    } catch (const ToleranceNotReached&) {
      return std::nullopt;
    }
    HorizontalCertificate cert{f, hs->line, {}, false};
    for (const auto& m : *ms) cert.measures.push_back(halfplane_measure(m, cert.cut));
    for (const auto& m : cert.measures)
      if (!m.imbalance().within(tol)) return std::nullopt;
    return cert;
  };

  int m = std::min(cfg.grid_size, 128);
  for (int level = 0; level <= std::min(cfg.max_refinements, 4); ++level, m *= 2) {
    std::vector<Sample> samples;
    const Vec3<double>* prev = nullptr;
    for (int i = 0; i <= m; ++i) {
      samples.push_back(sample(-1.0 + 2.0 * i / m, prev));
      if (samples.back().ok) prev = &samples.back().normal3;
    }
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      Sample a = samples[i], b = samples[i + 1];
      if (!a.ok || !b.ok) continue;
      if (std::fabs(a.g) <= tol)
        if (auto c = certify(a)) return *c;
      if ((a.g > 0) == (b.g > 0)) continue;
      for (int it = 0; it < 80; ++it) {
        double mid = (a.t + b.t) / 2;
        if (mid == a.t || mid == b.t) break;
        Sample s = sample(mid, &a.normal3);
        if (!s.ok) break;
        if ((s.g > 0) == (a.g > 0))
          a = s;
        else
          b = s;
      }
      if (auto c = certify(std::fabs(a.g) <= std::fabs(b.g) ? a : b)) return *c;
    }
  }
  throw SearchExhausted("no sign change of the third imbalance along the plane sweep");
}

// ---------------------------------------------------------------------------

struct GrassmannCertificate {
  Point3 normal;  ///< rational unit normal of the plane
  PlaneFrame3 frame;
  OrientedLine2 cut{Direction2(Rat(0), Rat(1)), Rat(0)};
  std::vector<HalfplaneMeasureResult> measures;
  Point2 grid_param;
};

/// A plane through the origin on which three assigned point masses have a
/// common cut. Planes come from a stereographic grid of unit normals.
inline GrassmannCertificate solve_grassmann_bisection(const std::vector<MassAssignment2D>& as, SweepConfig cfg = {},
                                                      int d = 3, int k = 2) {
  if (d != 3 || k != 2) throw UnsupportedDimension("Grassmann sweep is implemented for d = 3, k = 2");
  if (as.size() != static_cast<std::size_t>(d)) throw InvalidInput("Grassmann sweep requires exactly d = 3 assignments");
  cfg.validate();

  long m = std::max(8, cfg.grid_size / 24);
  Rat phase = frac(static_cast<long>(cfg.seed % 1000), 1000) * frac(1, m);
  for (int level = 0; level <= cfg.max_refinements; ++level, m *= 2) {
    for (bool point_free : {true, false})
      for (long i = 0; i <= m; ++i)
        for (long j = 0; j <= m; ++j) {
          if (level > 0 && i % 2 == 0 && j % 2 == 0) continue;
          Rat s = frac(2 * i - m, m) + phase, t = frac(2 * j - m, m) + phase;
          Point3 n = stereographic_normal(s, t);
          PlaneFrame3 f = frame_from_unit_normal(n);
          auto ms = detail::eval_all(as, f);
          if (!ms) continue;
          if (detail::kind_of(*ms) != detail::MassKind::Points)
            throw InvalidInput("Grassmann sweep supports point-mass assignments only");
          auto c = detail::exact_common_cut(*ms, {.point_free = point_free});
          if (!c) continue;
          GrassmannCertificate cert{n, f, to_line(*c), {}, {s, t}};
          for (const auto& mu : *ms) cert.measures.push_back(halfplane_measure(mu, cert.cut));
          return cert;
        }
  }
  throw SearchExhausted("no plane with a common cut within the grid budget");
}

// ---------------------------------------------------------------------------
// Product bisections: n lines through the origin, line i bisecting mass i
// where each mass may depend on the whole tuple of lines.

/// Normal of the origin line with parameter t in [-1, 1]; t = 1 gives the
/// same line as t = -1 with the opposite normal.
inline Point2 origin_normal(const Rat& t) {
  Rat den = 1 + t * t;
  return {Rat((1 - t * t) / den), Rat(2 * t / den)};
}

struct ProductAssignment {
  std::function<Mass2D(const std::vector<Point2>& normals)> eval;
  std::string note;

  Mass2D operator()(const std::vector<Point2>& normals) const { return eval(normals); }
};

/// The same mass for every tuple.
inline ProductAssignment constant_assignment(Mass2D mu) {
  return {[mu = std::move(mu)](const std::vector<Point2>&) { return mu; }, "constant"};
}

/// Points of `mu` within distance `width` (in normal units) of line `other`.
/// Polygons are intersected with the strip.
inline ProductAssignment strip_assignment(Mass2D mu, std::size_t other, Rat width) {
  return {[mu = std::move(mu), other, width](const std::vector<Point2>& normals) {
            const Point2& n = normals.at(other);
            // |n| is not rational in general; compare squared distances.
            Rat nn = dot(n, n);
            auto inside = [&](const Point2& p) {
              Rat v = dot(n, p);
              return v * v <= width * width * nn;
            };
            if (mu.is_points()) {
              std::vector<WeightedPoint> keep;
              for (const auto& wp : mu.as_points().points)
                if (inside(wp.p)) keep.push_back(wp);
              if (keep.empty()) return mu;  // degenerate strip: fall back to the base mass
              return Mass2D::points(std::move(keep));
            }
            if (mu.is_polygon()) {
              // Scale the normal by a rational bound on |n| to stay exact.
              Rat len = exact_rat(std::sqrt(nn.get_d()));
              auto poly = clip_halfplane(mu.as_polygon().vertices, n, Rat(-width * len));
              poly = clip_halfplane(poly, n, Rat(width * len), true);
              if (poly.size() < 3 || polygon_area(poly) == 0) return mu;
              return Mass2D::polygon(std::move(poly));
            }
            return mu;
          },
          "mass restricted to a strip around another line"};
}

struct ProductConfig {
  int restart_grid = 8;  ///< starting parameters per axis
  int max_sweeps = 60;
  double tol = 1e-9;
};

struct ProductCertificate {
  std::vector<Point2> normals;
  std::vector<OrientedLine2> lines;
  std::vector<Quantity> imbalances;
  bool exact = true;
};

namespace detail {

/// Origin line through the fixed mass: exact for points (arc enumeration,
/// preferring zero imbalance), bisection over t for continuous masses.
inline std::optional<Point2> solve_origin_line(const Mass2D& mu, double tol) {
  if (mu.is_points()) {
    std::vector<Point2> crit;
    for (const auto& wp : mu.as_points().points)
      if (wp.p.x != 0 || wp.p.y != 0) crit.push_back(perp(wp.p));
    auto cands = line_candidates(crit);
    const Mass2D* m = &mu;
    auto imb = [&](const Point2& n) { return halfplane_measure(*m, OrientedLine2(Direction2(n), Rat(0))); };
    std::optional<Point2> pick;
    for (int pass = 0; pass < 3 && !pick; ++pass)
      for (const auto& c : cands) {
        if (pass == 0 && c.critical) continue;
        auto r = imb(c.dir);
        bool good = pass < 2 ? r.imbalance().rat() == 0
                             : is_bisected(mu, OrientedLine2(Direction2(c.dir), Rat(0)));
        if (good) {
          pick = c.dir;
          break;
        }
      }
    return pick;
  }
  auto g = [&](double t) {
    double den = 1 + t * t;
    Vec2<double> n{(1 - t * t) / den, 2 * t / den};
    return approx_imbalance(mu, n, 0.0);
  };
  double a = -1, b = 1, ga = g(a);
  if (ga == 0) return origin_normal(Rat(-1));
  for (int it = 0; it < 200; ++it) {
    double mid = (a + b) / 2;
    if (mid == a || mid == b) break;
    double gm = g(mid);
    if (gm == 0) return origin_normal(exact_rat(mid));
    if ((gm > 0) == (ga > 0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  double t = (a + b) / 2;
  if (std::fabs(g(t)) > tol) return std::nullopt;
  return origin_normal(exact_rat(t));
}

}  // namespace detail

/// n lines through the origin (d = 2) with line i bisecting the i-th
/// assigned mass, by block-coordinate solves from a grid of starting tuples.
inline ProductCertificate solve_product_bisection(const std::vector<ProductAssignment>& as, int d = 2,
                                                  ProductConfig cfg = {}) {
  if (d != 2) throw UnsupportedDimension("product bisection is implemented for d = 2");
  std::size_t n = as.size();
  if (n < 1 || n > 3) throw UnsupportedDimension("product bisection supports 1 to 3 lines");

  auto verify = [&](const std::vector<Point2>& normals) -> std::optional<ProductCertificate> {
    ProductCertificate cert;
    cert.normals = normals;
    for (std::size_t i = 0; i < n; ++i) {
      Mass2D mu = as[i](normals);
      OrientedLine2 l{Direction2(normals[i]), Rat(0)};
      auto r = halfplane_measure(mu, l);
      bool ok = mu.is_points() ? is_bisected(mu, l) : r.imbalance().within(cfg.tol);
      if (!ok) return std::nullopt;
      cert.exact = cert.exact && mu.is_points();
      cert.lines.push_back(l);
      cert.imbalances.push_back(r.imbalance());
    }
    return cert;
  };

  int g = std::max(1, cfg.restart_grid);
  std::size_t restarts = 1;
  for (std::size_t i = 1; i < n; ++i) restarts *= g;
  for (std::size_t r = 0; r < restarts; ++r) {
    std::vector<Point2> ts(n, origin_normal(Rat(0)));
    std::size_t code = r;
    for (std::size_t i = 1; i < n; ++i, code /= g)
      ts[i] = origin_normal(frac(static_cast<long>(2 * (code % g)) - g, g));
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      bool stuck = false;
      for (std::size_t i = 0; i < n && !stuck; ++i) {
        Mass2D mu = as[i](ts);
        auto t = detail::solve_origin_line(mu, cfg.tol);
        if (!t) stuck = true;
        else ts[i] = *t;
      }
      if (stuck) break;
      if (auto cert = verify(ts)) return *cert;
    }
  }
  throw SearchExhausted("block-coordinate search did not converge from any restart");
}

}  // namespace mpart
