#pragma once

// Parity regions of oriented line arrangements, bisection and almost
// bisection tests and solvers, and zero sets of limit antipodal functions.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mpart/geom.hpp"
#include "mpart/mass.hpp"
#include "mpart/subspace.hpp"

namespace mpart {

class OrientedArrangement {
 public:
  explicit OrientedArrangement(std::vector<OrientedLine2> lines) : lines_(std::move(lines)) {
    if (lines_.empty()) throw InvalidInput("an arrangement needs at least one line");
    for (std::size_t i = 0; i < lines_.size(); ++i)
      for (std::size_t j = i + 1; j < lines_.size(); ++j)
        if (lines_[i].same_line(lines_[j]))
          throw InvalidInput("lines " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  }

  const std::vector<OrientedLine2>& lines() const { return lines_; }
  std::size_t size() const { return lines_.size(); }

  OrientedArrangement reorient(std::size_t i) const {
    auto ls = lines_;
    ls.at(i) = ls[i].flip();
    return OrientedArrangement(std::move(ls));
  }
  /// Lines other than i (possibly empty, hence a plain vector).
  std::vector<OrientedLine2> without(std::size_t i) const {
    std::vector<OrientedLine2> out;
    for (std::size_t j = 0; j < lines_.size(); ++j)
      if (j != i) out.push_back(lines_[j]);
    return out;
  }

 private:
  std::vector<OrientedLine2> lines_;
};

/// +1 if p lies on the positive side of an even number of lines.
inline int parity_sign(const Point2& p, std::span<const OrientedLine2> lines) {
  int count = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    int s = side_of(lines[i], p);
    if (s == 0) throw OnBoundary("point lies on line " + std::to_string(i));
    if (s > 0) ++count;
  }
  return count % 2 == 0 ? 1 : -1;
}
inline int parity_sign(const Point2& p, const OrientedArrangement& a) { return parity_sign(p, a.lines()); }

namespace detail {

template <class T>
T shoelace(const std::vector<Vec2<T>>& p) {
  T a(0);
  for (std::size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
  return a / 2;
}

/// Cells of a convex region cut by lines, each with its parity sign.
template <class T>
std::vector<std::pair<std::vector<Vec2<T>>, int>> parity_cells(std::vector<Vec2<T>> region,
                                                              std::span<const Vec2<T>> normals,
                                                              std::span<const T> offsets) {
  std::vector<std::pair<std::vector<Vec2<T>>, int>> cells{{std::move(region), 0}};
  for (std::size_t i = 0; i < normals.size(); ++i) {
    std::vector<std::pair<std::vector<Vec2<T>>, int>> next;
    for (auto& [poly, count] : cells) {
      auto pos = clip_halfplane(poly, normals[i], offsets[i]);
      auto neg = clip_halfplane(poly, normals[i], offsets[i], true);
      if (pos.size() >= 3) next.emplace_back(std::move(pos), count + 1);
      if (neg.size() >= 3) next.emplace_back(std::move(neg), count);
    }
    cells = std::move(next);
  }
  for (auto& c : cells) c.second = c.second % 2 == 0 ? 1 : -1;
  return cells;
}

constexpr std::size_t kMaxPolygonLines = 6;

}  // namespace detail

/// mu(R+) - mu(R-). Points on a line count for neither region. With no lines
/// every point has even parity, so the imbalance is the total.
inline Quantity parity_imbalance(const Mass2D& mu, std::span<const OrientedLine2> lines) {
  if (mu.is_points()) {
    Rat s(0);
    for (const auto& wp : mu.as_points().points) {
      int count = 0;
      bool boundary = false;
      for (const auto& l : lines) {
        int side = side_of(l, wp.p);
        if (side == 0) boundary = true;
        if (side > 0) ++count;
      }
      if (!boundary) s += count % 2 == 0 ? wp.w : Rat(-wp.w);
    }
    return s;
  }
  if (lines.size() > detail::kMaxPolygonLines)
    throw InvalidInput("continuous masses support at most 6 lines; use point masses beyond that");
  std::vector<Point2> normals;
  std::vector<Rat> offsets;
  for (const auto& l : lines) {
    normals.push_back(l.normal().vec());
    offsets.push_back(l.offset());
  }
  if (mu.is_polygon()) {
    Rat s(0);
    for (const auto& [cell, sign] : detail::parity_cells<Rat>(mu.as_polygon().vertices, normals, offsets))
      s += sign * polygon_area(cell);
    return s;
  }
  // Disk: exact cells of the bounding square, closed-form disk-polygon areas.
  const Disk& d = mu.as_disk();
  double s = 0;
  for (const auto& [cell, sign] : detail::parity_cells<Rat>(disk_bounding_square(d), normals, offsets)) {
    std::vector<Vec2<double>> poly;
    for (const auto& v : cell) poly.push_back(to_double(v));
    s += sign * disk_polygon_area(d, poly);
  }
  return s;
}
inline Quantity parity_imbalance(const Mass2D& mu, const OrientedArrangement& a) {
  return parity_imbalance(mu, a.lines());
}

/// Double-precision parity imbalance for lines given by normals and offsets.
inline double approx_parity_imbalance(const Mass2D& mu, std::span<const Vec2<double>> normals,
                                      std::span<const double> offsets) {
  if (mu.is_points()) {
    double s = 0;
    for (const auto& wp : mu.as_points().points) {
      auto p = to_double(wp.p);
      int count = 0;
      bool boundary = false;
      for (std::size_t i = 0; i < normals.size(); ++i) {
        double v = dot(normals[i], p) - offsets[i];
        if (v == 0) boundary = true;
        if (v > 0) ++count;
      }
      if (!boundary) s += (count % 2 == 0 ? 1 : -1) * wp.w.get_d();
    }
    return s;
  }
  std::vector<Vec2<double>> region;
  if (mu.is_polygon()) {
    for (const auto& v : mu.as_polygon().vertices) region.push_back(to_double(v));
  } else {
    for (const auto& v : disk_bounding_square(mu.as_disk())) region.push_back(to_double(v));
  }
  double s = 0;
  for (const auto& [cell, sign] : detail::parity_cells<double>(region, normals, offsets))
    s += sign * (mu.is_polygon() ? detail::shoelace(cell) : disk_polygon_area(mu.as_disk(), cell));
  return s;
}

// ---------------------------------------------------------------------------

enum class Verdict { Bisected, AlmostBisected, Failed };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Bisected:
      return "Bisected";
    case Verdict::AlmostBisected:
      return "AlmostBisected";
    default:
      return "Failed";
  }
}

struct MassVerdict {
  Verdict verdict = Verdict::Failed;
  std::optional<std::size_t> witness;  ///< removed line for AlmostBisected
  Quantity imbalance{Rat(0)};          ///< with all lines
  Quantity residual{Rat(0)};           ///< |imbalance| or |imbalance without witness|
};

inline MassVerdict almost_bisection_verdict(const Mass2D& mu, const OrientedArrangement& a, double tol) {
  MassVerdict v;
  v.imbalance = parity_imbalance(mu, a);
  v.residual = v.imbalance.abs();
  if (v.imbalance.within(tol)) {
    v.verdict = Verdict::Bisected;
    return v;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    Quantity q = parity_imbalance(mu, a.without(i));
    if (q.within(tol)) {
      v.verdict = Verdict::AlmostBisected;
      v.witness = i;
      v.residual = q.abs();
      return v;
    }
  }
  return v;
}

/// Per-mass verdicts; AlmostBisected reports the first witness line in order.
inline std::vector<MassVerdict> is_almost_bisection(const std::vector<Mass2D>& masses, const OrientedArrangement& a,
                                                    double tol = 0) {
  std::vector<MassVerdict> out;
  for (const auto& m : masses) out.push_back(almost_bisection_verdict(m, a, tol));
  return out;
}

/// Verdicts judging point masses exactly and continuous masses within tol.
inline std::vector<MassVerdict> mixed_verdicts(const std::vector<Mass2D>& masses, const OrientedArrangement& a,
                                               double tol) {
  std::vector<MassVerdict> out;
  for (const auto& m : masses) out.push_back(almost_bisection_verdict(m, a, m.is_points() ? 0.0 : tol));
  return out;
}

// ---------------------------------------------------------------------------
// Almost bisection by lines through the origin.

struct OriginConfig {
  int samples = 64;   ///< angle samples per coordinate step for continuous masses
  int restarts = 8;
  int max_sweeps = 40;
  double tol = 1e-9;
  int phase = 0;  ///< shifts the restart grid
};

struct OriginSolution {
  std::vector<OrientedLine2> lines;
  std::vector<MassVerdict> verdicts;
};

namespace detail {

/// Per-mass min(|imbalance|, |imbalance without one line|), largest first.
/// Compared lexicographically, so a step that fixes one mass counts as
/// progress even while another mass still sets the maximum.
inline std::vector<double> origin_objective_exact(const std::vector<Mass2D>& masses,
                                                  const std::vector<Point2>& normals) {
  std::vector<OrientedLine2> ls;
  for (const auto& n : normals) ls.emplace_back(Direction2(n), Rat(0));
  std::vector<double> out;
  for (const auto& m : masses) {
    Quantity best = parity_imbalance(m, ls).abs();
    for (std::size_t j = 0; j < ls.size() && best.approx() > 0; ++j) {
      std::vector<OrientedLine2> rest;
      for (std::size_t k = 0; k < ls.size(); ++k)
        if (k != j) rest.push_back(ls[k]);
      Quantity q = parity_imbalance(m, rest).abs();
      if (q.approx() < best.approx()) best = q;
    }
    out.push_back(best.approx());
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline Vec2<double> unit_at(double th) { return {std::cos(th), std::sin(th)}; }

}  // namespace detail

/// n lines through the origin almost simultaneously bisecting n planar
/// masses (d = 2). Coordinate search: each step re-places one line at the
/// candidate angle minimizing the largest per-mass residual; candidates are
/// the zeros of every imbalance that depends on that line.
inline OriginSolution solve_almost_bisect_origin(const std::vector<Mass2D>& masses, int d = 2,
                                                 OriginConfig cfg = {}) {
  if (d != 2) throw UnsupportedDimension("origin almost-bisection is implemented for d = 2");
  std::size_t n = masses.size();
  if (n < 1 || n > 3) throw UnsupportedDimension("origin almost-bisection supports 1 to 3 lines");

  // Point masses change imbalance only at lines through their points, so the
  // directions through points and between consecutive ones cover them.
  std::vector<Point2> critical;
  for (const auto& m : masses)
    if (m.is_points())
      for (const auto& wp : m.as_points().points)
        if (wp.p.x != 0 || wp.p.y != 0) critical.push_back(perp(wp.p));
  auto point_cands = critical.empty() ? std::vector<AngularCandidate<Rat>>{} : line_candidates(critical);

  auto finish = [&](const std::vector<Point2>& normals) -> std::optional<OriginSolution> {
    std::vector<OrientedLine2> ls;
    for (const auto& nv : normals) ls.emplace_back(Direction2(nv), Rat(0));
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i + 1; j < ls.size(); ++j)
        if (ls[i].same_line(ls[j])) return std::nullopt;
    OrientedArrangement arr(ls);
    auto verdicts = mixed_verdicts(masses, arr, cfg.tol);
    for (const auto& v : verdicts)
      if (v.verdict == Verdict::Failed) return std::nullopt;
    return OriginSolution{ls, verdicts};
  };
  auto exact_dir = [](double th) { return Point2{exact_rat(std::cos(th)), exact_rat(std::sin(th))}; };

  for (int r = 0; r < cfg.restarts; ++r) {
    // Starting angles spread over the half circle, shifted per restart.
    std::vector<Point2> exact(n);
    for (std::size_t j = 0; j < n; ++j) {
      double frac = (static_cast<double>(j) + (r + cfg.phase * 0.37) / cfg.restarts) / static_cast<double>(n);
      exact[j] = exact_dir(std::numbers::pi * (frac - std::floor(frac)));
    }
    auto current = detail::origin_objective_exact(masses, exact);
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      bool improved = false;
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Point2> cands;
        for (const auto& c : point_cands) cands.push_back(c.dir);

        std::vector<Vec2<double>> normals;
        for (const auto& e : exact) normals.push_back(to_double(e));
        // Zeros of each continuous imbalance involving line j, as a function
        // of its angle.
        std::vector<std::function<double(double)>> fs;
        for (const auto& m : masses) {
          if (m.is_points()) continue;
          for (int skip = -1; skip < static_cast<int>(n); ++skip) {
            if (skip == static_cast<int>(j)) continue;
            fs.push_back([&, skip, mp = &m](double th) {
              std::vector<Vec2<double>> ns;
              for (std::size_t k = 0; k < n; ++k) {
                if (static_cast<int>(k) == skip) continue;
                ns.push_back(k == j ? detail::unit_at(th) : normals[k]);
              }
              std::vector<double> z(ns.size(), 0.0);
              return approx_parity_imbalance(*mp, ns, z);
            });
          }
        }
        int ks = std::max(8, cfg.samples);
        for (const auto& f : fs) {
          double prev_th = 0, prev_v = f(0);
          for (int k = 1; k <= ks; ++k) {
            double th = std::numbers::pi * k / ks;
            double v = f(th);
            if (prev_v == 0) cands.push_back(exact_dir(prev_th));
            if ((prev_v > 0 && v < 0) || (prev_v < 0 && v > 0)) {
              double a = prev_th, b = th, fa = prev_v;
              for (int it = 0; it < 100; ++it) {
                double mid = (a + b) / 2;
                if (mid == a || mid == b) break;
                double fm = f(mid);
                if ((fm > 0) == (fa > 0)) {
                  a = mid;
                  fa = fm;
                } else {
                  b = mid;
                }
              }
              cands.push_back(exact_dir((a + b) / 2));
            }
            prev_th = th;
            prev_v = v;
          }
        }

        auto best = current;
        Point2 best_dir = exact[j];
        for (const auto& c : cands) {
          auto trial = exact;
          trial[j] = c;
          auto v = detail::origin_objective_exact(masses, trial);
          if (v < best) {
            best = v;
            best_dir = c;
          }
        }
        if (best < current) {
          improved = true;
          current = best;
          exact[j] = best_dir;
        }
      }
      if (auto sol = finish(exact)) return *sol;
      if (!improved) break;
    }
  }
  throw SearchExhausted("no almost-bisecting origin lines found from any restart");
}

// ---------------------------------------------------------------------------
// One-dimensional masses lifted to the plane y = 1.

class Mass1D {
 public:
  using Points = std::vector<std::pair<Rat, Rat>>;  ///< (x, weight)
  struct Interval {
    Rat a, b;
  };

  static Mass1D points(Points pts) {
    if (pts.empty()) throw InvalidInput("1D point mass needs points");
    for (const auto& [x, w] : pts)
      if (sign_of(w) <= 0) throw InvalidInput("1D point weights must be positive");
    return Mass1D(std::move(pts));
  }
  static Mass1D interval(Rat a, Rat b) {
    if (!(a < b)) throw InvalidInput("interval needs a < b");
    return Mass1D(Interval{std::move(a), std::move(b)});
  }

  bool is_points() const { return std::holds_alternative<Points>(v_); }
  const Points& as_points() const { return std::get<Points>(v_); }
  const Interval& as_interval() const { return std::get<Interval>(v_); }

  Rat total() const {
    if (!is_points()) return as_interval().b - as_interval().a;
    Rat s(0);
    for (const auto& p : as_points()) s += p.second;
    return s;
  }

  /// The planar mass on which origin lines act like cuts of this one:
  /// points x go to (x, 1); an interval becomes the cone over it from the
  /// origin, whose area splits in proportion to length along y = 1.
  Mass2D lift() const {
    if (is_points()) {
      std::vector<WeightedPoint> out;
      for (const auto& [x, w] : as_points()) out.push_back({{x, Rat(1)}, w});
      return Mass2D::points(std::move(out));
    }
    const auto& iv = as_interval();
    return Mass2D::polygon({{Rat(0), Rat(0)}, {iv.b, Rat(1)}, {iv.a, Rat(1)}});
  }

 private:
  explicit Mass1D(std::variant<Points, Interval> v) : v_(std::move(v)) {}
  std::variant<Points, Interval> v_;
};

/// A cut of the real line: positive side is orientation * (x - at) > 0.
struct Cut1D {
  Rat at;
  int orientation = 1;
};

/// mu(R+) - mu(R-) for cuts of the real line, exact. Points on a cut count
/// for neither region.
inline Rat parity_imbalance_1d(const Mass1D& mu, std::span<const Cut1D> cuts) {
  auto parity = [&](const Rat& x, bool& boundary) {
    int count = 0;
    boundary = false;
    for (const auto& c : cuts) {
      int s = sign_of(Rat(x - c.at)) * c.orientation;
      if (s == 0) boundary = true;
      if (s > 0) ++count;
    }
    return count % 2 == 0 ? 1 : -1;
  };
  Rat s(0);
  bool boundary;
  if (mu.is_points()) {
    for (const auto& [x, w] : mu.as_points()) {
      int p = parity(x, boundary);
      if (!boundary) s += p * w;
    }
    return s;
  }
  const auto& iv = mu.as_interval();
  std::vector<Rat> breaks{iv.a, iv.b};
  for (const auto& c : cuts)
    if (iv.a < c.at && c.at < iv.b) breaks.push_back(c.at);
  std::sort(breaks.begin(), breaks.end());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i] == breaks[i + 1]) continue;
    Rat mid = (breaks[i] + breaks[i + 1]) / 2;
    s += parity(mid, boundary) * Rat(breaks[i + 1] - breaks[i]);
  }
  return s;
}

struct Verdict1D {
  Verdict verdict = Verdict::Failed;
  std::optional<std::size_t> witness;
  Rat imbalance{0};
};

inline std::vector<Verdict1D> almost_bisection_verdicts_1d(const std::vector<Mass1D>& masses,
                                                           const std::vector<Cut1D>& cuts, double tol) {
  std::vector<Verdict1D> out;
  for (const auto& m : masses) {
    Verdict1D v;
    v.imbalance = parity_imbalance_1d(m, cuts);
    // Point masses are judged exactly; tol applies to intervals only.
    auto within = [&](const Rat& q) { return tol == 0 || m.is_points() ? q == 0 : rat_abs(q) <= exact_rat(tol); };
    if (within(v.imbalance)) {
      v.verdict = Verdict::Bisected;
    } else {
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        std::vector<Cut1D> rest;
        for (std::size_t j = 0; j < cuts.size(); ++j)
          if (j != i) rest.push_back(cuts[j]);
        if (within(parity_imbalance_1d(m, rest))) {
          v.verdict = Verdict::AlmostBisected;
          v.witness = i;
          break;
        }
      }
    }
    out.push_back(v);
  }
  return out;
}

struct LiftedSolution {
  std::vector<Cut1D> cuts;
  std::vector<OrientedLine2> lifted;  ///< the origin lines in the plane
  std::vector<Verdict1D> verdicts;
};

/// n cuts of the real line almost simultaneously bisecting n masses (d = 1),
/// via origin lines in the plane meeting y = 1.
inline LiftedSolution lift_and_solve(const std::vector<Mass1D>& masses, int d = 1, OriginConfig cfg = {}) {
  if (d != 1) throw UnsupportedDimension("lifting is implemented for d = 1");
  std::vector<Mass2D> lifted;
  for (const auto& m : masses) lifted.push_back(m.lift());
  // Lifted triangles have half the 1D measure.
  double tol1 = cfg.tol;
  cfg.tol /= 2;
  for (int attempt = 0; attempt < 4; ++attempt, ++cfg.phase) {
    auto sol = solve_almost_bisect_origin(lifted, 2, cfg);
    LiftedSolution out;
    out.lifted = sol.lines;
    bool parallel = false;
    for (const auto& l : sol.lines) {
      const Rat& alpha = l.normal().x();
      const Rat& beta = l.normal().y();
      if (alpha == 0) {
        parallel = true;
        break;
      }
      out.cuts.push_back({Rat(-beta / alpha), sign_of(alpha)});
    }
    if (parallel) continue;
    out.verdicts = almost_bisection_verdicts_1d(masses, out.cuts, tol1);
    return out;
  }
  throw LiftedLineParallel("every attempt returned a line parallel to y = 1");
}

// ---------------------------------------------------------------------------
// Piecewise linear limit antipodal functions.

/// Continuous piecewise linear function through (xs[i], ys[i]), constant
/// beyond the first and last breakpoint.
struct PLFunction {
  std::vector<Rat> xs, ys;
  Rat left_tail, right_tail;

  Rat operator()(const Rat& x) const {
    if (x <= xs.front()) return left_tail;
    if (x >= xs.back()) return right_tail;
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    return ys[i] + (ys[i + 1] - ys[i]) * (x - xs[i]) / (xs[i + 1] - xs[i]);
  }
};

/// Checks the shape and the limit antipodal condition. `index` tags errors
/// for members of a family.
inline void admit_limit_antipodal(const PLFunction& f, std::optional<std::size_t> index = std::nullopt) {
  auto fail = [&](const std::string& why) {
    if (index) throw NotLimitAntipodal("family member " + std::to_string(*index) + ": " + why, *index);
    throw NotLimitAntipodal(why);
  };
  if (f.xs.empty() || f.xs.size() != f.ys.size()) fail("breakpoints and values must be nonempty and equal in number");
  for (std::size_t i = 0; i + 1 < f.xs.size(); ++i)
    if (!(f.xs[i] < f.xs[i + 1])) fail("breakpoints must be strictly increasing");
  if (f.ys.front() != f.left_tail || f.ys.back() != f.right_tail) fail("tails must continue the end values");
  if (f.right_tail != -f.left_tail) fail("right tail must equal minus the left tail");
}

/// A connected component of the zero set; nullopt ends are infinite.
struct ZeroComponent {
  std::optional<Rat> lo, hi;

  bool contains(const Rat& x) const { return (!lo || *lo <= x) && (!hi || x <= *hi); }
  bool unbounded() const { return !lo || !hi; }
  bool overlaps(const ZeroComponent& o) const {
    bool left_ok = !hi || !o.lo || *o.lo <= *hi;
    bool right_ok = !o.hi || !lo || *lo <= *o.hi;
    return left_ok && right_ok;
  }
};

struct LimitAntipodalReport {
  std::vector<ZeroComponent> components;
  std::size_t count = 0;
  bool zero_at_origin = false;
  bool vanishing_limits = false;
  /// f(0) = 0 or the zero set is unbounded.
  bool in_zero_locus = false;
};

inline LimitAntipodalReport analyze_limit_antipodal(const PLFunction& f) {
  admit_limit_antipodal(f);
  std::vector<ZeroComponent> raw;
  const auto& xs = f.xs;
  const auto& ys = f.ys;
  if (f.left_tail == 0) raw.push_back({std::nullopt, xs.front()});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ys[i] == 0) raw.push_back({xs[i], xs[i]});
    if (i + 1 < xs.size()) {
      int a = sign_of(ys[i]), b = sign_of(ys[i + 1]);
      if (a == 0 && b == 0)
        raw.push_back({xs[i], xs[i + 1]});
      else if (a * b < 0) {
        Rat x = xs[i] - ys[i] * (xs[i + 1] - xs[i]) / (ys[i + 1] - ys[i]);
        raw.push_back({x, x});
      }
    }
  }
  if (f.right_tail == 0) raw.push_back({xs.back(), std::nullopt});
  // Pieces arrive in increasing order; merge touching ones.
  LimitAntipodalReport rep;
  for (auto& c : raw) {
    if (!rep.components.empty() && rep.components.back().overlaps(c)) {
      auto& last = rep.components.back();
      if (!c.hi)
        last.hi.reset();
      else if (last.hi && *c.hi > *last.hi)
        last.hi = c.hi;
    } else {
      rep.components.push_back(c);
    }
  }
  rep.count = rep.components.size();
  rep.zero_at_origin = f(Rat(0)) == 0;
  rep.vanishing_limits = f.left_tail == 0;
  rep.in_zero_locus = rep.zero_at_origin || rep.vanishing_limits;
  return rep;
}

struct FamilyComponent {
  std::vector<std::pair<std::size_t, std::size_t>> nodes;  ///< (level, zero component index)
  bool full_support = false;
  bool crosses_origin = false;  ///< meets x = 0 at a level or between two levels
  bool unbounded = false;
};

struct FamilyReport {
  std::vector<std::vector<ZeroComponent>> levels;
  std::vector<FamilyComponent> components;
  std::vector<std::size_t> full_support;  ///< indices into components, left to right at level 0
  std::optional<std::size_t> median;      ///< the median full-support component
  bool median_crosses_origin = false;
  bool any_zero_at_origin = false;
  bool any_vanishing_limits = false;
  /// Some level has f(0) = 0 or an unbounded zero set.
  bool criterion_met = false;
};

namespace detail {

class UnionFind {
 public:
  std::size_t add() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

inline std::size_t component_at(const std::vector<ZeroComponent>& comps, const Rat& x) {
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (comps[i].contains(x)) return i;
  throw std::logic_error("zero not covered by any component");
}

/// A piece of the zero set on the boundary of a cell of the strip between
/// two levels (s = 0 is the lower level).
struct StripFeature {
  std::size_t node;
  Rat x, s;
  enum Kind { Point, Horizontal, Vertical } kind = Point;
};

/// Joins the features of one cell that lie on a common connected piece of
/// the zero set of F = A + Bx + Cs + Dxs over the cell.
inline void join_cell(UnionFind& uf, const std::vector<StripFeature>& fs, const Rat& A, const Rat& B, const Rat& C,
                      const Rat& D, const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
  auto join_all = [&](auto pred) {
    std::optional<std::size_t> first;
    for (const auto& f : fs)
      if (pred(f)) {
        if (first)
          uf.unite(*first, f.node);
        else
          first = f.node;
      }
  };
  if (D == 0) {  // a line (or everything): its part in the cell is convex
    join_all([](const StripFeature&) { return true; });
    return;
  }
  Rat x0 = -C / D, s0 = -B / D;
  Rat k = (B * C - A * D) / (D * D);
  if (k != 0) {  // hyperbola: one connected arc per branch
    join_all([&](const StripFeature& f) { return f.x < x0; });
    join_all([&](const StripFeature& f) { return f.x > x0; });
    return;
  }
  // Two crossing lines x = x0 and s = s0.
  bool cross_inside = s0 >= 0 && s0 <= 1 && (!lo || *lo <= x0) && (!hi || x0 <= *hi);
  if (cross_inside) {
    join_all([](const StripFeature&) { return true; });
    return;
  }
  join_all([&](const StripFeature& f) {
    return f.kind == StripFeature::Vertical || (f.kind == StripFeature::Point && f.x == x0);
  });
  join_all([&](const StripFeature& f) {
    return f.kind == StripFeature::Horizontal || (f.kind == StripFeature::Point && f.s == s0);
  });
}

}  // namespace detail

/// Connected components of the zero region of a sampled family. Between
/// consecutive levels the family is interpolated linearly in t; on each cell
/// of the merged breakpoints the interpolant is bilinear, so connectivity of
/// its zero set is decided exactly from the cell's hyperbola.
inline FamilyReport full_support_components(const std::vector<PLFunction>& family) {
  if (family.size() < 16) throw InvalidInput("a family needs at least 16 levels");
  FamilyReport rep;
  detail::UnionFind uf;
  std::vector<std::size_t> first;  // node id of the first component of each level
  for (std::size_t i = 0; i < family.size(); ++i) {
    admit_limit_antipodal(family[i], i);
    auto a = analyze_limit_antipodal(family[i]);
    rep.any_zero_at_origin = rep.any_zero_at_origin || a.zero_at_origin;
    rep.any_vanishing_limits = rep.any_vanishing_limits || a.vanishing_limits;
    first.push_back(uf.size());
    for (std::size_t k = 0; k < a.components.size(); ++k) uf.add();
    rep.levels.push_back(std::move(a.components));
  }
  rep.criterion_met = rep.any_zero_at_origin || rep.any_vanishing_limits;
  const std::size_t level_nodes = uf.size();
  std::vector<bool> extra_crosses;  // for nodes beyond level_nodes

  for (std::size_t i = 0; i + 1 < family.size(); ++i) {
    const PLFunction& f0 = family[i];
    const PLFunction& f1 = family[i + 1];
    auto level_node = [&](std::size_t lvl, const Rat& x) {
      return first[lvl] + detail::component_at(rep.levels[lvl], x);
    };
    std::vector<Rat> xs(f0.xs);
    xs.insert(xs.end(), f1.xs.begin(), f1.xs.end());
    xs.push_back(Rat(0));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    // Zero-set features on the vertical edges x = xs[k].
    std::vector<std::optional<detail::StripFeature>> edge(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
      Rat a = f0(xs[k]), b = f1(xs[k]);
      if (a == 0 && b == 0) {
        std::size_t n0 = level_node(i, xs[k]), n1 = level_node(i + 1, xs[k]);
        uf.unite(n0, n1);
        edge[k] = detail::StripFeature{n0, xs[k], frac(1, 2), detail::StripFeature::Vertical};
      } else if (a == 0) {
        edge[k] = detail::StripFeature{level_node(i, xs[k]), xs[k], Rat(0)};
      } else if (b == 0) {
        edge[k] = detail::StripFeature{level_node(i + 1, xs[k]), xs[k], Rat(1)};
      } else if (sign_of(a) != sign_of(b)) {
        std::size_t n = uf.add();
        extra_crosses.push_back(xs[k] == 0);
        edge[k] = detail::StripFeature{n, xs[k], Rat(a / (a - b))};
      }
    }

    // Cells, including the two unbounded ones.
    for (long k = -1; k < static_cast<long>(xs.size()); ++k) {
      std::optional<Rat> lo, hi;
      if (k >= 0) lo = xs[k];
      if (k + 1 < static_cast<long>(xs.size())) hi = xs[k + 1];
      auto linear = [&](const PLFunction& f) -> std::pair<Rat, Rat> {  // (intercept, slope)
        if (!lo) return {f.left_tail, Rat(0)};
        if (!hi) return {f.right_tail, Rat(0)};
        Rat ya = f(*lo), yb = f(*hi);
        Rat slope = (yb - ya) / (*hi - *lo);
        return {Rat(ya - slope * *lo), slope};
      };
      auto [p, q] = linear(f0);
      auto [r, t] = linear(f1);
      Rat rep_x = lo && hi ? Rat((*lo + *hi) / 2) : lo ? *lo : *hi;
      std::vector<detail::StripFeature> fs;
      auto level_feature = [&](std::size_t lvl, const Rat& c0, const Rat& c1, const Rat& s) {
        if (c0 == 0 && c1 == 0) {
          fs.push_back({level_node(lvl, rep_x), rep_x, s, detail::StripFeature::Horizontal});
        } else if (c1 != 0) {
          Rat x = -c0 / c1;
          if ((!lo || *lo <= x) && (!hi || x <= *hi)) fs.push_back({level_node(lvl, x), x, s});
        }
      };
      level_feature(i, p, q, Rat(0));
      level_feature(i + 1, r, t, Rat(1));
      if (k >= 0 && edge[k]) fs.push_back(*edge[k]);
      if (hi && edge[k + 1]) fs.push_back(*edge[k + 1]);
      detail::join_cell(uf, fs, p, q, Rat(r - p), Rat(t - q), lo, hi);
    }
  }

  std::vector<long> comp_of_root(uf.size(), -1);
  for (std::size_t i = 0; i < rep.levels.size(); ++i)
    for (std::size_t a = 0; a < rep.levels[i].size(); ++a) {
      std::size_t root = uf.find(first[i] + a);
      if (comp_of_root[root] < 0) {
        comp_of_root[root] = static_cast<long>(rep.components.size());
        rep.components.emplace_back();
      }
      auto& c = rep.components[comp_of_root[root]];
      c.nodes.emplace_back(i, a);
      const auto& z = rep.levels[i][a];
      c.crosses_origin = c.crosses_origin || z.contains(Rat(0));
      c.unbounded = c.unbounded || z.unbounded();
    }
  for (std::size_t n = level_nodes; n < uf.size(); ++n) {
    long c = comp_of_root[uf.find(n)];
    if (c >= 0 && extra_crosses[n - level_nodes]) rep.components[c].crosses_origin = true;
  }
  for (std::size_t k = 0; k < rep.components.size(); ++k) {
    auto& c = rep.components[k];
    std::vector<bool> seen(rep.levels.size(), false);
    for (const auto& nd : c.nodes) seen[nd.first] = true;
    c.full_support = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    if (c.full_support) rep.full_support.push_back(k);
  }
  // Components are numbered in order of their first level-0 zero.
  if (!rep.full_support.empty()) {
    rep.median = rep.full_support[rep.full_support.size() / 2];
    rep.median_crosses_origin = rep.components[*rep.median].crosses_origin;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Families used as fixtures.

/// Parity imbalance of the unit disk as a second line, parallel to a first
/// line through the center, sweeps across it; sampled on x in [-2, 2] with
/// step 1/8 and normalized by the disk area. Values within 1e-12 of zero are
/// snapped to zero. `angle` rotates the configuration.
inline PLFunction disk_sweep_function(double angle = 0) {
  Disk d{{Rat(0), Rat(0)}, Rat(1)};
  Mass2D mu = Mass2D::disk(d.center, d.radius);
  Point2 n{exact_rat(std::cos(angle)), exact_rat(std::sin(angle))};
  PLFunction f;
  for (int k = -16; k <= 16; ++k) {
    Rat x = frac(k, 8);
    // At x = 0 the lines coincide and every point has even parity.
    std::vector<OrientedLine2> ls{OrientedLine2(Direction2(n), Rat(0)), OrientedLine2(Direction2(n), x)};
    double v = parity_imbalance(mu, ls).approx();
    v /= std::numbers::pi;
    if (std::fabs(v) <= 1e-12) v = 0;
    f.xs.push_back(x);
    f.ys.push_back(exact_rat(v));
  }
  f.left_tail = f.ys.front();
  f.right_tail = f.ys.back();
  return f;
}

/// The disk sweep rotated through a half turn, sampled at `levels` angles.
inline std::vector<PLFunction> disk_rotation_family(std::size_t levels = 16) {
  std::vector<PLFunction> fam;
  for (std::size_t i = 0; i < levels; ++i)
    fam.push_back(disk_sweep_function(std::numbers::pi * static_cast<double>(i) / static_cast<double>(levels - 1)));
  return fam;
}

/// PL function with transversal zeros at `zeros` (sorted), left tail `tail`,
/// alternating between +-|tail| midway between zeros.
inline PLFunction pl_with_zeros(const std::vector<Rat>& zeros, const Rat& tail) {
  PLFunction f;
  Rat v = tail;
  f.xs.push_back(zeros.front() - 1);
  f.ys.push_back(v);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    f.xs.push_back(zeros[i]);
    f.ys.push_back(Rat(0));
    v = -v;
    Rat next = i + 1 < zeros.size() ? Rat((zeros[i] + zeros[i + 1]) / 2) : Rat(zeros[i] + 1);
    f.xs.push_back(next);
    f.ys.push_back(v);
  }
  f.left_tail = tail;
  f.right_tail = f.ys.back();
  return f;
}

/// A family from f_0 with zeros (-3, -1, 2) to f_1(x) = -f_0(-x) with zeros
/// (-2, 1, 3), plus a short-lived pair of zeros near x = 5 in the middle
/// levels. The middle zero passes through the origin.
inline std::vector<PLFunction> synthetic_three_zero_family(std::size_t levels = 17) {
  std::vector<PLFunction> fam;
  for (std::size_t i = 0; i < levels; ++i) {
    Rat t = frac(static_cast<long>(i), static_cast<long>(levels - 1));
    std::vector<Rat> zeros{Rat(-3 + t), Rat(-1 + 2 * t), Rat(2 + t)};
    if (4 * i >= levels && 4 * i <= 3 * levels) {
      zeros.push_back(Rat(5));
      zeros.push_back(Rat(6));
    }
    fam.push_back(pl_with_zeros(zeros, Rat(1)));
  }
  return fam;
}

}  // namespace mpart
