#pragma once
// Seeded random instances with rational coordinates.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mpart/errors.hpp"
#include "mpart/io.hpp"
#include "mpart/subspace.hpp"

namespace mpart {

struct GenOptions {
  std::string kind;
  int size = 4;    ///< points or lines per set
  int masses = 0;  ///< parity: number of masses (defaults to n)
  int n = 2;       ///< parity / product: number of lines
  std::string mode = "origin";  ///< parity: origin | lifted
  std::uint64_t seed = 0;
};

namespace detail {

/// mt19937_64 output is fixed by the standard; the distributions are not,
/// so bounded draws are done by hand to keep files identical across
/// standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : g_(seed) {}
  long integer(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = g_();
    while (x >= limit);
    return lo + static_cast<long>(x % span);
  }
  /// p/q with |p/q| <= bound and q in 1..den.
  Rat rational(long bound, long den) {
    long q = integer(1, den);
    return frac(integer(-bound * q, bound * q), q);
  }

 private:
  std::mt19937_64 g_;
};

inline int even_at_least_two(int n) { return std::max(2, n + (n % 2)); }

inline void check_size(int size, int cap, const char* what) {
  if (size < 1 || size > cap) throw InvalidInput(std::string(what) + " must be between 1 and " + std::to_string(cap));
}

inline Line3 random_line3(Draw& r) {
  for (;;) {
    Point3 base{r.rational(6, 3), r.rational(6, 3), r.rational(6, 3)};
    Point3 dir{Rat(r.integer(-5, 5)), Rat(r.integer(-5, 5)), Rat(r.integer(-5, 5))};
    if (dir.x == 0 && dir.y == 0) continue;
    return {base, Direction3(dir.x, dir.y, dir.z)};
  }
}

inline Lines3Instance gen_lines3(Draw& r, int size) {
  Lines3Instance inst;
  std::vector<Line3>* sets[3] = {&inst.R, &inst.B, &inst.G};
  for (auto* s : sets) {
    for (int i = 0; i < size; ++i) {
      // Rejection sampling: keep the first candidate that leaves the partial
      // instance in general position.
      for (;;) {
        s->push_back(random_line3(r));
        if (check_general_position(inst).ok()) break;
        s->pop_back();
      }
    }
  }
  return inst;
}

inline std::vector<Point2> distinct_points(Draw& r, int count, long bound, std::set<std::pair<Rat, Rat>>& used) {
  std::vector<Point2> out;
  while (static_cast<int>(out.size()) < count) {
    Point2 p{Rat(r.integer(-bound, bound)), Rat(r.integer(-bound, bound))};
    if (used.insert({p.x, p.y}).second) out.push_back(p);
  }
  return out;
}

inline std::vector<WeightedPoint3> random_points3(Draw& r, int count) {
  std::vector<WeightedPoint3> out;
  std::set<std::vector<Rat>> used;
  while (static_cast<int>(out.size()) < count) {
    Point3 p{Rat(r.integer(-10, 10)), Rat(r.integer(-10, 10)), Rat(r.integer(-10, 10))};
    if (used.insert({p.x, p.y, p.z}).second) out.push_back({p, Rat(1)});
  }
  return out;
}

/// A mass inside the square [cx-4, cx+4] x [cy-4, cy+4]; the kind cycles
/// through points, polygon, disk.
inline Mass2D boxed_mass(Draw& r, int which, const Rat& cx, const Rat& cy, int points) {
  switch (which % 3) {
    case 0: {
      std::vector<WeightedPoint> pts;
      std::set<std::pair<Rat, Rat>> used;
      while (static_cast<int>(pts.size()) < points) {
        Point2 p{Rat(cx + frac(r.integer(-16, 16), 4)), Rat(cy + frac(r.integer(-16, 16), 4))};
        if (used.insert({p.x, p.y}).second) pts.push_back({p, Rat(1)});
      }
      return Mass2D::points(std::move(pts));
    }
    case 1: {
      Rat w = frac(r.integer(2, 8), 2), h = frac(r.integer(2, 8), 2);
      Rat x0 = cx - w / 2, y0 = cy - h / 2;
      return Mass2D::polygon({{x0, y0}, {Rat(x0 + w), y0}, {Rat(x0 + w), Rat(y0 + h)}, {Rat(x0 + 2 * w / 3), Rat(y0 + h + 1)},
                              {x0, Rat(y0 + h)}});
    }
    default:
      return Mass2D::disk({cx, cy}, frac(r.integer(2, 6), 2));
  }
}

}  // namespace detail

/// Reproducible random instance of the requested kind.
inline Instance generate_instance(const GenOptions& opt) {
  using namespace detail;
  Draw r(opt.seed);
  Instance inst;
  inst.kind = opt.kind;
  if (opt.kind == "lines3") {
    check_size(opt.size, 12, "lines3 size");
    inst.lines3 = gen_lines3(r, even_at_least_two(opt.size));
  } else if (opt.kind == "hs2d") {
    check_size(opt.size, 64, "hs2d size");
    int n = even_at_least_two(opt.size);
    std::set<std::pair<Rat, Rat>> used;
    for (int k = 0; k < 2; ++k) inst.masses.push_back(Mass2D::unit_points(distinct_points(r, n, 20, used)));
  } else if (opt.kind == "centerpoint") {
    check_size(opt.size, 200, "centerpoint size");
    std::set<std::pair<Rat, Rat>> used;
    inst.masses.push_back(Mass2D::unit_points(distinct_points(r, opt.size, 20, used)));
  } else if (opt.kind == "transversal") {
    check_size(opt.size, 40, "transversal size");
    for (int k = 0; k < 2; ++k) inst.masses3.push_back(random_points3(r, opt.size));
  } else if (opt.kind == "parity") {
    if (opt.n < 1 || opt.n > 3) throw InvalidInput("parity n must be between 1 and 3");
    int m = opt.masses == 0 ? opt.n : opt.masses;
    if (m != opt.n) throw InvalidInput("parity in the plane and on the line takes exactly n masses for n lines");
    check_size(opt.size, 24, "parity size");
    inst.mode = opt.mode;
    if (opt.mode == "origin") {
      // One mass per square of side 8 on a row, so supports are disjoint.
      for (int i = 0; i < m; ++i) {
        Rat cx(10 * i - 10 * (m - 1) / 2 + r.integer(-1, 1)), cy(r.integer(-6, 6));
        inst.masses.push_back(boxed_mass(r, i, cx, cy, even_at_least_two(opt.size)));
      }
    } else if (opt.mode == "lifted") {
      Rat x(r.integer(-6, 0));
      for (int i = 0; i < m; ++i) {
        if (i % 2 == 0) {
          Rat len = frac(r.integer(2, 8), 2);
          inst.masses1d.push_back(Mass1D::interval(x, Rat(x + len)));
          x += len;
        } else {
          Mass1D::Points pts;
          for (int k = 0; k < opt.size; ++k) {
            x += frac(r.integer(1, 4), 2);
            pts.emplace_back(x, Rat(1));
          }
          inst.masses1d.push_back(Mass1D::points(std::move(pts)));
        }
        x += 1;
      }
    } else {
      throw InvalidInput("parity mode must be 'origin' or 'lifted'");
    }
  } else if (opt.kind == "product") {
    if (opt.n < 1 || opt.n > 3) throw InvalidInput("product n must be between 1 and 3");
    // Line 0 bisects a fixed mass; every later line bisects the part of a
    // square lying in a strip around the previous line.
    for (int i = 0; i < opt.n; ++i) {
      AssignmentSpec a;
      if (i == 0) {
        a.family = "constant";
        a.mass.push_back(boxed_mass(r, r.integer(0, 2), Rat(r.integer(-6, 6)), Rat(r.integer(-6, 6)),
                                    even_at_least_two(opt.size)));
      } else {
        a.family = "strip";
        Rat s(r.integer(8, 14)), cx(r.integer(-3, 3)), cy(r.integer(-3, 3));
        a.mass.push_back(Mass2D::polygon({{Rat(cx - s), Rat(cy - s)}, {Rat(cx + s), Rat(cy - s)},
                                          {Rat(cx + s), Rat(cy + s)}, {Rat(cx - s), Rat(cy + s)}}));
        a.other = static_cast<std::size_t>(i - 1);
        a.width = Rat(r.integer(2, 5));
      }
      inst.assignments.push_back(std::move(a));
    }
  } else if (opt.kind == "horizontal") {
    check_size(opt.size, 24, "horizontal size");
    for (int k = 0; k < 3; ++k) {
      AssignmentSpec a;
      a.family = "project_points";
      a.points = random_points3(r, even_at_least_two(opt.size));
      inst.assignments.push_back(std::move(a));
    }
  } else {
    throw InvalidInput("unknown kind '" + opt.kind + "'");
  }
  return inst;
}

}  // namespace mpart
