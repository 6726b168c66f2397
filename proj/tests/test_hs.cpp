#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "mpart/errors.hpp"
#include "mpart/hs.hpp"
#include "support.hpp"

using namespace mpart;

namespace {

struct Counts {
  Rat pos, neg;
};

Counts strict_counts(const std::vector<Point2>& pts, const Point2& n, const Rat& c) {
  Counts k{Rat(0), Rat(0)};
  for (const auto& p : pts) {
    Rat v = n.x * p.x + n.y * p.y - c;
    if (v > 0) k.pos += 1;
    if (v < 0) k.neg += 1;
  }
  return k;
}

bool halves(const std::vector<Point2>& pts, const Point2& n, const Rat& c) {
  auto k = strict_counts(pts, n, c);
  Rat half = Rat(static_cast<long>(pts.size())) / 2;
  return k.pos <= half && k.neg <= half;
}

// Every line through two of the points, as is, rotated slightly either way
// about the pair's midpoint, and shifted slightly either way.
bool brute_force_cut_exists(const std::vector<Point2>& red, const std::vector<Point2>& blue) {
  std::vector<Point2> all = red;
  all.insert(all.end(), blue.begin(), blue.end());
  const Rat eps = frac(1, 1000000007);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i] == all[j]) continue;
      Point2 d = all[j] - all[i];
      Point2 n{Rat(-d.y), d.x};
      Point2 mid{Rat((all[i].x + all[j].x) / 2), Rat((all[i].y + all[j].y) / 2)};
      for (int rot = -1; rot <= 1; ++rot)
        for (int shift = -1; shift <= 1; ++shift) {
          Point2 m{Rat(n.x + rot * eps * d.x), Rat(n.y + rot * eps * d.y)};
          Rat c = m.x * mid.x + m.y * mid.y + shift * eps;
          if (halves(red, m, c) && halves(blue, m, c)) return true;
        }
    }
  return false;
}

// Brute-force depth: closed half-planes bounded by lines through p and one
// other point, rotated slightly either way, in both orientations.
Rat brute_force_depth_weight(const Point2& p, const std::vector<WeightedPoint>& pts) {
  const Rat eps = frac(1, 1000000007);
  Rat total(0);
  for (const auto& q : pts) total += q.w;
  Rat best = total;
  auto closed = [&](const Point2& n) {
    Rat s(0);
    for (const auto& q : pts)
      if (n.x * (q.p.x - p.x) + n.y * (q.p.y - p.y) >= 0) s += q.w;
    return s;
  };
  bool any = false;
  for (const auto& q : pts) {
    if (q.p == p) continue;
    any = true;
    Point2 d = q.p - p;
    Point2 n{Rat(-d.y), d.x};
    for (int rot = -1; rot <= 1; ++rot)
      for (int o : {-1, 1}) {
        Point2 m{Rat(o * (n.x + rot * eps * d.x)), Rat(o * (n.y + rot * eps * d.y))};
        best = std::min(best, closed(m));
      }
  }
  if (!any) best = closed({Rat(1), Rat(0)});
  return best;
}

Mass2D unit_square_at(const Rat& x, const Rat& y) {
  return Mass2D::polygon({{x, y}, {Rat(x + 1), y}, {Rat(x + 1), Rat(y + 1)}, {x, Rat(y + 1)}});
}

// Independent double-precision clip of a convex polygon to n.x >= c.
double clipped_area(const std::vector<Vec2<double>>& poly, Vec2<double> n, double c) {
  std::vector<Vec2<double>> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    auto a = poly[i], b = poly[(i + 1) % poly.size()];
    double fa = n.x * a.x + n.y * a.y - c, fb = n.x * b.x + n.y * b.y - c;
    if (fa >= 0) out.push_back(a);
    if ((fa > 0 && fb < 0) || (fa < 0 && fb > 0)) {
      double s = fa / (fa - fb);
      out.push_back({a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)});
    }
  }
  double area = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto a = out[i], b = out[(i + 1) % out.size()];
    area += a.x * b.y - a.y * b.x;
  }
  return area / 2;
}

std::vector<WeightedPoint3> random_cloud(testgen::Gen& g, int n) {
  std::vector<WeightedPoint3> out;
  for (int i = 0; i < n; ++i) out.push_back({g.point3(10), Rat(g.integer(1, 3))});
  return out;
}

// Closed halfspaces containing the line g: bounded by planes through g and
// one point, turned slightly about g either way, both orientations.
Rat brute_force_line_depth(const AffineFlat& g, const std::vector<WeightedPoint3>& pts) {
  const Rat eps = frac(1, 1000000007);
  const Point3& w = g.dirs.at(0);
  Rat total(0);
  for (const auto& q : pts) total += q.w;
  Rat best = total;
  auto closed = [&](const Point3& n) {
    Rat s(0);
    for (const auto& q : pts)
      if (dot(n, Point3(q.p - g.point)) >= 0) s += q.w;
    return s;
  };
  for (const auto& q : pts) {
    Point3 n = cross(w, Point3(q.p - g.point));
    if (n == Point3{}) continue;
    Point3 turn = cross(w, n);
    for (int rot = -1; rot <= 1; ++rot)
      for (int o : {-1, 1}) best = std::min(best, closed(Rat(o) * (n + Rat(rot * eps) * turn)));
  }
  return best / total;
}

}  // namespace

// ----------------------------------------------------------------------------
// Planar Ham-Sandwich cuts of point sets.

TEST(HamSandwichPoints, SymmetricCross) {
  auto cut = hs_cut_points({{Rat(-1), Rat(0)}, {Rat(1), Rat(0)}}, {{Rat(0), Rat(-1)}, {Rat(0), Rat(1)}});
  EXPECT_TRUE(cut.perturbed);
  EXPECT_EQ(cut.line.offset(), Rat(0));
  for (const auto& m : cut.measures) {
    EXPECT_EQ(m.positive_side.rat(), Rat(1));
    EXPECT_EQ(m.negative_side.rat(), Rat(1));
    EXPECT_EQ(m.on_boundary.rat(), Rat(0));
  }
}

TEST(HamSandwichPoints, TwoRowsAreSplitAcross) {
  // Red on y = 0 and blue on y = 1: the horizontal line y = 1/2 leaves both
  // red points on one side, so a valid cut has to cross between the columns.
  auto cut = hs_cut_points({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}}, {{Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
  EXPECT_TRUE(cut.perturbed);
  EXPECT_NE(cut.line.normal().vec().x, Rat(0));
  for (const auto& m : cut.measures) {
    EXPECT_EQ(m.positive_side.rat(), Rat(1));
    EXPECT_EQ(m.negative_side.rat(), Rat(1));
  }
}

TEST(HamSandwichPoints, RandomInstancesAgainstBruteForce) {
  testgen::Gen g(31);
  for (int iter = 0; iter < 200; ++iter) {
    int nr = static_cast<int>(g.integer(1, 12)), nb = static_cast<int>(g.integer(1, 12));
    auto all = g.distinct_points(nr + nb, 15);
    std::vector<Point2> red(all.begin(), all.begin() + nr), blue(all.begin() + nr, all.end());
    auto cut = hs_cut_points(red, blue);
    const Point2& n = cut.line.normal().vec();
    EXPECT_TRUE(halves(red, n, cut.line.offset())) << "iteration " << iter;
    EXPECT_TRUE(halves(blue, n, cut.line.offset())) << "iteration " << iter;
    EXPECT_TRUE(brute_force_cut_exists(red, blue)) << "iteration " << iter;
    if (cut.perturbed) {
      for (const auto& m : cut.measures) EXPECT_EQ(m.on_boundary.rat(), Rat(0));
    }
  }
}

TEST(HamSandwichPoints, EvenSetsInGeneralPositionGetPointFreeCuts) {
  testgen::Gen g(32);
  for (int iter = 0; iter < 50; ++iter) {
    auto all = g.distinct_points(12, 1000);
    std::vector<Point2> red(all.begin(), all.begin() + 6), blue(all.begin() + 6, all.end());
    auto cut = hs_cut_points(red, blue);
    // A point-free cut must exist for even sets with no three collinear;
    // with random coordinates in a large box that is the typical case.
    bool collinear = false;
    for (std::size_t a = 0; a < all.size() && !collinear; ++a)
      for (std::size_t b = a + 1; b < all.size() && !collinear; ++b)
        for (std::size_t c = b + 1; c < all.size() && !collinear; ++c) collinear = orient2d(all[a], all[b], all[c]) == 0;
    if (!collinear) {
      EXPECT_TRUE(cut.perturbed);
    }
  }
}

TEST(HamSandwichPoints, WeightedMasses) {
  auto red = Mass2D::points({{{Rat(0), Rat(0)}, Rat(3)}, {{Rat(4), Rat(0)}, Rat(1)}, {{Rat(5), Rat(1)}, Rat(2)}});
  auto blue = Mass2D::points({{{Rat(1), Rat(3)}, Rat(1)}, {{Rat(2), Rat(-3)}, Rat(1)}});
  auto cut = hs_cut_point_masses(red, blue);
  EXPECT_TRUE(is_bisected(red, cut.line));
  EXPECT_TRUE(is_bisected(blue, cut.line));
}

// ----------------------------------------------------------------------------
// Continuous masses.

TEST(HamSandwichMeasures, DisjointDisksGiveTheLineOfCenters) {
  // Lines bisecting a disk pass through its center, so the only cut is y = 0.
  auto a = Mass2D::disk({Rat(-2), Rat(0)}, Rat(1)), b = Mass2D::disk({Rat(2), Rat(0)}, Rat(1));
  auto cut = hs_cut_measures(a, b);
  auto n = to_double(cut.line.normal().vec());
  double len = std::hypot(n.x, n.y);
  EXPECT_NEAR(std::fabs(n.x) / len, 0.0, 1e-6);
  EXPECT_NEAR(cut.line.offset().get_d() / len, 0.0, 1e-6);
  for (const auto& m : cut.measures) EXPECT_LE(std::fabs(m.imbalance().approx()), 1e-9);
}

TEST(HamSandwichMeasures, ConcentricDisksGiveALineThroughTheCenter) {
  auto a = Mass2D::disk({Rat(1), Rat(1)}, Rat(1)), b = Mass2D::disk({Rat(1), Rat(1)}, Rat(3));
  auto cut = hs_cut_measures(a, b);
  EXPECT_TRUE(is_bisected(a, cut.line, 1e-9));
  EXPECT_TRUE(is_bisected(b, cut.line, 1e-9));
  auto n = to_double(cut.line.normal().vec());
  EXPECT_NEAR((n.x + n.y - cut.line.offset().get_d()) / std::hypot(n.x, n.y), 0.0, 1e-6);
}

TEST(HamSandwichMeasures, DiskAndSquareAgainstDirectionScan) {
  auto disk = Mass2D::disk({Rat(0), Rat(0)}, Rat(1));
  auto square = unit_square_at(Rat(5), Rat(5));
  auto cut = hs_cut_measures(disk, square);
  EXPECT_TRUE(is_bisected(disk, cut.line, 1e-9));
  EXPECT_TRUE(is_bisected(square, cut.line, 1e-9));

  // Oracle: every disk-bisecting line passes through its center, so scan
  // 4096 directions of lines through the origin for the square's balance.
  std::vector<Vec2<double>> sq{{5, 5}, {6, 5}, {6, 6}, {5, 6}};
  const int m = 4096;
  double best = 1e300, best_th = 0;
  for (int i = 0; i < m; ++i) {
    double th = std::numbers::pi * i / m;
    Vec2<double> n{std::cos(th), std::sin(th)};
    double v = std::fabs(2 * clipped_area(sq, n, 0) - 1);
    if (v < best) best = v, best_th = th;
  }
  auto n = to_double(cut.line.normal().vec());
  double th = std::atan2(n.y, n.x);
  if (th < 0) th += std::numbers::pi;
  if (th >= std::numbers::pi) th -= std::numbers::pi;
  EXPECT_NEAR(th, best_th, 2 * std::numbers::pi / m);
}

TEST(HamSandwichMeasures, FlippedCutStillBisects) {
  testgen::Gen g(33);
  for (int i = 0; i < 10; ++i) {
    auto a = Mass2D::disk(g.point(5), Rat(g.integer(1, 3)));
    auto b = unit_square_at(g.rat(8), g.rat(8));
    auto cut = hs_cut_measures(a, b);
    EXPECT_TRUE(is_bisected(a, cut.line.flip(), 1e-9));
    EXPECT_TRUE(is_bisected(b, cut.line.flip(), 1e-9));
  }
}

TEST(HamSandwichMeasures, BudgetExhaustion) {
  auto disk = Mass2D::disk({Rat(0), Rat(0)}, Rat(1));
  auto square = unit_square_at(Rat(5), Rat(2));
  EXPECT_THROW(hs_cut_measures(disk, square, {.tol = 1e-12, .max_iterations = 2}), ToleranceNotReached);
}

// ----------------------------------------------------------------------------
// Depth and centerpoints.

TEST(Depth, TriangleCentroid) {
  auto tri = Mass2D::unit_points({{Rat(0), Rat(0)}, {Rat(3), Rat(0)}, {Rat(0), Rat(3)}});
  auto r = depth({Rat(1), Rat(1)}, tri);
  EXPECT_EQ(r.depth, frac(1, 3));
  EXPECT_EQ(depth({Rat(100), Rat(100)}, tri).depth, Rat(0));
}

TEST(Depth, RandomSetsAgainstBruteForce) {
  testgen::Gen g(34);
  for (int iter = 0; iter < 100; ++iter) {
    auto mu = g.weighted(20, 8);
    Point2 p = iter % 2 ? g.point(8) : g.point(8, 3);
    auto r = depth(p, mu);
    Rat oracle = brute_force_depth_weight(p, mu.as_points().points);
    EXPECT_EQ(r.weight, oracle) << "iteration " << iter;
    EXPECT_EQ(r.depth, Rat(oracle / mu.total().rat()));
    EXPECT_LE(r.depth, frac(1, 2) + Rat(0));  // distinct points, at most one at p
    // The witness really is a closed half-plane of that weight.
    Rat w(0);
    for (const auto& q : mu.as_points().points)
      if (dot(r.witness_normal, Point2(q.p - p)) >= 0) w += q.w;
    EXPECT_EQ(w, r.weight);
  }
}

TEST(Depth, TranslationInvariant) {
  testgen::Gen g(35);
  for (int iter = 0; iter < 50; ++iter) {
    auto mu = g.weighted(12, 6);
    Point2 p = g.point(6, 2), shift = g.point(20, 7);
    std::vector<WeightedPoint> moved;
    for (const auto& q : mu.as_points().points) moved.push_back({q.p + shift, q.w});
    EXPECT_EQ(depth(p, mu).depth, depth(p + shift, Mass2D::points(moved)).depth);
  }
}

TEST(Centerpoint, Triangle) {
  auto tri = Mass2D::unit_points({{Rat(0), Rat(0)}, {Rat(3), Rat(0)}, {Rat(0), Rat(3)}});
  EXPECT_EQ(centerpoint(tri).depth, frac(1, 3));
}

TEST(Centerpoint, ConvexQuadrilateral) {
  auto quad = Mass2D::unit_points({{Rat(0), Rat(0)}, {Rat(4), Rat(0)}, {Rat(4), Rat(4)}, {Rat(0), Rat(4)}});
  EXPECT_GE(centerpoint(quad).depth, frac(1, 3));
}

TEST(Centerpoint, RandomSetsMeetTheBound) {
  testgen::Gen g(36);
  for (int iter = 0; iter < 100; ++iter) {
    int n = static_cast<int>(g.integer(1, 30));
    auto mu = g.weighted(n, 12, true);
    auto r = centerpoint(mu);
    Rat oracle = brute_force_depth_weight(r.point, mu.as_points().points);
    EXPECT_EQ(oracle, r.weight);
    EXPECT_GE(r.weight, Rat((n + 2) / 3)) << "n = " << n;
  }
}

// ----------------------------------------------------------------------------
// Center transversals in R^3.

TEST(CenterTransversal, PointIsA3DCenterpointTest) {
  std::vector<WeightedPoint3> tet{{{Rat(0), Rat(0), Rat(0)}, Rat(1)},
                                  {{Rat(4), Rat(0), Rat(0)}, Rat(1)},
                                  {{Rat(0), Rat(4), Rat(0)}, Rat(1)},
                                  {{Rat(0), Rat(0), Rat(4)}, Rat(1)}};
  auto in = check_center_transversal({{Rat(1), Rat(1), Rat(1)}, {}}, {tet});
  EXPECT_TRUE(in.ok);
  EXPECT_EQ(in.masses[0].threshold, frac(1, 4));
  EXPECT_EQ(in.masses[0].depth_fraction, frac(1, 4));
  auto out = check_center_transversal({{Rat(9), Rat(9), Rat(9)}, {}}, {tet});
  EXPECT_FALSE(out.ok);
  EXPECT_EQ(out.masses[0].depth_fraction, Rat(0));
}

TEST(CenterTransversal, LineThroughCenterOfSymmetricMass) {
  testgen::Gen g(37);
  for (int iter = 0; iter < 20; ++iter) {
    Point3 c = g.point3(5);
    std::vector<WeightedPoint3> sym;
    for (int i = 0; i < 6; ++i) {
      Point3 v = g.point3(6);
      Rat w(g.integer(1, 3));
      sym.push_back({c + v, w});
      sym.push_back({c - v, w});
    }
    Point3 dir = g.point3(3);
    if (dir == Point3{}) continue;
    auto r = check_center_transversal({c, {dir}}, {sym});
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.masses[0].threshold, frac(1, 3));
  }
}

TEST(CenterTransversal, RandomLinesAgainstHalfspaceEnumeration) {
  testgen::Gen g(38);
  for (int iter = 0; iter < 40; ++iter) {
    auto a = random_cloud(g, 10), b = random_cloud(g, 10);
    Point3 dir = g.point3(4);
    if (dir == Point3{}) continue;
    AffineFlat line{g.point3(4, 3), {dir}};
    auto r = check_center_transversal(line, {a, b});
    EXPECT_EQ(r.masses[0].depth_fraction, brute_force_line_depth(line, a)) << iter;
    EXPECT_EQ(r.masses[1].depth_fraction, brute_force_line_depth(line, b)) << iter;
    EXPECT_EQ(r.ok, r.masses[0].depth_fraction >= frac(1, 3) && r.masses[1].depth_fraction >= frac(1, 3));
  }
}

TEST(CenterTransversal, PlaneIsTheHalvingCondition) {
  testgen::Gen g(39);
  for (int iter = 0; iter < 50; ++iter) {
    auto a = random_cloud(g, 9);
    Point3 d1 = g.point3(3), d2 = g.point3(3);
    Point3 n = cross(d1, d2);
    if (n == Point3{}) continue;
    AffineFlat plane{g.point3(5), {d1, d2}};
    Rat pos(0), neg(0), total(0);
    for (const auto& q : a) {
      Rat v = dot(n, Point3(q.p - plane.point));
      if (v >= 0) pos += q.w;
      if (v <= 0) neg += q.w;
      total += q.w;
    }
    auto r = check_center_transversal(plane, {a});
    EXPECT_EQ(r.masses[0].threshold, frac(1, 2));
    EXPECT_EQ(r.ok, 2 * pos >= total && 2 * neg >= total);
  }
}

TEST(CenterTransversal, DimensionErrors) {
  std::vector<WeightedPoint3> m{{{Rat(1), Rat(2), Rat(3)}, Rat(1)}};
  AffineFlat line{{}, {{Rat(1), Rat(0), Rat(0)}}};
  EXPECT_THROW(check_center_transversal(line, {m}, 3, 3), DimensionMismatch);
  EXPECT_THROW(check_center_transversal(line, {m}, 4), DimensionMismatch);
  AffineFlat flat{{}, {{Rat(1), Rat(0), Rat(0)}, {Rat(2), Rat(0), Rat(0)}}};
  EXPECT_THROW(check_center_transversal(flat, {m}), DimensionMismatch);
}

// Two unit sets of four points: the threshold ceil(4/3) = 2 is half of
// each set, so every valid line meets both diagonals of both projected
// quadrilaterals. Here the lines meeting those four lines have an
// irrational parameter, so no rational certificate exists and the search
// has to give up.
TEST(CenterTransversal, FourPointSetsCanNeedIrrationalLines) {
  auto p = [](long x, long y, long z) { return Point3{Rat(x), Rat(y), Rat(z)}; };
  std::vector<WeightedPoint3> a{{p(-8, -1, 8), Rat(1)}, {p(2, -1, -10), Rat(1)}, {p(10, 8, -8), Rat(1)}, {p(-3, -5, -2), Rat(1)}};
  std::vector<WeightedPoint3> b{{p(-8, 7, 4), Rat(1)}, {p(-4, -3, -7), Rat(1)}, {p(-5, 7, -2), Rat(1)}, {p(-6, 10, -1), Rat(1)}};

  // Lines through a[0] + s (a[1] - a[0]) meeting a[2]a[3] and b[0]b[2];
  // f(s) = 0 when such a line also meets b[1]b[3].
  auto line_at = [&](const Rat& s) {
    Point3 x = a[0].p + s * Point3(a[1].p - a[0].p);
    Point3 n2 = cross(Point3(a[3].p - a[2].p), Point3(a[2].p - x));
    Point3 n3 = cross(Point3(b[2].p - b[0].p), Point3(b[0].p - x));
    return std::pair{x, cross(n2, n3)};
  };
  auto f = [&](const Rat& s) {
    auto [x, w] = line_at(s);
    return Rat(dot(Point3(b[1].p - x), cross(w, Point3(b[3].p - b[1].p))));
  };
  Rat c = f(Rat(0)), qa = (f(Rat(2)) - 2 * f(Rat(1)) + c) / 2, qb = f(Rat(1)) - c - qa;
  ASSERT_EQ(f(Rat(3)), Rat(9 * qa + 3 * qb + c));  // f is quadratic
  ASSERT_EQ(f(Rat(-5)), Rat(25 * qa - 5 * qb + c));
  Rat disc = qb * qb - 4 * qa * c;
  ASSERT_GT(disc, 0);
  EXPECT_FALSE(mpz_perfect_square_p(disc.get_num_mpz_t()) && mpz_perfect_square_p(disc.get_den_mpz_t()));

  // One of the two roots gives a valid line, checked in doubles with slack.
  auto v = [](const Point3& q) { return std::array<double, 3>{q.x.get_d(), q.y.get_d(), q.z.get_d()}; };
  std::array<double, 3> X, W;
  auto min_closed = [&](const std::vector<WeightedPoint3>& pts) {
    int best = 4;
    for (int i = 0; i < 3600; ++i) {
      // Unit normals orthogonal to W, swept around the circle.
      std::array<double, 3> e{1, 0, 0};
      std::array<double, 3> u{W[1] * e[2] - W[2] * e[1], W[2] * e[0] - W[0] * e[2], W[0] * e[1] - W[1] * e[0]};
      std::array<double, 3> t{W[1] * u[2] - W[2] * u[1], W[2] * u[0] - W[0] * u[2], W[0] * u[1] - W[1] * u[0]};
      double nu = std::hypot(u[0], u[1], u[2]), nt = std::hypot(t[0], t[1], t[2]), th = 2 * M_PI * i / 3600;
      int count = 0;
      for (const auto& q : pts) {
        auto Q = v(q.p);
        double du = 0, dt = 0;
        for (int k = 0; k < 3; ++k) {
          du += u[k] / nu * (Q[k] - X[k]);
          dt += t[k] / nt * (Q[k] - X[k]);
        }
        count += std::cos(th) * du + std::sin(th) * dt >= -1e-6;
      }
      best = std::min(best, count);
    }
    return best;
  };
  int valid_roots = 0;
  for (int sign : {-1, 1}) {
    double sd = (-qb.get_d() + sign * std::sqrt(disc.get_d())) / (2 * qa.get_d());
    auto [x0, w0] = line_at(exact_rat(sd));
    X = v(x0);
    W = v(w0);
    valid_roots += min_closed(a) >= 2 && min_closed(b) >= 2;
  }
  EXPECT_EQ(valid_roots, 1);
  EXPECT_THROW(search_center_transversal_line({a, b}, {.initial_grid = 4, .refinements = 1}), SearchExhausted);
}

TEST(CenterTransversal, GridSearchFindsCommonLines) {
  testgen::Gen g(40);
  for (int iter = 0; iter < 10; ++iter) {
    auto a = random_cloud(g, static_cast<int>(g.integer(3, 12)));
    auto b = random_cloud(g, static_cast<int>(g.integer(3, 12)));
    auto r = search_center_transversal_line({a, b});
    EXPECT_TRUE(r.check.ok);
    EXPECT_GE(brute_force_line_depth(r.line, a), frac(1, 3));
    EXPECT_GE(brute_force_line_depth(r.line, b), frac(1, 3));
  }
  EXPECT_THROW(search_center_transversal_line({random_cloud(g, 3)}), DimensionMismatch);
}
