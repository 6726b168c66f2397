#pragma once
// Random generators for property tests. Each test seeds its own stream so
// failures reproduce.

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "mpart/geom.hpp"
#include "mpart/mass.hpp"

namespace testgen {

using mpart::Point2;
using mpart::Point3;
using mpart::Rat;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : g_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
  bool coin() { return integer(0, 1) == 1; }
  Rat rat(long bound, long den = 1) {
    long q = integer(1, den);
    return mpart::frac(integer(-bound * q, bound * q), q);
  }
  Point2 point(long bound, long den = 1) { return {rat(bound, den), rat(bound, den)}; }
  Point3 point3(long bound, long den = 1) { return {rat(bound, den), rat(bound, den), rat(bound, den)}; }
  Point2 nonzero(long bound) {
    for (;;) {
      Point2 p = point(bound);
      if (p.x != 0 || p.y != 0) return p;
    }
  }
  std::vector<Point2> distinct_points(int n, long bound, long den = 1) {
    std::set<std::pair<Rat, Rat>> seen;
    std::vector<Point2> out;
    while (static_cast<int>(out.size()) < n) {
      Point2 p = point(bound, den);
      if (seen.insert({p.x, p.y}).second) out.push_back(p);
    }
    return out;
  }
  /// Weighted point mass with small positive integer weights.
  mpart::Mass2D weighted(int n, long bound, bool unit = false) {
    std::vector<mpart::WeightedPoint> pts;
    for (const auto& p : distinct_points(n, bound)) pts.push_back({p, unit ? Rat(1) : Rat(integer(1, 4))});
    return mpart::Mass2D::points(std::move(pts));
  }
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

}  // namespace testgen
