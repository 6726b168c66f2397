// Acceptance run: one line per criterion, exit status 1 if any fails.
// Usage: acceptance <path to mpart binary>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mpart/cli.hpp"
#include "mpart/generate.hpp"
#include "mpart/hs.hpp"
#include "mpart/parity.hpp"
#include "mpart/subspace.hpp"
#include "support.hpp"

using namespace mpart;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;
  int failures = 0;
  double worst = 0;  ///< slowest instance, seconds

  void fail(const std::string& what) {
    if (failures++ == 0) detail = what;
    ok = false;
  }
  void timed(double s) { worst = std::max(worst, s); }
};

// ---------------------------------------------------------------------------
// Oracles, written against the definitions rather than the solvers.

// Which of two non-parallel lines is lower over the crossing of their
// xy-shadows, from an explicit 2x2 inverse.
int below_oracle(const Line3& l, const Line3& r) {
  Rat a = l.dir.x(), b = Rat(-r.dir.x()), c = l.dir.y(), d = Rat(-r.dir.y());
  Rat det = a * d - b * c;
  Rat ex = r.base.x - l.base.x, ey = r.base.y - l.base.y;
  Rat s = (d * ex - b * ey) / det, u = (a * ey - c * ex) / det;
  Rat zl = l.base.z + s * l.dir.z(), zr = r.base.z + u * r.dir.z();
  return zl < zr ? 1 : zl > zr ? -1 : 0;
}

std::array<long, 3> recount_below(const Lines3Instance& inst, const Line3& l) {
  std::array<long, 3> below{};
  auto sets = inst.sets();
  for (int s = 0; s < 3; ++s)
    for (const auto& r : *sets[s]) below[s] += below_oracle(l, r) > 0;
  return below;
}

std::array<long, 3> recount_above(const Lines3Instance& inst, const Line3& l) {
  std::array<long, 3> above{};
  auto sets = inst.sets();
  for (int s = 0; s < 3; ++s)
    for (const auto& r : *sets[s]) above[s] += below_oracle(l, r) < 0;
  return above;
}

bool halves(const std::vector<Point2>& pts, const Point2& n, const Rat& c) {
  long pos = 0, neg = 0;
  for (const auto& p : pts) {
    int s = sgn(Rat(n.x * p.x + n.y * p.y - c));
    pos += s > 0;
    neg += s < 0;
  }
  return 2 * pos <= static_cast<long>(pts.size()) && 2 * neg <= static_cast<long>(pts.size());
}

// Every line through two of the points, rotated and shifted by a tiny
// rational either way.
bool brute_force_cut_exists(const std::vector<Point2>& red, const std::vector<Point2>& blue) {
  std::vector<Point2> all = red;
  all.insert(all.end(), blue.begin(), blue.end());
  const Rat eps = frac(1, 1000000007);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
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

// Smallest weight in a closed half-plane with p on its boundary: boundary
// lines through p and one other point, turned slightly either way.
Rat brute_force_depth_weight(const Point2& p, const std::vector<WeightedPoint>& pts) {
  const Rat eps = frac(1, 1000000007);
  Rat best(0);
  for (const auto& q : pts) best += q.w;
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
      for (int o : {-1, 1}) best = std::min(best, closed({Rat(o * (n.x + rot * eps * d.x)), Rat(o * (n.y + rot * eps * d.y))}));
  }
  if (!any) best = closed({Rat(1), Rat(0)});
  return best;
}

// Same idea for a line g in R^3: planes through g and one point, turned
// slightly about g either way, both orientations.
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

// Parity sum of a point mass, each point's sign counted from scratch.
Rat per_point_parity(const Mass2D& mu, const std::vector<OrientedLine2>& lines) {
  Rat s(0);
  for (const auto& wp : mu.as_points().points) {
    int pos = 0;
    bool on = false;
    for (const auto& l : lines) {
      int v = sgn(Rat(l.normal().x() * wp.p.x + l.normal().y() * wp.p.y - l.offset()));
      on = on || v == 0;
      pos += v > 0;
    }
    if (!on) s += (pos % 2 ? -1 : 1) * wp.w;
  }
  return s;
}

std::size_t sign_changes(const PLFunction& f) {
  std::size_t n = 0;
  int last = sgn(f.left_tail);
  for (const auto& y : f.ys) {
    int s = sgn(y);
    if (s == 0) continue;
    if (last != 0 && s != last) ++n;
    last = s;
  }
  if (sgn(f.right_tail) != 0 && last != 0 && sgn(f.right_tail) != last) ++n;
  return n;
}

Instance generated(const std::string& kind, std::uint64_t seed, int size, int n = 2) {
  GenOptions o;
  o.kind = kind;
  o.seed = seed;
  o.size = size;
  o.n = n;
  return generate_instance(o);
}

// ---------------------------------------------------------------------------

Outcome lines3_halving() {
  Outcome r;
  for (int seed = 1; seed <= 25; ++seed) {
    int size = 2 + 2 * ((seed - 1) % 3);
    Lines3Instance inst = generated("lines3", seed, size).lines3;
    auto t0 = Clock::now();
    if (!check_general_position(inst).ok()) {
      r.fail("seed " + std::to_string(seed) + " violates general position");
      continue;
    }
    try {
      auto cert = solve_lines3(inst);
      r.timed(seconds_since(t0));
      long h = size / 2;
      std::array<long, 3> want{h, h, h};
      if (recount_below(inst, cert.line3d) != want || recount_above(inst, cert.line3d) != want ||
          cert.below_counts != want)
        r.fail("seed " + std::to_string(seed) + " recount differs from |S|/2");
    } catch (const Error& e) {
      r.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  if (r.worst >= 10) r.fail("slowest instance took " + std::to_string(r.worst) + " s");
  return r;
}

Outcome planar_ham_sandwich() {
  Outcome r;
  testgen::Gen g(2002);
  for (int iter = 0; iter < 200; ++iter) {
    int nr = static_cast<int>(g.integer(1, 12)), nb = static_cast<int>(g.integer(1, 12));
    auto all = g.distinct_points(nr + nb, 15);
    std::vector<Point2> red(all.begin(), all.begin() + nr), blue(all.begin() + nr, all.end());
    auto t0 = Clock::now();
    auto cut = hs_cut_points(red, blue);
    r.timed(seconds_since(t0));
    const Point2& n = cut.line.normal().vec();
    if (!halves(red, n, cut.line.offset()) || !halves(blue, n, cut.line.offset()))
      r.fail("instance " + std::to_string(iter) + ": returned cut does not halve both sets");
    if (!brute_force_cut_exists(red, blue)) r.fail("instance " + std::to_string(iter) + ": oracle finds no cut");
  }
  if (r.worst >= 1) r.fail("slowest instance took " + std::to_string(r.worst) + " s");
  return r;
}

Outcome centerpoint_bound() {
  Outcome r;
  testgen::Gen g(3003);
  for (int iter = 0; iter < 100; ++iter) {
    int n = static_cast<int>(g.integer(1, 30));
    auto mu = g.weighted(n, 12, true);
    auto t0 = Clock::now();
    auto c = centerpoint(mu);
    r.timed(seconds_since(t0));
    Rat depth = brute_force_depth_weight(c.point, mu.as_points().points);
    // depth/n >= ceil(n/3)/n, compared as integer weights.
    if (depth != c.weight) r.fail("instance " + std::to_string(iter) + ": reported depth differs from oracle");
    if (depth < Rat((n + 2) / 3)) r.fail("instance " + std::to_string(iter) + ": depth below ceil(n/3)");
  }
  if (r.worst >= 1) r.fail("slowest instance took " + std::to_string(r.worst) + " s");
  return r;
}

Outcome center_transversal() {
  Outcome r;
  // Sizes 3 and 5..13. With 4 points the threshold ceil(4/3) is half the
  // set, valid lines can be forced onto four fixed lines, and then they are
  // irrational (see CenterTransversal.FourPointSetsCanNeedIrrationalLines).
  const int sizes[] = {3, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  for (int seed = 1; seed <= 20; ++seed) {
    Instance inst = generated("transversal", seed, sizes[(seed - 1) % 10]);
    auto t0 = Clock::now();
    try {
      auto res = search_center_transversal_line(inst.masses3);
      r.timed(seconds_since(t0));
      bool deep = true;
      for (const auto& m : inst.masses3) deep = deep && brute_force_line_depth(res.line, m) >= frac(1, 3);
      if (!res.check.ok || !deep) r.fail("seed " + std::to_string(seed) + ": line fails the 1/3 check");
    } catch (const Error& e) {
      r.timed(seconds_since(t0));
      r.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  if (r.worst >= 30) r.fail("slowest instance took " + std::to_string(r.worst) + " s");
  return r;
}

Outcome parity_antisymmetry() {
  Outcome r;
  testgen::Gen g(5005);
  auto t0 = Clock::now();
  for (int iter = 0; iter < 100; ++iter) {
    Mass2D mu = [&] {
      if (iter % 2) return g.weighted(static_cast<int>(g.integer(1, 12)), 6);
      Rat x(g.integer(-6, 3)), y(g.integer(-6, 3)), w(g.integer(1, 4)), h(g.integer(1, 4));
      return Mass2D::polygon({{x, y}, {Rat(x + w), y}, {Rat(x + w + 1), Rat(y + h)}, {x, Rat(y + h + 1)}});
    }();
    std::vector<OrientedLine2> ls;
    int n = static_cast<int>(g.integer(1, 4));
    while (static_cast<int>(ls.size()) < n) {
      OrientedLine2 l(Direction2(g.nonzero(4)), g.rat(6, 3));
      bool fresh = true;
      for (const auto& o : ls) fresh = fresh && !o.same_line(l);
      if (fresh) ls.push_back(l);
    }
    OrientedArrangement a(ls);
    Rat base = parity_imbalance(mu, a).rat();
    if (mu.is_points() && base != per_point_parity(mu, ls))
      r.fail("pair " + std::to_string(iter) + ": imbalance differs from per-point oracle");
    for (std::size_t i = 0; i < a.size(); ++i)
      if (parity_imbalance(mu, a.reorient(i)).rat() != -base)
        r.fail("pair " + std::to_string(iter) + ": reorienting line " + std::to_string(i) + " does not negate");
  }
  r.timed(seconds_since(t0));
  if (r.worst >= 1) r.fail("total time " + std::to_string(r.worst) + " s");
  return r;
}

Outcome origin_almost_bisection() {
  Outcome r;
  const double tol = 1e-9;
  for (int seed = 1; seed <= 20; ++seed) {
    GenOptions o;
    o.kind = "parity";
    o.seed = seed;
    o.n = 2;
    o.size = 2 + 2 * (seed % 4);
    Instance inst = generate_instance(o);
    auto t0 = Clock::now();
    try {
      auto sol = solve_almost_bisect_origin(inst.masses, 2, {.tol = tol, .phase = seed});
      r.timed(seconds_since(t0));
      std::string at = "seed " + std::to_string(seed);
      if (sol.lines.size() != 2) r.fail(at + ": expected two lines");
      for (const auto& l : sol.lines)
        if (l.offset() != 0) r.fail(at + ": line misses the origin");
      for (std::size_t i = 0; i < inst.masses.size(); ++i) {
        const auto& v = sol.verdicts.at(i);
        if (v.verdict == Verdict::Failed) {
          r.fail(at + ": mass " + std::to_string(i) + " Failed");
          continue;
        }
        std::vector<OrientedLine2> used = sol.lines;
        if (v.witness) used.erase(used.begin() + static_cast<long>(*v.witness));
        const Mass2D& mu = inst.masses[i];
        if (mu.is_points()) {
          if (per_point_parity(mu, used) != 0) r.fail(at + ": point mass residual is not exactly 0");
        } else if (std::fabs(parity_imbalance(mu, used).approx()) > tol) {
          r.fail(at + ": continuous residual above 1e-9");
        }
      }
    } catch (const Error& e) {
      r.timed(seconds_since(t0));
      r.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  if (r.worst >= 20) r.fail("slowest instance took " + std::to_string(r.worst) + " s");
  return r;
}

Outcome bump_fixture() {
  Outcome r;
  // 0 on (-inf,-1], 1+x on [-1,0], 1-x on [0,1], 0 on [1,inf).
  PLFunction fb{{Rat(-1), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(0)}, Rat(0), Rat(0)};
  auto rep = analyze_limit_antipodal(fb);
  if (rep.count != 2) r.fail("expected 2 components, got " + std::to_string(rep.count));
  if (rep.zero_at_origin) r.fail("zero_at_origin should be false");
  if (!rep.vanishing_limits) r.fail("vanishing_limits should be true");
  if (rep.count == 2 && (rep.components[0].lo || rep.components[0].hi != std::optional<Rat>(Rat(-1)) ||
                         rep.components[1].lo != std::optional<Rat>(Rat(1)) || rep.components[1].hi))
    r.fail("components should be (-inf,-1] and [1,inf)");
  return r;
}

Outcome odd_components() {
  Outcome r;
  testgen::Gen g(8008);
  auto t0 = Clock::now();
  for (int iter = 0; iter < 200; ++iter) {
    PLFunction f;
    int k = static_cast<int>(g.integer(2, 12));
    Rat x = g.rat(5, 2);
    for (int i = 0; i < k; ++i) {
      x += frac(g.integer(1, 8), 4);
      f.xs.push_back(x);
      Rat y(0);
      while (y == 0) y = g.rat(5, 3);
      f.ys.push_back(y);
    }
    f.ys.back() = -f.ys.front();
    f.left_tail = f.ys.front();
    f.right_tail = f.ys.back();
    auto rep = analyze_limit_antipodal(f);
    if (rep.count != sign_changes(f)) r.fail("function " + std::to_string(iter) + ": count differs from sign changes");
    if (rep.count % 2 != 1) r.fail("function " + std::to_string(iter) + ": even component count");
  }
  r.timed(seconds_since(t0));
  if (r.worst >= 1) r.fail("total time " + std::to_string(r.worst) + " s");
  return r;
}

Outcome horizontal_matches_lines3() {
  Outcome r;
  auto t0 = Clock::now();
  for (int seed = 1; seed <= 10; ++seed) {
    Lines3Instance inst = generated("lines3", seed, 2 + 2 * (seed % 3)).lines3;
    try {
      std::vector<MassAssignment2D> as;
      for (const auto* s : inst.sets()) as.push_back(as_mass_assignment(slice_lines_assignment(*s)));
      auto h = solve_horizontal_hs(as);
      auto l = solve_lines3(inst);
      Line3 hl = detail::embed_cut(h.frame, h.cut);
      if (recount_below(inst, hl) != l.below_counts || recount_above(inst, hl) != l.below_counts)
        r.fail("seed " + std::to_string(seed) + ": horizontal cut counts differ from the lines solver");
    } catch (const Error& e) {
      r.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  r.timed(seconds_since(t0));
  if (r.worst >= 20) r.fail("total time " + std::to_string(r.worst) + " s");
  return r;
}

Outcome deterministic_solves(const std::string& binary) {
  Outcome r;
  if (binary.empty() || !fs::exists(binary)) {
    r.fail("no mpart binary given");
    return r;
  }
  fs::path dir = fs::temp_directory_path() / ("mpart_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  struct Case {
    std::string kind, flags;
    int size, n;
  };
  const std::vector<Case> cases{{"lines3", "--seed 3", 4, 2},       {"hs2d", "--seed 1", 12, 2},
                                {"centerpoint", "", 20, 2},          {"transversal", "--grid 8", 6, 2},
                                {"parity", "--seed 2", 4, 2},        {"product", "--grid 64", 4, 2},
                                {"horizontal", "--grid 90 --seed 4", 4, 2}};
  for (const auto& c : cases) {
    Instance inst = generated(c.kind, 11, c.size, c.n);
    std::string in = (dir / (c.kind + ".json")).string();
    cli::write_output(in, cli::dump(instance_json(inst)), std::cout);
    std::string first;
    for (int rep = 0; rep < 5; ++rep) {
      std::string out = (dir / (c.kind + "_" + std::to_string(rep) + ".json")).string();
      std::string cmd = binary + " solve " + c.kind + " " + in + " " + c.flags + " --out " + out + " 2>/dev/null";
      int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        r.fail(c.kind + ": solve exited with " + std::to_string(WEXITSTATUS(status)));
        break;
      }
      std::string text = cli::read_file(out);
      if (rep == 0) first = text;
      else if (text != first) r.fail(c.kind + ": repetition " + std::to_string(rep) + " differs");
    }
  }
  fs::remove_all(dir);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  std::string binary = argc > 1 ? argv[1] : "";
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"lines3 halving cuts on 25 generated instances, exact recount", lines3_halving},
      {"planar ham sandwich on 200 point instances vs brute force", planar_ham_sandwich},
      {"centerpoint depth >= ceil(n/3) on 100 point sets", centerpoint_bound},
      {"common 1/3 center transversal line for 20 pairs in R^3", center_transversal},
      {"parity imbalance negates under reorientation, 100 pairs", parity_antisymmetry},
      {"two origin lines almost bisect 20 two-mass instances", origin_almost_bisection},
      {"bump function has two zero components and vanishing tails", bump_fixture},
      {"odd zero component count on 200 antipodal PL functions", odd_components},
      {"horizontal slice solver matches lines3 counts on 10 instances", horizontal_matches_lines3},
      {"solve output is byte-identical over 5 runs", [&] { return deterministic_solves(binary); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("uncaught: ") + e.what());
    }
    double s = seconds_since(t0);
    std::ostringstream line;
    line << (o.ok ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].name;
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.2f s", s);
    line << buf;
    if (o.worst > 0 && o.worst != s) {
      std::snprintf(buf, sizeof buf, ", slowest %.2f s", o.worst);
      line << buf;
    }
    line << ")";
    if (!o.ok) line << ": " << o.failures << " failure(s), first: " << o.detail;
    std::cout << line.str() << std::endl;
    failed += !o.ok;
  }
  std::cout << (failed ? std::to_string(failed) + " of 10 criteria failed" : std::string("all 10 criteria pass"))
            << std::endl;
  return failed ? 1 : 0;
}
