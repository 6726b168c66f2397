#pragma once
// Solving instances into certificates and re-checking certificates.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "mpart/errors.hpp"
#include "mpart/hs.hpp"
#include "mpart/io.hpp"
#include "mpart/mass.hpp"
#include "mpart/parity.hpp"
#include "mpart/subspace.hpp"

namespace mpart {

struct SolveConfig {
  int grid = 720;
  int refine = 30;
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

namespace io {

inline std::string format_tol(double tol) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", tol);
  return buf;
}

inline Json config(const SolveConfig& c) {
  return Json{{"grid", c.grid}, {"refine", c.refine}, {"tol", format_tol(c.tol)}, {"seed", c.seed}};
}

inline SolveConfig config(const Json& j) {
  SolveConfig c;
  auto integer = [&](const char* key) -> const Json& {
    const Json& v = field(j, key, "config");
    if (!v.is_number_integer()) bad(std::string("config.") + key, "expected an integer");
    return v;
  };
  c.grid = integer("grid").get<int>();
  c.refine = integer("refine").get<int>();
  c.seed = integer("seed").get<std::uint64_t>();
  const Json& t = field(j, "tol", "config");
  if (!t.is_string()) bad("config.tol", "expected a decimal string");
  try {
    c.tol = std::stod(t.get<std::string>());
  } catch (const std::exception&) {
    bad("config.tol", "not a number");
  }
  return c;
}

inline Json measure(const HalfplaneMeasureResult& m) {
  return Json{{"positive", m.positive_side.str()}, {"negative", m.negative_side.str()}, {"boundary", m.on_boundary.str()}};
}

inline Json optional_index(const std::optional<std::size_t>& i) { return i ? Json(*i) : Json(nullptr); }

}  // namespace io

namespace detail {

inline SweepConfig sweep_config(const SolveConfig& c) {
  SweepConfig s;
  s.grid_size = c.grid;
  s.max_refinements = c.refine;
  s.seed = c.seed;
  s.validate();
  return s;
}

inline TransversalSearchOptions transversal_options(const SolveConfig& c) {
  return {std::max(2, c.grid / 90), std::clamp(c.refine, 0, 4)};
}

inline OriginConfig origin_config(const SolveConfig& c) {
  OriginConfig o;
  o.tol = c.tol;
  o.phase = static_cast<int>(c.seed % 1000);
  return o;
}

/// Bisection test used by every certificate: exact for point masses,
/// within tol for continuous ones.
inline bool bisected(const Mass2D& mu, const OrientedLine2& l, double tol) {
  return mu.is_points() ? is_bisected(mu, l) : is_bisected(mu, l, tol);
}

inline std::vector<MassAssignment2D> plane_assignments(const Instance& inst) {
  std::vector<MassAssignment2D> out;
  for (const auto& a : inst.assignments) out.push_back(build_plane_assignment(a));
  return out;
}

inline std::vector<ProductAssignment> product_assignments(const Instance& inst) {
  std::vector<ProductAssignment> out;
  for (const auto& a : inst.assignments) out.push_back(build_product_assignment(a));
  return out;
}

/// Measures and bisection flags of a list of masses against one line.
inline Json bisection_block(const std::vector<Mass2D>& ms, const OrientedLine2& l, double tol) {
  Json measures = Json::array(), flags = Json::array();
  bool ok = true;
  for (const auto& m : ms) {
    measures.push_back(io::measure(halfplane_measure(m, l)));
    bool b = bisected(m, l, tol);
    flags.push_back(b);
    ok = ok && b;
  }
  return Json{{"measures", measures}, {"bisected", flags}, {"ok", ok}};
}

inline Json verdicts_json(const std::vector<MassVerdict>& vs) {
  Json out = Json::array();
  for (const auto& v : vs)
    out.push_back(Json{{"verdict", verdict_name(v.verdict)},
                       {"witness", io::optional_index(v.witness)},
                       {"imbalance", v.imbalance.str()},
                       {"residual", v.residual.str()}});
  return out;
}

inline Json verdicts_json(const std::vector<Verdict1D>& vs) {
  Json out = Json::array();
  for (const auto& v : vs)
    out.push_back(Json{{"verdict", verdict_name(v.verdict)},
                       {"witness", io::optional_index(v.witness)},
                       {"imbalance", format_rat(v.imbalance)}});
  return out;
}

template <class V>
bool none_failed(const std::vector<V>& vs) {
  return std::none_of(vs.begin(), vs.end(), [](const V& v) { return v.verdict == Verdict::Failed; });
}

inline std::vector<Cut1D> cuts1d(const Json& j) {
  std::vector<Cut1D> out;
  const Json& cs = io::array_field(j, "cuts", "solution");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::string where = "solution.cuts[" + std::to_string(i) + "]";
    Cut1D c;
    c.at = io::rat(io::field(cs[i], "at", where), where + ".at");
    const Json& o = io::field(cs[i], "orientation", where);
    if (!o.is_number_integer() || (o.get<int>() != 1 && o.get<int>() != -1)) io::bad(where + ".orientation", "expected 1 or -1");
    c.orientation = o.get<int>();
    out.push_back(c);
  }
  return out;
}

inline std::vector<OrientedLine2> lines2(const Json& j, const char* key) {
  std::vector<OrientedLine2> out;
  const Json& ls = io::array_field(j, key, "solution");
  for (std::size_t i = 0; i < ls.size(); ++i)
    out.push_back(io::line2(ls[i], std::string("solution.") + key + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

/// Recomputes the verification block of a solution from scratch.
inline Json verification_for(const Instance& inst, const Json& sol, const SolveConfig& cfg) {
  using namespace detail;
  const std::string& kind = inst.kind;
  if (kind == "lines3") {
    Lines3Certificate cert;
    cert.frame = VerticalPlaneFrame::at(io::rat(io::field(sol, "t", "solution"), "solution.t"));
    cert.cut = io::line2(io::field(sol, "cut", "solution"), "solution.cut");
    cert.line3d = io::line3(io::field(sol, "line3d", "solution"), "solution.line3d");
    const Json& bc = io::array_field(sol, "below_counts", "solution");
    if (bc.size() != 3) io::bad("solution.below_counts", "expected three counts");
    for (std::size_t s = 0; s < 3; ++s) {
      if (!bc[s].is_number_integer()) io::bad("solution.below_counts", "expected integers");
      cert.below_counts[s] = bc[s].get<long>();
    }
    // The recount uses the 3D line obtained from the cut itself, so an edited
    // cut shows up as changed counts; the stored line must agree with it.
    bool embedded = false;
    if (sign_of(cert.cut.normal().y()) > 0) {
      Line3 e = detail::embed_cut(cert.frame, cert.cut);
      embedded = e.base == cert.line3d.base && e.dir.vec() == cert.line3d.dir.vec();
      cert.line3d = e;
    }
    auto v = verify_lines3(inst.lines3, cert);
    auto gp = check_general_position(inst.lines3);
    Json viol = Json::array();
    for (const auto& g : gp.violations) viol.push_back(g.message);
    return Json{{"below", v.below},
                {"above", v.above},
                {"touching", v.touching},
                {"in_plane", v.in_plane},
                {"line_matches_cut", embedded},
                {"general_position", Json{{"violations", viol}, {"clause_iv", gp.clause_iv}}},
                {"ok", v.ok && embedded && gp.ok()}};
  }
  if (kind == "hs2d") {
    OrientedLine2 l = io::line2(io::field(sol, "cut", "solution"), "solution.cut");
    return bisection_block(inst.masses, l, cfg.tol);
  }
  if (kind == "centerpoint") {
    Point2 p = io::point2(io::field(sol, "point", "solution"), "solution.point");
    auto r = depth(p, inst.masses.at(0));
    Rat third = frac(1, 3);
    return Json{{"depth", format_rat(r.depth)},
                {"weight", format_rat(r.weight)},
                {"threshold", format_rat(third)},
                {"witness_normal", io::point(r.witness_normal)},
                {"ok", r.depth >= third}};
  }
  if (kind == "transversal") {
    AffineFlat g;
    g.point = io::point3(io::field(sol, "point", "solution"), "solution.point");
    const Json& ds = io::array_field(sol, "dirs", "solution");
    for (std::size_t i = 0; i < ds.size(); ++i) g.dirs.push_back(io::point3(ds[i], "solution.dirs[" + std::to_string(i) + "]"));
    auto chk = check_center_transversal(g, inst.masses3, 3);
    Json ms = Json::array();
    for (const auto& m : chk.masses)
      ms.push_back(Json{{"depth", format_rat(m.depth_fraction)},
                        {"threshold", format_rat(m.threshold)},
                        {"witness_normal", io::point(m.witness_normal)},
                        {"ok", m.ok}});
    return Json{{"masses", ms}, {"ok", chk.ok}};
  }
  if (kind == "parity" && inst.mode == "origin") {
    OrientedArrangement arr(lines2(sol, "lines"));
    auto vs = mixed_verdicts(inst.masses, arr, cfg.tol);
    return Json{{"verdicts", verdicts_json(vs)}, {"ok", none_failed(vs)}};
  }
  if (kind == "parity") {
    auto vs = almost_bisection_verdicts_1d(inst.masses1d, cuts1d(sol), cfg.tol);
    return Json{{"verdicts", verdicts_json(vs)}, {"ok", none_failed(vs)}};
  }
  if (kind == "product") {
    auto as = product_assignments(inst);
    std::vector<Point2> normals;
    const Json& ns = io::array_field(sol, "normals", "solution");
    for (std::size_t i = 0; i < ns.size(); ++i) normals.push_back(io::point2(ns[i], "solution.normals[" + std::to_string(i) + "]"));
    if (normals.size() != as.size()) io::bad("solution.normals", "one normal per assignment expected");
    Json measures = Json::array(), flags = Json::array();
    bool ok = true;
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (normals[i].x == 0 && normals[i].y == 0) io::bad("solution.normals", "zero normal");
      Mass2D mu = as[i](normals);
      OrientedLine2 l{Direction2(normals[i]), Rat(0)};
      measures.push_back(io::measure(halfplane_measure(mu, l)));
      bool b = bisected(mu, l, cfg.tol);
      flags.push_back(b);
      ok = ok && b;
    }
    return Json{{"measures", measures}, {"bisected", flags}, {"ok", ok}};
  }
  if (kind == "horizontal") {
    auto frame = VerticalPlaneFrame::at(io::rat(io::field(sol, "t", "solution"), "solution.t"));
    OrientedLine2 l = io::line2(io::field(sol, "cut", "solution"), "solution.cut");
    std::vector<Mass2D> ms;
    for (const auto& a : plane_assignments(inst)) ms.push_back(a(frame.frame()));
    return bisection_block(ms, l, cfg.tol);
  }
  throw UnsupportedKind("no verifier for kind '" + kind + "'");
}

/// Runs the solver for the instance's kind and returns the solution block.
inline Json solve_solution(const Instance& inst, const SolveConfig& cfg) {
  using namespace detail;
  const std::string& kind = inst.kind;
  if (kind == "lines3") {
    auto c = solve_lines3(inst.lines3, sweep_config(cfg));
    return Json{{"t", io::rat(c.frame.t())},
                {"cut", io::line(c.cut)},
                {"line3d", io::line(c.line3d)},
                {"below_counts", c.below_counts},
                {"stability_radius", io::rat(c.stability_radius)},
                {"grid_level", c.grid_level}};
  }
  if (kind == "hs2d") {
    const Mass2D &a = inst.masses.at(0), &b = inst.masses.at(1);
    std::optional<HSCut2D> c;
    if (a.is_points() && b.is_points()) c = hs_cut_point_masses(a, b);
    else if (!a.is_points() && !b.is_points()) c = hs_cut_measures(a, b, {.tol = cfg.tol});
    else throw InvalidInput("hs2d needs two point masses or two continuous masses");
    return Json{{"cut", io::line(c->line)}, {"perturbed", c->perturbed}};
  }
  if (kind == "centerpoint") {
    auto r = centerpoint(inst.masses.at(0));
    return Json{{"point", io::point(r.point)}};
  }
  if (kind == "transversal") {
    if (inst.masses3.size() != 2) throw DimensionMismatch("transversal search needs exactly two masses");
    auto r = search_center_transversal_line(inst.masses3, transversal_options(cfg));
    Json dirs = Json::array();
    for (const auto& d : r.line.dirs) dirs.push_back(io::point(d));
    return Json{{"point", io::point(r.line.point)}, {"dirs", dirs}};
  }
  if (kind == "parity" && inst.mode == "origin") {
    auto s = solve_almost_bisect_origin(inst.masses, 2, origin_config(cfg));
    Json ls = Json::array();
    for (const auto& l : s.lines) ls.push_back(io::line(l));
    return Json{{"lines", ls}};
  }
  if (kind == "parity") {
    auto s = lift_and_solve(inst.masses1d, 1, origin_config(cfg));
    Json cs = Json::array(), ls = Json::array();
    for (const auto& c : s.cuts) cs.push_back(Json{{"at", io::rat(c.at)}, {"orientation", c.orientation}});
    for (const auto& l : s.lifted) ls.push_back(io::line(l));
    return Json{{"cuts", cs}, {"lifted", ls}};
  }
  if (kind == "product") {
    ProductConfig pc;
    pc.tol = cfg.tol;
    auto c = solve_product_bisection(product_assignments(inst), 2, pc);
    Json ns = Json::array();
    for (const auto& n : c.normals) ns.push_back(io::point(n));
    return Json{{"normals", ns}};
  }
  if (kind == "horizontal") {
    auto c = solve_horizontal_hs(plane_assignments(inst), sweep_config(cfg), 3, 2, cfg.tol);
    return Json{{"t", io::rat(c.frame.t())}, {"cut", io::line(c.cut)}};
  }
  throw UnsupportedKind("no solver for kind '" + kind + "'");
}

inline Json solve_certificate(const Instance& inst, const SolveConfig& cfg) {
  Json sol = solve_solution(inst, cfg);
  Json ver = verification_for(inst, sol, cfg);
  return Json{{"kind", inst.kind},
              {"instance", instance_json(inst)},
              {"config", io::config(cfg)},
              {"solution", sol},
              {"verification", ver}};
}

struct VerifyOutcome {
  bool ok = false;
  std::vector<std::string> diffs;  ///< "path: stored X, recomputed Y"
};

/// Re-derives the verification block and compares it with the stored one.
inline VerifyOutcome verify_certificate(const Json& cert) {
  Instance inst = parse_instance(io::field(cert, "instance", "certificate"));
  const Json& kind = io::field(cert, "kind", "certificate");
  if (!kind.is_string() || kind.get<std::string>() != inst.kind) io::bad("certificate.kind", "does not match the instance");
  SolveConfig cfg = io::config(io::field(cert, "config", "certificate"));
  const Json& stored = io::field(cert, "verification", "certificate");
  Json fresh;
  VerifyOutcome out;
  try {
    fresh = verification_for(inst, io::field(cert, "solution", "certificate"), cfg);
  } catch (const InvalidInput& e) {
    out.diffs.push_back(std::string("solution: ") + e.what());
    return out;
  }
  for (const auto& op : Json::diff(stored, fresh)) {
    std::string path = op["path"].get<std::string>();
    std::string was = "absent";
    if (op["op"] != "add") was = stored.at(Json::json_pointer(path)).dump();
    std::string now = op.contains("value") ? op["value"].dump() : std::string("absent");
    out.diffs.push_back("verification" + path + ": stored " + was + ", recomputed " + now);
  }
  bool passes = fresh.contains("ok") && fresh["ok"] == true;
  if (!passes && out.diffs.empty()) out.diffs.push_back("verification/ok: recomputed check fails");
  out.ok = out.diffs.empty() && passes;
  return out;
}

}  // namespace mpart
