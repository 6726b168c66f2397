#pragma once
// The mpart command line: solve, verify, gen, plot.
//
// Exit codes: 0 success, 1 invalid input, 2 search budget exhausted,
// 3 certificate mismatch.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "mpart/certificate.hpp"
#include "mpart/errors.hpp"
#include "mpart/generate.hpp"
#include "mpart/io.hpp"
#include "mpart/svg.hpp"

namespace mpart::cli {

enum Exit : int { kOk = 0, kInvalid = 1, kExhausted = 2, kMismatch = 3 };

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": malformed JSON: " + e.what());
  }
}

/// Writes to a temporary sibling and renames it over the target, or prints
/// to stdout when no path is given.
inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidInput("cannot write '" + path + "'");
    f << text;
    f.flush();
    if (!f) throw InvalidInput("failed writing '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InvalidInput("cannot move output into '" + path + "'");
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Runs one command. Streams are parameters so tests can run it in-process.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact mass partition solvers and certificate checker", "mpart"};
  app.require_subcommand(1);

  SolveConfig cfg;
  std::string kind, input, output;
  auto add_config = [&](CLI::App* c) {
    c->add_option("--grid", cfg.grid, "plane / direction grid size")->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--refine", cfg.refine, "grid refinement rounds")->capture_default_str()->check(CLI::NonNegativeNumber);
    c->add_option("--tol", cfg.tol, "tolerance for continuous masses")->capture_default_str()->check(CLI::NonNegativeNumber);
    c->add_option("--seed", cfg.seed, "grid phase seed")->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "solve an instance and write a certificate");
  solve->add_option("kind", kind, "instance kind")->required();
  solve->add_option("instance", input, "instance JSON file")->required();
  add_config(solve);
  solve->add_option("--out", output, "certificate path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "recompute a certificate's verification block");
  verify->add_option("certificate", input, "certificate JSON file")->required();

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("kind", gen_opt.kind, "instance kind")->required();
  gen->add_option("--size", gen_opt.size, "points or lines per set")->capture_default_str();
  gen->add_option("--masses", gen_opt.masses, "parity: number of masses (default n)");
  gen->add_option("--n", gen_opt.n, "parity/product: number of lines")->capture_default_str();
  gen->add_option("--mode", gen_opt.mode, "parity: origin or lifted")->capture_default_str();
  gen->add_option("--seed", gen_opt.seed, "random seed")->capture_default_str();
  gen->add_option("--out", output, "instance path (stdout if omitted)");

  auto* plot = app.add_subcommand("plot", "draw an instance or certificate as SVG");
  plot->add_option("file", input, "instance or certificate JSON file")->required();
  plot->add_option("--out", output, "SVG path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }

  try {
    if (*solve) {
      Instance inst = parse_instance(read_json(input));
      if (inst.kind != kind) throw InvalidInput("instance kind '" + inst.kind + "' does not match requested '" + kind + "'");
      write_output(output, dump(solve_certificate(inst, cfg)), out);
      return kOk;
    }
    if (*verify) {
      auto r = verify_certificate(read_json(input));
      if (!r.ok) {
        err << "certificate does not verify:\n";
        for (const auto& d : r.diffs) err << "  " << d << "\n";
        return kMismatch;
      }
      out << "ok\n";
      return kOk;
    }
    if (*gen) {
      write_output(output, dump(instance_json(generate_instance(gen_opt))), out);
      return kOk;
    }
    write_output(output, plot_document(read_json(input)), out);
    return kOk;
  } catch (const SearchExhausted& e) {
    err << "search exhausted: " << e.what() << "\n";
    return kExhausted;
  } catch (const ToleranceNotReached& e) {
    err << "tolerance not reached: " << e.what() << "\n";
    return kExhausted;
  } catch (const LiftedLineParallel& e) {
    err << "search exhausted: " << e.what() << "\n";
    return kExhausted;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const Json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace mpart::cli
