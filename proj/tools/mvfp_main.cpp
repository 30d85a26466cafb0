// Command-line front end. All semantics live behind the C API in libmvfp;
// this binary only shuffles text. Exit codes: 0 success / fixed point,
// 2 parse or validation failure, 3 iteration budget exhausted, 4 selection
// bound violated. Diagnostics go to stderr only.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mvfp/mvfp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitMaxIter = 3;
constexpr int kExitBoundViolation = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(kExitUsage);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

[[noreturn]] void die(mvfp_status) {
  std::cerr << "error: " << mvfp_last_error() << "\n";
  std::exit(kExitUsage);
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { mvfp_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct OwnedProblem {
  mvfp_problem* ptr = nullptr;
  ~OwnedProblem() { mvfp_problem_free(ptr); }
};

struct OwnedTrace {
  mvfp_trace* ptr = nullptr;
  ~OwnedTrace() { mvfp_trace_free(ptr); }
};

OwnedProblem load_problem(const std::string& path) {
  OwnedProblem p;
  std::string text = read_file(path);
  if (mvfp_status s = mvfp_problem_parse(text.c_str(), &p.ptr); s != MVFP_OK) die(s);
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* tol = std::getenv("MVFP_FLOAT_TOL")) {
    char* end = nullptr;
    double v = std::strtod(tol, &end);
    if (!end || *end != '\0' || !(v >= 0)) {
      std::cerr << "error: MVFP_FLOAT_TOL must be a nonnegative number\n";
      return kExitUsage;
    }
    if (mvfp_set_float_tolerance(v) != MVFP_OK) {
      std::cerr << "error: " << mvfp_last_error() << "\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Hausdorff metrics, contraction gauges and set-valued "
               "fixed-point iteration"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mvfp_version()));

  // ---- hausdorff --------------------------------------------------------
  auto* cmd_h = app.add_subcommand(
      "hausdorff", "Hausdorff distance between two sets from a problem file");
  std::string h_file, h_a, h_b;
  bool h_accel = false;
  cmd_h->add_option("file", h_file, "problem file (JSON)")->required();
  cmd_h->add_option("set_a", h_a, "comma-separated point ids or @Name")->required();
  cmd_h->add_option("set_b", h_b, "comma-separated point ids or @Name")->required();
  cmd_h->add_flag("--accelerated", h_accel, "use the early-break/kd-tree path");

  // ---- iterate -----------------------------------------------------------
  auto* cmd_it = app.add_subcommand(
      "iterate", "run the fixed-point iteration declared in a problem file");
  std::string it_file, it_x0, it_tol, it_trace_out;
  long it_max_iter = 0;
  bool it_verify = false;
  cmd_it->add_option("file", it_file, "problem file (JSON)")->required();
  cmd_it->add_option("--x0", it_x0, "start point id (overrides the file)");
  cmd_it->add_option("--tol", it_tol, "fixed-point tolerance (overrides the file)");
  cmd_it->add_option("--max-iter", it_max_iter, "iteration budget");
  cmd_it->add_option("--trace-out", it_trace_out, "write the orbit CSV here");
  cmd_it->add_flag("--verify", it_verify, "re-check the orbit conditions");

  // ---- verify-example ------------------------------------------------------
  auto* cmd_ve = app.add_subcommand(
      "verify-example", "verify the built-in exact instance at a given depth");
  long ve_depth = 30, ve_sweep = 0;
  std::string ve_r, ve_emit;
  bool ve_json = false;
  cmd_ve->add_option("--depth", ve_depth, "instance depth (default 30)");
  cmd_ve->add_option("--sweep-depth", ve_sweep,
                     "equality-sweep depth (default min(depth, 30))");
  cmd_ve->add_option("--nadler-r", ve_r,
                     "also locate the first index violating a constant gauge r");
  cmd_ve->add_flag("--json", ve_json, "emit the JSON report");
  cmd_ve->add_option("--emit-problem", ve_emit,
                     "also write the instance as a problem file");

  // ---- check-gauge -----------------------------------------------------------
  auto* cmd_cg = app.add_subcommand(
      "check-gauge", "class-S and right-limsup checks for a gauge");
  std::string cg_file, cg_gauge, cg_mode = "rational", cg_t0;
  std::vector<std::string> cg_probes, cg_eps, cg_deltas;
  long cg_tau_probes = 0;
  bool cg_json = false;
  cmd_cg->add_option("--file", cg_file, "problem file whose gauge to check");
  cmd_cg->add_option("--gauge", cg_gauge,
                     "inline gauge JSON, e.g. {\"kind\":\"constant\",\"value\":\"1/2\"}");
  cmd_cg->add_option("--mode", cg_mode, "rational|float (default rational)");
  cmd_cg->add_option("--probes", cg_probes, "probe values");
  cmd_cg->add_option("--tau-probes", cg_tau_probes,
                     "use tau_1..tau_N from the built-in instance as probes");
  cmd_cg->add_option("--eps-grid", cg_eps, "eps grid (default 2^-1..2^-10)");
  cmd_cg->add_option("--t0", cg_t0, "limsup base point (default 0)");
  cmd_cg->add_option("--deltas", cg_deltas, "window schedule (default 2^0..2^-20)");
  cmd_cg->add_flag("--json", cg_json, "emit the JSON report");

  // ---- nadler-constant ----------------------------------------------------------
  auto* cmd_nc = app.add_subcommand(
      "nadler-constant", "sup of H(Tx,Ty)/d(x,y) over point pairs");
  std::string nc_file, nc_pairs;
  cmd_nc->add_option("file", nc_file, "problem file (JSON)")->required();
  cmd_nc->add_option("--pairs", nc_pairs, "pairs \"a:b,c:d\" (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (cmd_h->parsed()) {
    OwnedProblem p = load_problem(h_file);
    OwnedString value;
    if (mvfp_status s = mvfp_hausdorff_between(p.ptr, h_a.c_str(), h_b.c_str(),
                                               h_accel ? 1 : 0, &value.ptr);
        s != MVFP_OK)
      die(s);
    std::cout << value.str() << "\n";
    return kExitOk;
  }

  if (cmd_it->parsed()) {
    OwnedProblem p = load_problem(it_file);
    OwnedTrace t;
    if (mvfp_status s = mvfp_iterate(p.ptr, it_x0.empty() ? nullptr : it_x0.c_str(),
                                     it_tol.empty() ? nullptr : it_tol.c_str(),
                                     it_max_iter, &t.ptr);
        s != MVFP_OK)
      die(s);
    OwnedString summary;
    if (mvfp_status s = mvfp_trace_summary_json(t.ptr, &summary.ptr); s != MVFP_OK)
      die(s);
    auto j = nlohmann::json::parse(summary.str());
    std::cout << j["outcome"].get<std::string>() << " at "
              << j.value("final_point", std::string("?")) << " after "
              << j["transitions"] << " steps";
    if (j.contains("certificate"))
      std::cout << " (certificate " << j["certificate"].get<std::string>() << ")";
    if (j.contains("violation_step"))
      std::cout << " (bound violated at step " << j["violation_step"] << ")";
    std::cout << "\n";

    if (!it_trace_out.empty()) {
      OwnedString csv;
      if (mvfp_status s = mvfp_trace_csv(t.ptr, &csv.ptr); s != MVFP_OK) die(s);
      std::ofstream out(it_trace_out, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << it_trace_out << "'\n";
        return kExitUsage;
      }
      out << csv.str();
    }
    if (it_verify) {
      OwnedString verify;
      if (mvfp_status s = mvfp_trace_verify_json(t.ptr, p.ptr, &verify.ptr);
          s != MVFP_OK)
        die(s);
      auto v = nlohmann::json::parse(verify.str());
      std::cout << "orbit conditions: " << (v["clean"].get<bool>() ? "clean" : "violated")
                << "\n";
    }

    mvfp_outcome outcome;
    mvfp_trace_outcome(t.ptr, &outcome);
    switch (outcome) {
      case MVFP_OUTCOME_FIXED_POINT: return kExitOk;
      case MVFP_OUTCOME_MAX_ITER_EXCEEDED: return kExitMaxIter;
      case MVFP_OUTCOME_BOUND_VIOLATION: return kExitBoundViolation;
    }
    return kExitOk;
  }

  if (cmd_ve->parsed()) {
    OwnedString report;
    if (mvfp_status s = mvfp_verify_example(ve_depth, ve_sweep,
                                            ve_r.empty() ? nullptr : ve_r.c_str(),
                                            ve_json ? 0 : 1, &report.ptr);
        s != MVFP_OK)
      die(s);
    std::cout << report.str();
    if (!ve_json) std::cout.flush();
    if (!ve_emit.empty()) {
      OwnedString problem;
      if (mvfp_status s = mvfp_example_problem(ve_depth, &problem.ptr); s != MVFP_OK)
        die(s);
      std::ofstream out(ve_emit, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << ve_emit << "'\n";
        return kExitUsage;
      }
      out << problem.str();
    }
    return kExitOk;
  }

  if (cmd_cg->parsed()) {
    std::string gauge_json = cg_gauge;
    if (!cg_file.empty()) {
      auto doc = nlohmann::json::parse(read_file(cg_file), nullptr, false);
      if (doc.is_discarded() || !doc.contains("gauge")) {
        std::cerr << "error: '" << cg_file << "' has no gauge section\n";
        return kExitUsage;
      }
      gauge_json = doc["gauge"].dump();
      if (doc.contains("mode") && cg_mode == "rational")
        cg_mode = doc["mode"].get<std::string>();
    }
    if (gauge_json.empty()) {
      std::cerr << "error: pass --gauge or --file\n";
      return kExitUsage;
    }
    nlohmann::json opts;
    opts["mode"] = cg_mode;
    if (!cg_probes.empty()) opts["probes"] = cg_probes;
    if (cg_tau_probes > 0) opts["tau_probes"] = cg_tau_probes;
    if (!cg_eps.empty()) opts["eps_grid"] = cg_eps;
    if (!cg_t0.empty()) opts["t0"] = cg_t0;
    if (!cg_deltas.empty()) opts["deltas"] = cg_deltas;

    OwnedString report;
    if (mvfp_status s = mvfp_check_gauge(gauge_json.c_str(), opts.dump().c_str(),
                                         cg_json ? 0 : 1, &report.ptr);
        s != MVFP_OK)
      die(s);
    std::cout << report.str();
    return kExitOk;
  }

  if (cmd_nc->parsed()) {
    OwnedProblem p = load_problem(nc_file);
    OwnedString result;
    if (mvfp_status s = mvfp_nadler_constant(
            p.ptr, nc_pairs.empty() ? nullptr : nc_pairs.c_str(), &result.ptr);
        s != MVFP_OK)
      die(s);
    auto j = nlohmann::json::parse(result.str());
    std::cout << j["sup_ratio"].get<std::string>() << " (witness "
              << j["witness"][0].get<std::string>() << ", "
              << j["witness"][1].get<std::string>() << "; "
              << j["pairs"] << " pairs)\n";
    return kExitOk;
  }

  return kExitUsage;
}
