#include "mvfp/mvfp.h"

#include <cstring>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mvfp/config.hpp"
#include "mvfp/corpus.hpp"
#include "mvfp/errors.hpp"
#include "mvfp/hausdorff.hpp"
#include "mvfp/problem.hpp"
#include "mvfp/solver.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

mvfp_status status_of(mvfp::ErrorCode code) {
  return static_cast<mvfp_status>(static_cast<int>(code));
}

template <class Fn>
mvfp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MVFP_OK;
  } catch (const mvfp::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MVFP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return MVFP_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char* what) {
  if (!cond) mvfp::fail(mvfp::ErrorCode::InvalidArgument, what);
}

mvfp::NumericMode parse_mode(const std::string& text) {
  if (text == "rational") return mvfp::NumericMode::Rational;
  if (text == "float") return mvfp::NumericMode::Float64;
  mvfp::fail(mvfp::ErrorCode::ParseError, "mode must be \"rational\" or \"float\"");
}

}  // namespace

struct mvfp_problem {
  mvfp::Problem problem;
};

struct mvfp_trace {
  mvfp::IterationTrace trace;
};

extern "C" {

const char* mvfp_version(void) { return "0.1.0"; }

const char* mvfp_last_error(void) { return g_last_error.c_str(); }

void mvfp_string_free(char* s) { delete[] s; }

mvfp_status mvfp_set_float_tolerance(double tol) {
  return guarded([&] { mvfp::Config::set_float_tolerance(tol); });
}

double mvfp_float_tolerance(void) { return mvfp::Config::float_tolerance(); }

mvfp_status mvfp_problem_parse(const char* json_text, mvfp_problem** out) {
  return guarded([&] {
    require(json_text && out, "null argument");
    auto p = std::make_unique<mvfp_problem>();
    p->problem = mvfp::parse_problem(json_text);
    *out = p.release();
  });
}

void mvfp_problem_free(mvfp_problem* p) { delete p; }

mvfp_status mvfp_problem_emit(const mvfp_problem* p, char** json_out) {
  return guarded([&] {
    require(p && json_out, "null argument");
    *json_out = dup_string(mvfp::emit_problem(p->problem));
  });
}

mvfp_status mvfp_hausdorff_between(const mvfp_problem* p, const char* set_a,
                                   const char* set_b, int accelerated,
                                   char** value_out) {
  return guarded([&] {
    require(p && set_a && set_b && value_out, "null argument");
    mvfp::FiniteSet a = mvfp::resolve_set_spec(p->problem, set_a);
    mvfp::FiniteSet b = mvfp::resolve_set_spec(p->problem, set_b);
    mvfp::Scalar value = accelerated
                             ? mvfp::hausdorff_accelerated(p->problem.metric, a, b)
                             : mvfp::hyperspace_distance(p->problem.metric, a, b);
    *value_out = dup_string(value.str());
  });
}

mvfp_status mvfp_iterate(const mvfp_problem* p, const char* x0_id,
                         const char* tol_text, long max_iter, mvfp_trace** out) {
  return guarded([&] {
    require(p && out, "null argument");
    const mvfp::Problem& prob = p->problem;
    require(prob.map.has_value(), "problem file declares no map");
    require(prob.gauge.has_value(), "problem file declares no gauge");

    std::string x0 = x0_id ? x0_id
                           : prob.solver.x0.value_or(std::string());
    require(!x0.empty(), "no start point: pass x0 or set solver.x0");
    const mvfp::Point& start = prob.point_by_id(x0);

    mvfp::Scalar tol = mvfp::Scalar::zero(prob.mode);
    if (tol_text)
      tol = mvfp::Scalar::parse(tol_text, prob.mode);
    else if (prob.solver.tol)
      tol = *prob.solver.tol;
    else if (prob.mode == mvfp::NumericMode::Float64)
      tol = mvfp::Scalar::real(1e-9);

    long iters = max_iter > 0 ? max_iter : prob.solver.max_iter.value_or(10000);
    auto t = std::make_unique<mvfp_trace>(mvfp_trace{
        mvfp::iterate(*prob.map, prob.metric, *prob.gauge, start, tol,
                      static_cast<std::size_t>(iters))});
    *out = t.release();
  });
}

void mvfp_trace_free(mvfp_trace* t) { delete t; }

mvfp_status mvfp_trace_outcome(const mvfp_trace* t, mvfp_outcome* out) {
  return guarded([&] {
    require(t && out, "null argument");
    switch (t->trace.outcome) {
      case mvfp::IterationTrace::Outcome::FixedPoint:
        *out = MVFP_OUTCOME_FIXED_POINT;
        break;
      case mvfp::IterationTrace::Outcome::MaxIterExceeded:
        *out = MVFP_OUTCOME_MAX_ITER_EXCEEDED;
        break;
      case mvfp::IterationTrace::Outcome::BoundViolation:
        *out = MVFP_OUTCOME_BOUND_VIOLATION;
        break;
    }
  });
}

mvfp_status mvfp_trace_step_count(const mvfp_trace* t, size_t* out) {
  return guarded([&] {
    require(t && out, "null argument");
    *out = t->trace.steps.empty() ? 0 : t->trace.steps.size() - 1;
  });
}

mvfp_status mvfp_trace_csv(const mvfp_trace* t, char** csv_out) {
  return guarded([&] {
    require(t && csv_out, "null argument");
    *csv_out = dup_string(mvfp::trace_to_csv(t->trace));
  });
}

mvfp_status mvfp_trace_summary_json(const mvfp_trace* t, char** json_out) {
  return guarded([&] {
    require(t && json_out, "null argument");
    const mvfp::IterationTrace& trace = t->trace;
    json j;
    j["outcome"] = mvfp::outcome_name(trace.outcome);
    j["transitions"] = trace.steps.empty() ? 0 : trace.steps.size() - 1;
    if (!trace.steps.empty())
      j["final_point"] = trace.steps.back().point.describe();
    if (trace.certificate) j["certificate"] = trace.certificate->str();
    if (trace.violation_step) j["violation_step"] = *trace.violation_step;
    *json_out = dup_string(j.dump(2));
  });
}

mvfp_status mvfp_trace_verify_json(const mvfp_trace* t, const mvfp_problem* p,
                                   char** json_out) {
  return guarded([&] {
    require(t && p && json_out, "null argument");
    require(p->problem.gauge.has_value(), "problem file declares no gauge");
    mvfp::OrbitCheck check =
        mvfp::verify_orbit_conditions(t->trace, *p->problem.gauge);
    json j;
    j["clean"] = check.clean();
    j["contraction_ok"] = check.contraction_ok;
    j["monotone_ok"] = check.monotone_ok;
    j["pair_bound_ok"] = check.pair_bound_ok;
    j["product_bound_ok"] = check.product_bound_ok;
    if (check.first_violation) {
      j["first_violation"] = {{"check", check.first_violation->check},
                              {"i", check.first_violation->i},
                              {"j", check.first_violation->j}};
    }
    *json_out = dup_string(j.dump(2));
  });
}

mvfp_status mvfp_verify_example(long depth, long sweep_depth,
                                const char* nadler_r, int format,
                                char** report_out) {
  return guarded([&] {
    require(report_out, "null argument");
    require(depth >= 3, "depth must be >= 3");
    mvfp::corpus::VerifyOptions options;
    if (sweep_depth > 0) options.sweep_depth = static_cast<std::size_t>(sweep_depth);
    if (nadler_r)
      options.nadler_r =
          mvfp::Scalar::parse(nadler_r, mvfp::NumericMode::Rational);
    mvfp::corpus::ClaimsReport report =
        mvfp::corpus::verify_example(static_cast<std::size_t>(depth), options);
    *report_out = dup_string(format == 1
                                 ? mvfp::corpus::claims_report_to_text(report)
                                 : mvfp::corpus::claims_report_to_json(report));
  });
}

mvfp_status mvfp_example_problem(long depth, char** json_out) {
  return guarded([&] {
    require(json_out, "null argument");
    require(depth >= 3, "depth must be >= 3");
    *json_out = dup_string(mvfp::emit_problem(
        mvfp::corpus::example_problem(static_cast<std::size_t>(depth))));
  });
}

mvfp_status mvfp_example_tau(long n, char** value_out) {
  return guarded([&] {
    require(value_out, "null argument");
    require(n >= 1, "tau is 1-based");
    *value_out =
        dup_string(mvfp::corpus::tau(static_cast<std::size_t>(n)).str());
  });
}

mvfp_status mvfp_example_orbit(long depth, long start_index, mvfp_trace** out) {
  return guarded([&] {
    require(out, "null argument");
    require(depth >= 3 && start_index >= 1, "bad depth or start index");
    auto t = std::make_unique<mvfp_trace>(mvfp_trace{mvfp::corpus::run_example_orbit(
        static_cast<std::size_t>(depth), static_cast<std::size_t>(start_index))});
    *out = t.release();
  });
}

mvfp_status mvfp_check_gauge(const char* gauge_json, const char* options_json,
                             int format, char** report_out) {
  return guarded([&] {
    require(gauge_json && report_out, "null argument");

    json opts = json::object();
    if (options_json && *options_json) {
      try {
        opts = json::parse(options_json);
      } catch (const json::exception& e) {
        mvfp::fail(mvfp::ErrorCode::ParseError,
                   std::string("options are not valid JSON: ") + e.what());
      }
    }
    mvfp::NumericMode mode =
        parse_mode(opts.value("mode", std::string("rational")));

    // Reuse the problem-file gauge schema.
    json wrapper;
    wrapper["mode"] = opts.value("mode", std::string("rational"));
    try {
      wrapper["gauge"] = json::parse(gauge_json);
    } catch (const json::exception& e) {
      mvfp::fail(mvfp::ErrorCode::ParseError,
                 std::string("gauge is not valid JSON: ") + e.what());
    }
    mvfp::Problem gp = mvfp::parse_problem(wrapper.dump());
    require(gp.gauge.has_value(), "no gauge in specification");
    const mvfp::Gauge& gauge = *gp.gauge;

    std::vector<mvfp::Scalar> probes;
    if (opts.contains("tau_probes")) {
      if (!opts["tau_probes"].is_number_integer() ||
          opts["tau_probes"].get<long>() < 1)
        mvfp::fail(mvfp::ErrorCode::ParseError, "tau_probes must be a positive integer");
      require(mode == mvfp::NumericMode::Rational,
              "tau probes require rational mode");
      probes = mvfp::corpus::tau_prefix(
          static_cast<std::size_t>(opts["tau_probes"].get<long>()));
    }
    if (opts.contains("probes")) {
      if (!opts["probes"].is_array())
        mvfp::fail(mvfp::ErrorCode::ParseError, "probes must be an array");
      for (const auto& e : opts["probes"]) {
        if (e.is_string())
          probes.push_back(mvfp::Scalar::parse(e.get<std::string>(), mode));
        else if (e.is_number() && mode == mvfp::NumericMode::Float64)
          probes.push_back(mvfp::Scalar::real(e.get<double>()));
        else if (e.is_number_integer())
          probes.push_back(mvfp::Scalar::rational(e.get<long long>()));
        else
          mvfp::fail(mvfp::ErrorCode::ParseError, "bad probe literal");
      }
    }
    require(!probes.empty(), "no probes: pass probes or tau_probes");

    std::vector<mvfp::Scalar> eps_grid;
    if (opts.contains("eps_grid")) {
      if (!opts["eps_grid"].is_array())
        mvfp::fail(mvfp::ErrorCode::ParseError, "eps_grid must be an array");
      for (const auto& e : opts["eps_grid"])
        eps_grid.push_back(e.is_string()
                               ? mvfp::Scalar::parse(e.get<std::string>(), mode)
                               : mvfp::Scalar::real(e.get<double>()));
    } else {
      eps_grid = mvfp::default_eps_grid(mode);
    }

    mvfp::Scalar t0 = opts.contains("t0")
                          ? mvfp::Scalar::parse(opts["t0"].get<std::string>(), mode)
                          : mvfp::Scalar::zero(mode);

    std::vector<mvfp::Scalar> deltas;
    if (opts.contains("deltas")) {
      if (!opts["deltas"].is_array())
        mvfp::fail(mvfp::ErrorCode::ParseError, "deltas must be an array");
      for (const auto& e : opts["deltas"])
        deltas.push_back(e.is_string()
                             ? mvfp::Scalar::parse(e.get<std::string>(), mode)
                             : mvfp::Scalar::real(e.get<double>()));
    } else {
      deltas = mvfp::default_delta_schedule(mode);
    }

    mvfp::GeraghtyReport class_s = mvfp::check_geraghty_class(gauge, probes, eps_grid);
    mvfp::MtReport mt = mvfp::check_mizoguchi_takahashi(gauge, t0, probes, deltas);

    if (format == 1) {
      std::string out;
      out += "class-S check: ";
      out += class_s.verdict == mvfp::GeraghtyReport::Verdict::Pass
                 ? "PASS"
                 : class_s.verdict == mvfp::GeraghtyReport::Verdict::Fail
                       ? "FAIL"
                       : "INCONCLUSIVE";
      out += "\n";
      for (const auto& row : class_s.rows) {
        out += "  eps " + row.eps.str() + ": s = " +
               (row.s ? row.s->str() : std::string("none")) + "\n";
      }
      out += std::string("right-limsup check at ") + t0.str() + ": " +
             (mt.verdict == mvfp::MtReport::Verdict::FailMt ? "FAIL-MT" : "PASS-MT") +
             " (estimate " + mt.limsup_estimate.str() + ")\n";
      *report_out = dup_string(out);
      return;
    }

    json j;
    {
      json g;
      g["verdict"] = class_s.verdict == mvfp::GeraghtyReport::Verdict::Pass
                         ? "PASS"
                         : class_s.verdict == mvfp::GeraghtyReport::Verdict::Fail
                               ? "FAIL"
                               : "INCONCLUSIVE";
      json rows = json::array();
      for (const auto& row : class_s.rows) {
        json o;
        o["eps"] = row.eps.str();
        if (row.s) o["s"] = row.s->str();
        rows.push_back(o);
      }
      g["rows"] = rows;
      j["class_s"] = g;
    }
    {
      json m;
      m["verdict"] =
          mt.verdict == mvfp::MtReport::Verdict::FailMt ? "FAIL-MT" : "PASS-MT";
      m["t0"] = t0.str();
      m["limsup_estimate"] = mt.limsup_estimate.str();
      json rows = json::array();
      for (const auto& row : mt.rows) {
        json o;
        o["delta"] = row.delta.str();
        if (row.estimate) o["estimate"] = row.estimate->str();
        rows.push_back(o);
      }
      m["rows"] = rows;
      j["mt"] = m;
    }
    *report_out = dup_string(j.dump(2));
  });
}

mvfp_status mvfp_nadler_constant(const mvfp_problem* p, const char* pairs,
                                 char** json_out) {
  return guarded([&] {
    require(p && json_out, "null argument");
    const mvfp::Problem& prob = p->problem;
    require(prob.map.has_value(), "problem file declares no map");

    std::vector<std::pair<mvfp::Point, mvfp::Point>> pair_list;
    if (pairs && *pairs) {
      std::string spec(pairs);
      std::size_t start = 0;
      while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        std::string item = spec.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t colon = item.find(':');
        require(colon != std::string::npos && colon > 0 && colon + 1 < item.size(),
                "pairs must look like \"a:b,c:d\"");
        pair_list.emplace_back(prob.point_by_id(item.substr(0, colon)),
                               prob.point_by_id(item.substr(colon + 1)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else {
      for (std::size_t i = 0; i < prob.points.size(); ++i)
        for (std::size_t k = i + 1; k < prob.points.size(); ++k)
          pair_list.emplace_back(prob.points[i], prob.points[k]);
    }

    mvfp::NadlerEstimate estimate =
        mvfp::estimate_nadler_constant(*prob.map, prob.metric, pair_list);
    json j;
    j["sup_ratio"] = estimate.sup_ratio.str();
    j["pairs"] = pair_list.size();
    j["witness"] = {estimate.witness.first, estimate.witness.second};
    *json_out = dup_string(j.dump(2));
  });
}

}  // extern "C"
