#include "mvfp/corpus.hpp"

#include <mutex>

#include "json.hpp"
#include "mvfp/errors.hpp"
#include "mvfp/hausdorff.hpp"

namespace mvfp::corpus {

using nlohmann::json;

namespace {

std::mutex g_tau_mutex;
std::vector<Scalar>& tau_cache() {
  static std::vector<Scalar>* cache = new std::vector<Scalar>();
  return *cache;
}

void extend_tau(std::size_t n) {
  auto& cache = tau_cache();
  if (cache.empty()) cache.push_back(Scalar::rational(1, 2));
  Scalar one = Scalar::one(NumericMode::Rational);
  while (cache.size() < n) cache.push_back((one - cache.back()) * cache.back());
}

}  // namespace

Scalar tau(std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "tau is 1-based");
  std::lock_guard lk(g_tau_mutex);
  extend_tau(n);
  return tau_cache()[n - 1];
}

std::vector<Scalar> tau_prefix(std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "tau is 1-based");
  std::lock_guard lk(g_tau_mutex);
  extend_tau(n);
  return {tau_cache().begin(), tau_cache().begin() + static_cast<long>(n)};
}

const Point& ExampleInstance::x(std::size_t n) const {
  if (n == 0 || n > points.size())
    fail(ErrorCode::InvalidArgument, "point index out of range");
  return points[n - 1];
}

ExampleInstance build_example(std::size_t depth) {
  if (depth < 3) fail(ErrorCode::InvalidArgument, "instance depth must be >= 3");

  ExampleInstance inst;
  inst.depth = depth;
  inst.sentinel_index = depth;
  inst.metric = Metric::sup_norm();

  std::vector<Scalar> taus = tau_prefix(depth);
  inst.points.reserve(depth);
  for (std::size_t n = 1; n <= depth; ++n)
    inst.points.push_back(
        Point::sparse("x" + std::to_string(n), {{n - 1, taus[n - 1]}}));

  std::vector<std::pair<Point, FiniteSet>> entries;
  entries.reserve(depth);
  for (std::size_t n = 1; n <= depth; ++n) {
    std::vector<Point> image;
    if (n < depth) {
      image.assign(inst.points.begin() + static_cast<long>(n), inst.points.end());
    } else {
      image.push_back(inst.points.back());  // truncation sentinel
    }
    entries.emplace_back(inst.points[n - 1], FiniteSet::of_points(std::move(image)));
  }
  inst.map = SetValuedMap::table(std::move(entries));

  Scalar one = Scalar::one(NumericMode::Rational);
  std::vector<std::pair<Scalar, Scalar>> gauge_entries;
  gauge_entries.reserve(depth);
  for (const Scalar& t : taus) gauge_entries.emplace_back(t, one - t);
  inst.gauge = Gauge::tabulated(std::move(gauge_entries), Scalar::rational(0));

  return inst;
}

ClaimsReport verify_example(std::size_t depth, const VerifyOptions& options) {
  ExampleInstance inst = build_example(depth);
  std::vector<Scalar> taus = tau_prefix(depth);

  ClaimsReport report;
  report.depth = depth;
  report.sentinel_index = inst.sentinel_index;
  report.sweep_depth = std::min(options.sweep_depth.value_or(30), depth);
  const std::size_t S = report.sweep_depth;

  // d(x_m, x_n) == tau_n over n < m <= S.
  for (std::size_t m = 2; m <= S; ++m) {
    for (std::size_t n = 1; n < m; ++n) {
      ++report.distance_formula.pairs;
      Scalar d = inst.metric.distance(inst.x(m), inst.x(n));
      if (d != taus[n - 1]) {
        report.distance_formula.pass = false;
        if (!report.distance_formula.first_failure)
          report.distance_formula.first_failure = {m, n};
      }
    }
  }

  // The sentinel image is excluded: pairs range over n < m <= min(S, N-1).
  std::size_t hs = std::min(S, depth - 1);
  for (std::size_t m = 2; m <= hs; ++m) {
    for (std::size_t n = 1; n < m; ++n) {
      Scalar d = inst.metric.distance(inst.x(m), inst.x(n));
      Scalar h = hausdorff(inst.metric, inst.map.image(inst.x(m)),
                           inst.map.image(inst.x(n)));
      ++report.hausdorff_formula.pairs;
      if (h != taus[n]) {  // tau_{n+1}
        report.hausdorff_formula.pass = false;
        if (!report.hausdorff_formula.first_failure)
          report.hausdorff_formula.first_failure = {m, n};
      }
      ++report.gauge_equality.pairs;
      if (h != inst.gauge.evaluate(d) * d) {
        report.gauge_equality.pass = false;
        if (!report.gauge_equality.first_failure)
          report.gauge_equality.first_failure = {m, n};
      }
    }
  }

  if (options.nadler_r) {
    const Scalar& r = *options.nadler_r;
    Scalar one = Scalar::one(r.mode());
    if (r.sign() <= 0 || Scalar::compare(r, one) != std::strong_ordering::less)
      fail(ErrorCode::InvalidArgument, "contraction constant must lie in (0, 1)");
    NadlerViolation nv{r, std::nullopt, std::nullopt};
    Scalar threshold = one - r;
    for (std::size_t n = 1; n + 2 <= depth; ++n) {
      if (Scalar::compare(taus[n - 1], threshold) == std::strong_ordering::less) {
        nv.first_index = n;
        nv.witness_pair = {n + 1, n};
        break;
      }
    }
    report.nadler = std::move(nv);
  }

  report.class_s = check_geraghty_class(inst.gauge, taus,
                                        default_eps_grid(NumericMode::Rational));
  report.mt = check_mizoguchi_takahashi(inst.gauge, Scalar::rational(0), taus,
                                        default_delta_schedule(NumericMode::Rational));
  return report;
}

IterationTrace run_example_orbit(std::size_t depth, std::size_t start_index) {
  if (start_index == 0 || start_index > depth)
    fail(ErrorCode::InvalidArgument, "start index out of range");
  ExampleInstance inst = build_example(depth);
  return iterate(inst.map, inst.metric, inst.gauge, inst.x(start_index),
                 Scalar::rational(0), depth + 1);
}

Problem example_problem(std::size_t depth) {
  ExampleInstance inst = build_example(depth);
  // Refuse depths whose scalars cannot be written exactly.
  for (const Scalar& t : tau_prefix(depth))
    if (!t.fraction())
      fail(ErrorCode::InvalidArgument,
           "depth " + std::to_string(depth) +
               " exceeds the exact text-serialization budget");
  Problem p;
  p.mode = NumericMode::Rational;
  p.metric = inst.metric;
  p.points = inst.points;
  p.map = inst.map;
  p.gauge = inst.gauge;
  p.solver.x0 = "x1";
  p.solver.tol = Scalar::rational(0);
  p.solver.max_iter = static_cast<long>(depth + 1);
  for (std::size_t n = 1; n <= depth; ++n) {
    std::vector<Point> members(inst.points.begin() + static_cast<long>(n - 1),
                               inst.points.end());
    p.named_sets.emplace("X" + std::to_string(n),
                         FiniteSet::of_points(std::move(members)));
    p.named_sets.emplace("Tx" + std::to_string(n), inst.map.image(inst.x(n)));
  }
  return p;
}

namespace {

json sweep_json(const SweepResult& s) {
  json j;
  j["pairs"] = s.pairs;
  j["pass"] = s.pass;
  if (s.first_failure)
    j["first_failure"] = {{"m", s.first_failure->first}, {"n", s.first_failure->second}};
  return j;
}

std::string verdict_text(GeraghtyReport::Verdict v) {
  switch (v) {
    case GeraghtyReport::Verdict::Pass: return "PASS";
    case GeraghtyReport::Verdict::Fail: return "FAIL";
    case GeraghtyReport::Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

}  // namespace

std::string claims_report_to_json(const ClaimsReport& r) {
  json j;
  j["depth"] = r.depth;
  j["sweep_depth"] = r.sweep_depth;
  j["sentinel_index"] = r.sentinel_index;
  j["distance_formula"] = sweep_json(r.distance_formula);
  j["hausdorff_formula"] = sweep_json(r.hausdorff_formula);
  j["gauge_equality"] = sweep_json(r.gauge_equality);
  if (r.nadler) {
    json n;
    n["r"] = r.nadler->r.str();
    n["violation_found"] = r.nadler->first_index.has_value();
    if (r.nadler->first_index) n["first_index"] = *r.nadler->first_index;
    if (r.nadler->witness_pair)
      n["witness_pair"] = {{"m", r.nadler->witness_pair->first},
                           {"n", r.nadler->witness_pair->second}};
    j["nadler_violation"] = n;
  }
  {
    json g;
    g["verdict"] = verdict_text(r.class_s.verdict);
    json rows = json::array();
    for (const auto& row : r.class_s.rows) {
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
        r.mt.verdict == MtReport::Verdict::FailMt ? "FAIL-MT" : "PASS-MT";
    m["limsup_estimate"] = r.mt.limsup_estimate.str();
    json rows = json::array();
    for (const auto& row : r.mt.rows) {
      json o;
      o["delta"] = row.delta.str();
      if (row.estimate) o["estimate"] = row.estimate->str();
      rows.push_back(o);
    }
    m["rows"] = rows;
    j["mt"] = m;
  }
  return j.dump(2);
}

std::string claims_report_to_text(const ClaimsReport& r) {
  auto line = [](const char* name, const SweepResult& s) {
    std::string out = std::string(name) + ": " + (s.pass ? "PASS" : "FAIL") +
                      " (" + std::to_string(s.pairs) + " pairs";
    if (s.first_failure)
      out += ", first failure m=" + std::to_string(s.first_failure->first) +
             " n=" + std::to_string(s.first_failure->second);
    return out + ")\n";
  };
  std::string out;
  out += "depth " + std::to_string(r.depth) + ", equality sweeps at depth " +
         std::to_string(r.sweep_depth) + ", sentinel index " +
         std::to_string(r.sentinel_index) + " (excluded from pair checks)\n";
  out += line("distance formula  d(x_m,x_n) = tau_n       ", r.distance_formula);
  out += line("hausdorff formula H(Tx_m,Tx_n) = tau_{n+1} ", r.hausdorff_formula);
  out += line("gauge equality    H = alpha(d) * d         ", r.gauge_equality);
  if (r.nadler) {
    out += "constant-gauge violation with r = " + r.nadler->r.str() + ": ";
    if (r.nadler->first_index) {
      out += "first index n = " + std::to_string(*r.nadler->first_index) +
             ", witness pair (x" + std::to_string(r.nadler->witness_pair->first) +
             ", x" + std::to_string(r.nadler->witness_pair->second) + ")\n";
    } else {
      out += "no violation within depth\n";
    }
  }
  out += "class-S check: " + verdict_text(r.class_s.verdict) + "\n";
  out += std::string("right-limsup check at 0: ") +
         (r.mt.verdict == MtReport::Verdict::FailMt ? "FAIL-MT" : "PASS-MT") +
         " (estimate " + r.mt.limsup_estimate.str() + ")\n";
  return out;
}

}  // namespace mvfp::corpus
