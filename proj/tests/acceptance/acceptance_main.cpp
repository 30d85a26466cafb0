// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Expected values come from independent oracles computed here (plain-gmp
// recurrence, double-interval recurrence bounds, brute-force set scans),
// never from the code paths under test.

#include <gmp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mvfp/corpus.hpp"
#include "mvfp/errors.hpp"
#include "mvfp/gauge.hpp"
#include "mvfp/hausdorff.hpp"
#include "mvfp/solver.hpp"

using namespace mvfp;
namespace corpus = mvfp::corpus;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
  void note(const std::string& text) {
    if (ok) detail = text;
  }
};

Scalar q(long long num, long long den = 1) { return Scalar::rational(num, den); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// ---- independent oracles ---------------------------------------------------

std::vector<std::string> oracle_tau_strings(int n) {
  mpq_t t, one, tmp;
  mpq_inits(t, one, tmp, nullptr);
  mpq_set_ui(t, 1, 2);
  mpq_set_ui(one, 1, 1);
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    char* s = mpq_get_str(nullptr, 10, t);
    out.emplace_back(s);
    void (*freefn)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, std::strlen(s) + 1);
    mpq_sub(tmp, one, t);
    mpq_mul(t, tmp, t);
  }
  mpq_clears(t, one, tmp, nullptr);
  return out;
}

// First index n with tau_n < threshold, certified with a double interval
// around the recurrence (error stays far below the gaps involved).
std::size_t oracle_first_index_below(double threshold, std::size_t max_n) {
  double lo = 0.5, hi = 0.5;
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (hi < threshold) return n;
    if (lo < threshold) return 0;  // straddle: give up rather than guess
    double nlo = (1.0 - hi) * lo * (1.0 - 1e-12);
    double nhi = (1.0 - lo) * hi * (1.0 + 1e-12);
    lo = nlo;
    hi = nhi;
  }
  return 0;
}

Scalar oracle_directed(const Metric& m, const FiniteSet& A, const FiniteSet& B) {
  std::optional<Scalar> outer;
  for (const Point& a : A.points()) {
    std::optional<Scalar> inner;
    for (const Point& b : B.points()) {
      Scalar d = m.distance(a, b);
      if (!inner || d < *inner) inner = d;
    }
    if (!outer || *inner > *outer) outer = *inner;
  }
  return *outer;
}

Scalar oracle_hausdorff(const Metric& m, const FiniteSet& A, const FiniteSet& B) {
  return scalar_max(oracle_directed(m, A, B), oracle_directed(m, B, A));
}

FiniteSet random_float_set(std::mt19937_64& rng, std::size_t max_points,
                           std::size_t dim) {
  std::uniform_int_distribution<std::size_t> count(1, max_points);
  std::uniform_real_distribution<double> c(-10.0, 10.0);
  std::vector<Point> pts;
  std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Scalar> coords;
    for (std::size_t d = 0; d < dim; ++d) coords.push_back(Scalar::real(c(rng)));
    pts.push_back(Point::dense("", std::move(coords)));
  }
  return FiniteSet::of_points(std::move(pts));
}

FiniteSet random_rational_set(std::mt19937_64& rng, std::size_t max_points) {
  std::uniform_int_distribution<std::size_t> count(1, max_points);
  std::uniform_int_distribution<long long> c(-24, 24);
  std::vector<Point> pts;
  std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back(Point::dense("", {q(c(rng), 4), q(c(rng), 3), q(c(rng), 2)}));
  return FiniteSet::of_points(std::move(pts));
}

// ---- criteria ---------------------------------------------------------------

void criterion_1(Check& c) {
  auto start = std::chrono::steady_clock::now();
  corpus::ClaimsReport report = corpus::verify_example(30, {});
  double elapsed = seconds_since(start);
  c.expect(report.sweep_depth == 30, "sweep depth is not 30");
  c.expect(report.distance_formula.pairs == 435, "distance sweep has wrong pair count");
  c.expect(report.distance_formula.pass, "distance formula sweep failed");
  c.expect(report.hausdorff_formula.pairs == 406, "set sweep has wrong pair count");
  c.expect(report.hausdorff_formula.pass, "set distance sweep failed");
  c.expect(elapsed < 5.0, "sweep exceeded 5 s");
  c.note("435 + 406 exact equalities in " + std::to_string(elapsed) + " s");
}

void criterion_2(Check& c) {
  corpus::ClaimsReport report = corpus::verify_example(30, {});
  c.expect(report.gauge_equality.pairs == 406, "wrong pair count");
  c.expect(report.gauge_equality.pass, "gauge equality sweep failed");
  c.note("H = alpha(d) * d exactly on all 406 pairs");
}

void criterion_3(Check& c) {
  struct Case {
    const char* r_text;
    double r;
    std::optional<std::size_t> frozen;
  };
  const Case cases[] = {{"1/2", 0.5, 2}, {"9/10", 0.9, 7}, {"99/100", 0.99, {}}};
  std::string seen;
  for (const Case& cs : cases) {
    corpus::VerifyOptions options;
    options.nadler_r = Scalar::parse(cs.r_text, NumericMode::Rational);
    corpus::ClaimsReport report = corpus::verify_example(200, options);
    c.expect(report.nadler && report.nadler->first_index.has_value(),
             std::string("no violating pair reported for r = ") + cs.r_text);
    if (!report.nadler || !report.nadler->first_index) return;
    std::size_t got = *report.nadler->first_index;
    std::size_t want = oracle_first_index_below(1.0 - cs.r, 200);
    c.expect(want != 0, "oracle could not certify the index");
    c.expect(got == want, "index mismatch for r = " + std::string(cs.r_text) +
                              ": got " + std::to_string(got) + ", oracle " +
                              std::to_string(want));
    if (cs.frozen)
      c.expect(got == *cs.frozen, std::string("frozen index mismatch for r = ") +
                                      cs.r_text);
    c.expect(report.nadler->witness_pair.has_value(), "missing witness pair");
    seen += std::string(cs.r_text) + "->" + std::to_string(got) + " ";
  }
  c.note(seen);
}

const corpus::ClaimsReport& depth200_report() {
  static const corpus::ClaimsReport report = corpus::verify_example(200, {});
  return report;
}

void criterion_4(Check& c) {
  const corpus::ClaimsReport& report = depth200_report();
  Scalar expected = Scalar::one(NumericMode::Rational) - corpus::tau(200);
  c.expect(report.mt.limsup_estimate == expected,
           "limsup estimate is not exactly 1 - tau_200");
  c.expect(report.mt.limsup_estimate > q(99, 100), "estimate does not exceed 0.99");
  c.expect(report.mt.verdict == MtReport::Verdict::FailMt, "verdict is not FAIL-MT");
  c.note("estimate " + report.mt.limsup_estimate.str() + " = 1 - tau_200 exactly");
}

void criterion_5(Check& c) {
  const corpus::ClaimsReport& report = depth200_report();
  c.expect(report.class_s.verdict == GeraghtyReport::Verdict::Pass,
           "recurrence gauge did not pass the class-S check");
  c.expect(report.class_s.rows.size() == 10, "grid is not 2^-1 .. 2^-10");
  std::size_t defined = 0;
  for (const auto& row : report.class_s.rows) {
    if (!row.s) continue;
    ++defined;
    c.expect(Scalar::leq(*row.s, row.eps),
             "s(eps) exceeds eps at eps = " + row.eps.str());
  }
  c.expect(defined > 0, "no populated grid row");

  Gauge ratio = Gauge::rule("t_over_one_plus_t", {}, NumericMode::Rational);
  std::vector<Scalar> probes;
  for (int i = 1; i <= 100; ++i) probes.push_back(q(i));
  GeraghtyReport fail =
      check_geraghty_class(ratio, probes, default_eps_grid(NumericMode::Rational));
  c.expect(fail.verdict == GeraghtyReport::Verdict::Fail,
           "t/(1+t) did not fail the class-S check");
  c.note("recurrence gauge PASS with s(eps) <= eps; t/(1+t) FAIL");
}

void criterion_6(Check& c) {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1009);
  Metric euc = Metric::euclidean();
  Metric sup = Metric::sup_norm();
  for (int round = 0; round < 200; ++round) {
    FiniteSet A = random_float_set(rng, 64, 3);
    FiniteSet B = random_float_set(rng, 64, 3);
    const Metric& m = round % 2 == 0 ? euc : sup;
    double got = hausdorff_accelerated(m, A, B).to_double();
    double want = oracle_hausdorff(m, A, B).to_double();
    c.expect(std::fabs(got - want) <= 1e-12,
             "accelerated value drifted from the oracle in float mode");
  }
  for (int round = 0; round < 40; ++round) {
    FiniteSet A = random_rational_set(rng, 16);
    FiniteSet B = random_rational_set(rng, 16);
    const Metric& m = round % 2 == 0 ? euc : sup;
    c.expect(hausdorff_accelerated(m, A, B) == oracle_hausdorff(m, A, B),
             "accelerated value differs from the oracle in rational mode");
  }
  double elapsed = seconds_since(start);
  c.expect(elapsed < 10.0, "oracle-equivalence batch exceeded 10 s");
  c.note("200 float + 40 exact pairs in " + std::to_string(elapsed) + " s");
}

void criterion_7(Check& c) {
  std::mt19937_64 rng(2027);
  Metric euc = Metric::euclidean();
  Metric sup = Metric::sup_norm();
  std::uniform_int_distribution<std::size_t> subs(1, 3);

  std::function<FiniteSet(int)> nested = [&](int level) -> FiniteSet {
    if (level == 1) return random_float_set(rng, 5, 2);
    std::vector<FiniteSet> members;
    std::size_t n = subs(rng);
    for (std::size_t i = 0; i < n; ++i) members.push_back(nested(level - 1));
    return FiniteSet::of_sets(std::move(members));
  };

  int checked = 0;
  for (int round = 0; round < 500; ++round) {
    int level = 1 + round % 3;
    const Metric& m = round % 2 == 0 ? euc : sup;
    FiniteSet A = nested(level);
    FiniteSet B = nested(level);
    FiniteSet C = nested(level);

    Scalar ab = hyperspace_distance(m, A, B);
    c.expect(ab == hyperspace_distance(m, B, A), "symmetry violated");

    FiniteSet copy = level == 1
                         ? [&] {
                             std::vector<Point> pts = A.points();
                             std::shuffle(pts.begin(), pts.end(), rng);
                             return FiniteSet::of_points(pts);
                           }()
                         : FiniteSet::of_sets(std::vector<FiniteSet>(
                               A.sets().rbegin(), A.sets().rend()));
    c.expect(hyperspace_distance(m, A, copy).to_double() == 0.0,
             "identity violated on a canonical-equal copy");

    double lhs = hyperspace_distance(m, A, C).to_double();
    double rhs = ab.to_double() + hyperspace_distance(m, B, C).to_double();
    c.expect(lhs <= rhs + 1e-12, "triangle inequality violated");
    ++checked;
  }
  c.note(std::to_string(checked) + " random triples across levels 1..3");
}

void criterion_8(Check& c) {
  std::mt19937_64 rng(3181);
  std::uniform_int_distribution<int> size_dist(3, 7);
  std::uniform_int_distribution<long long> coord(-16, 16);

  int accepted = 0, attempts = 0;
  while (accepted < 100 && attempts < 40000) {
    ++attempts;
    int n = size_dist(rng);
    std::vector<Scalar> xs;
    bool distinct = true;
    for (int i = 0; i < n; ++i) {
      Scalar v = q(coord(rng), 4);
      for (const Scalar& u : xs) distinct &= !(u == v);
      xs.push_back(v);
    }
    if (!distinct) continue;

    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    std::vector<std::vector<Scalar>> rows(n, std::vector<Scalar>(n, q(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) rows[i][j] = (xs[i] - xs[j]).abs();
    Metric metric = Metric::table(labels, rows);

    std::uniform_int_distribution<int> pick(0, n - 1);
    int attractor = pick(rng);
    std::vector<std::pair<Point, FiniteSet>> entries;
    for (int i = 0; i < n; ++i) {
      std::vector<Point> image{Point::labeled(labels[attractor])};
      if (pick(rng) == 0 && i != attractor)
        image.push_back(Point::labeled(labels[i]));
      entries.emplace_back(Point::labeled(labels[i]),
                           FiniteSet::of_points(std::move(image)));
    }
    SetValuedMap map = SetValuedMap::table(entries);

    // brute-force filter: the map must contract with a constant gauge
    std::optional<Scalar> rho;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Scalar d = metric.distance(Point::labeled(labels[i]),
                                   Point::labeled(labels[j]));
        Scalar h = hausdorff(metric, map.image(Point::labeled(labels[i])),
                             map.image(Point::labeled(labels[j])));
        Scalar ratio = h / d;
        if (!rho || ratio > *rho) rho = ratio;
      }
    if (!rho || !(*rho < Scalar::one(NumericMode::Rational))) continue;
    Gauge gauge = rho->sign() > 0 ? Gauge::constant(*rho) : Gauge::constant(q(1, 2));
    ++accepted;

    for (int s = 0; s < n; ++s) {
      IterationTrace trace =
          iterate(map, metric, gauge, Point::labeled(labels[s]), q(0), 1000);
      c.expect(trace.outcome == IterationTrace::Outcome::FixedPoint,
               "iteration did not reach a fixed point");
      if (trace.outcome != IterationTrace::Outcome::FixedPoint) return;
      c.expect(*trace.certificate == q(0), "certificate is not exactly zero");
      OrbitCheck oc = verify_orbit_conditions(trace, gauge);
      c.expect(oc.clean(), "orbit conditions violated: " +
                               (oc.first_violation ? oc.first_violation->check
                                                   : std::string("?")));
    }
  }
  c.expect(accepted == 100,
           "only generated " + std::to_string(accepted) + " contractive maps");
  c.note("100 contractive table maps, every start point, all orbits clean");
}

void criterion_9(Check& c) {
  SetValuedMap halve = SetValuedMap::rule("scale", {});
  Metric euc = Metric::euclidean();
  Gauge gauge = Gauge::constant(Scalar::real(0.5));
  Point x0 = Point::dense("", {Scalar::real(1.0)});
  IterationTrace trace = iterate(halve, euc, gauge, x0, Scalar::real(5e-10), 100);
  c.expect(trace.outcome == IterationTrace::Outcome::FixedPoint,
           "halving iteration did not converge");
  c.expect(trace.steps.size() - 1 <= 35, "needed more than 35 steps");
  double z = trace.steps.back().point.coords()[0].to_double();
  c.expect(std::fabs(z) <= 1e-9, "final point is not within 1e-9 of zero");

  IterationTrace orbit = corpus::run_example_orbit(6, 1);
  auto oracle = oracle_tau_strings(5);
  c.expect(orbit.steps.size() == 6, "orbit length is not 5 transitions");
  for (std::size_t k = 1; k < orbit.steps.size(); ++k) {
    c.expect(orbit.steps[k].step_distance.has_value(), "missing step distance");
    c.expect(orbit.steps[k].step_distance->str() == oracle[k - 1],
             "step distance " + std::to_string(k) + " is not tau_" +
                 std::to_string(k));
  }
  c.note("|z| = " + std::to_string(std::fabs(z)) + " after " +
         std::to_string(trace.steps.size() - 1) + " steps; orbit distances exact");
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    void (*run)(Check&);
  };
  const Entry entries[] = {
      {1, "depth-30 distance and set-distance equalities", criterion_1},
      {2, "pointwise gauge equality on the same pairs", criterion_2},
      {3, "first index violating a constant gauge at depth 200", criterion_3},
      {4, "right-limsup estimate equals 1 - tau_200 exactly", criterion_4},
      {5, "class-S verdicts: recurrence gauge vs t/(1+t)", criterion_5},
      {6, "accelerated Hausdorff equals the brute-force oracle", criterion_6},
      {7, "metric axioms at hyperspace levels 1..3", criterion_7},
      {8, "solver soundness on contractive table maps", criterion_8},
      {9, "single-valued specializations", criterion_9},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Check c;
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.ok = false;
      c.detail = std::string("exception: ") + ex.what();
    }
    std::cout << (c.ok ? "[PASS]" : "[FAIL]") << " criterion " << e.id << ": "
              << e.name;
    if (!c.detail.empty()) std::cout << " -- " << c.detail;
    std::cout << "\n";
    if (!c.ok) ++failures;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 9 criteria passed\n";
  return 0;
}
