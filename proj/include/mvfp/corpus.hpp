#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvfp/gauge.hpp"
#include "mvfp/problem.hpp"
#include "mvfp/solver.hpp"

namespace mvfp::corpus {

// The built-in exact instance: tau_1 = 1/2, tau_{n+1} = (1 - tau_n) tau_n;
// points x_n = tau_n e_n in the sup metric; T x_n = {x_{n+1}, ..., x_N}
// with the truncation sentinel T x_N = {x_N}; gauge tau_n -> 1 - tau_n with
// default 0. All scalars are exact rationals.

// tau_n, exact, 1-based. Values are cached and shared process-wide.
Scalar tau(std::size_t n);
std::vector<Scalar> tau_prefix(std::size_t n);  // tau_1 .. tau_n

struct ExampleInstance {
  std::size_t depth = 0;
  std::vector<Point> points;  // points[i] is x_{i+1}
  Metric metric = Metric::sup_norm();
  SetValuedMap map = SetValuedMap::rule("scale", {});
  Gauge gauge = Gauge::constant(Scalar::rational(0));
  std::size_t sentinel_index = 0;  // == depth; flagged in every report

  const Point& x(std::size_t n) const;  // 1-based
};

ExampleInstance build_example(std::size_t depth);  // depth >= 3

struct SweepResult {
  std::size_t pairs = 0;
  bool pass = true;
  std::optional<std::pair<std::size_t, std::size_t>> first_failure;  // (m, n)
};

struct NadlerViolation {
  Scalar r;
  std::optional<std::size_t> first_index;  // least n with tau_n < 1 - r
  std::optional<std::pair<std::size_t, std::size_t>> witness_pair;  // (m, n)
};

struct ClaimsReport {
  std::size_t depth = 0;
  std::size_t sweep_depth = 0;
  std::size_t sentinel_index = 0;
  SweepResult distance_formula;   // d(x_m, x_n) == tau_n
  SweepResult hausdorff_formula;  // H(T x_m, T x_n) == tau_{n+1}
  SweepResult gauge_equality;     // H == alpha(d) * d
  std::optional<NadlerViolation> nadler;
  GeraghtyReport class_s;
  MtReport mt;

  bool sweeps_pass() const {
    return distance_formula.pass && hausdorff_formula.pass && gauge_equality.pass;
  }
};

struct VerifyOptions {
  // Exact equality sweeps cost O(sweep_depth^2) set pairs; the asymptotic
  // checks always run at full depth. Defaults to min(depth, 30).
  std::optional<std::size_t> sweep_depth;
  std::optional<Scalar> nadler_r;  // rational in (0, 1)
};

ClaimsReport verify_example(std::size_t depth, const VerifyOptions& options = {});

// Runs the solver from x_k over the instance; step distances come out as
// tau_k, tau_{k+1}, ... until the sentinel fixed point.
IterationTrace run_example_orbit(std::size_t depth, std::size_t start_index);

// Depths whose scalars exceed the exact text budget are refused.
Problem example_problem(std::size_t depth);

std::string claims_report_to_json(const ClaimsReport& report);
std::string claims_report_to_text(const ClaimsReport& report);

}  // namespace mvfp::corpus
