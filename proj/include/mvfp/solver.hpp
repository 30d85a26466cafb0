#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mvfp/gauge.hpp"
#include "mvfp/metric.hpp"
#include "mvfp/set_map.hpp"

namespace mvfp {

struct TraceStep {
  std::size_t n = 0;
  Point point = Point::labeled("?");
  std::optional<Scalar> step_distance;  // d(x_{n-1}, x_n); absent at n = 0
  Scalar image_distance;                // D(x_n, T x_n)
  std::optional<Scalar> beta_value;     // beta(d(x_{n-1}, x_n)); absent at n = 0
};

struct IterationTrace {
  enum class Outcome { FixedPoint, MaxIterExceeded, BoundViolation };
  Outcome outcome = Outcome::MaxIterExceeded;
  std::vector<TraceStep> steps;
  std::optional<Scalar> certificate;        // D(z, Tz) for FixedPoint
  std::optional<std::size_t> violation_step;
  Metric metric;  // kept so orbits can be re-verified later
};

// argmin over the image of d(current, .), canonical order breaking ties.
// The argmin attains the point-to-set distance exactly, so it satisfies any
// bound that is satisfiable at all; an unsatisfiable bound is an error.
Point select_next(const Metric& metric, const Point& current,
                  const FiniteSet& image, const std::optional<Scalar>& bound);

// Picard-style orbit: x_{n+1} is the nearest point of T(x_n), required to
// stay within the beta(d) * d selection bound. Stops with FixedPoint when
// D(x_n, T x_n) <= tol, with the certificate recorded; a failed bound is a
// reported outcome, not an exception.
IterationTrace iterate(const SetValuedMap& map, const Metric& metric,
                       const Gauge& gauge, const Point& x0, const Scalar& tol,
                       std::size_t max_iter = 10000);

struct OrbitCheck {
  bool contraction_ok = true;   // d_{n+1} <= beta(d_n) * d_n per step
  bool monotone_ok = true;      // strict decrease while positive
  bool pair_bound_ok = true;    // d(x_n, x_m) * (1 - beta(d(x_n, x_m)))
                                //   <= d(x_n, x_{n+1}) + d(x_m, x_{m+1})
  bool product_bound_ok = true;  // running beta product bounds step decay
  struct Violation {
    std::string check;
    std::size_t i = 0, j = 0;
  };
  std::optional<Violation> first_violation;
  bool clean() const {
    return contraction_ok && monotone_ok && pair_bound_ok && product_bound_ok;
  }
};

OrbitCheck verify_orbit_conditions(const IterationTrace& trace, const Gauge& gauge);

// Header "n,point_id,step_distance,image_distance,beta_value"; one row per
// step, optional fields empty at n = 0.
std::string trace_to_csv(const IterationTrace& trace);

std::string outcome_name(IterationTrace::Outcome outcome);

}  // namespace mvfp
