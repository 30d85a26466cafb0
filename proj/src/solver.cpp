#include "mvfp/solver.hpp"

#include "mvfp/errors.hpp"

namespace mvfp {

Point select_next(const Metric& metric, const Point& current,
                  const FiniteSet& image, const std::optional<Scalar>& bound) {
  auto [nearest, dist] = metric.nearest(current, image);
  if (bound && !Scalar::leq(dist, *bound))
    fail(ErrorCode::BoundUnachievable,
         "no image point satisfies the selection bound " + bound->str() +
             " (best distance " + dist.str() + ")");
  return *nearest;
}

IterationTrace iterate(const SetValuedMap& map, const Metric& metric,
                       const Gauge& gauge, const Point& x0, const Scalar& tol,
                       std::size_t max_iter) {
  if (tol.sign() < 0)
    fail(ErrorCode::InvalidArgument, "tolerance must be >= 0");
  if (tol.mode() == NumericMode::Float64 && tol.sign() == 0)
    fail(ErrorCode::InvalidArgument, "tolerance must be > 0 in float mode");

  Gauge beta = beta_of(gauge);
  IterationTrace trace{IterationTrace::Outcome::MaxIterExceeded, {}, {}, {}, metric};

  Point x = x0;
  std::optional<Scalar> prev_distance;  // d(x_{n-1}, x_n)
  std::optional<Scalar> prev_beta;      // beta(d(x_{n-1}, x_n))

  for (std::size_t n = 0;; ++n) {
    FiniteSet image = map.image(x);
    auto [nearest, dist] = metric.nearest(x, image);
    trace.steps.push_back({n, x, prev_distance, dist, prev_beta});

    if (Scalar::leq(dist, tol)) {
      trace.outcome = IterationTrace::Outcome::FixedPoint;
      trace.certificate = dist;
      return trace;
    }
    if (n == max_iter) {
      trace.outcome = IterationTrace::Outcome::MaxIterExceeded;
      return trace;
    }
    if (prev_distance) {
      Scalar bound = *prev_beta * *prev_distance;
      if (!Scalar::leq(dist, bound)) {
        trace.outcome = IterationTrace::Outcome::BoundViolation;
        trace.violation_step = n;
        return trace;
      }
    }
    prev_beta = beta.evaluate(dist);
    prev_distance = dist;
    x = *nearest;
  }
}

OrbitCheck verify_orbit_conditions(const IterationTrace& trace, const Gauge& gauge) {
  OrbitCheck check;
  const auto& steps = trace.steps;
  if (steps.empty()) return check;
  Gauge beta = beta_of(gauge);

  auto flag = [&](bool& ok, const char* name, std::size_t i, std::size_t j) {
    ok = false;
    if (!check.first_violation) check.first_violation = {name, i, j};
  };

  // Per-step contraction and strict monotone decrease.
  for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
    if (!steps[k].step_distance || !steps[k + 1].step_distance) continue;
    const Scalar& dk = *steps[k].step_distance;
    const Scalar& dk1 = *steps[k + 1].step_distance;
    Scalar bv = beta.evaluate(dk);
    if (!Scalar::leq(dk1, bv * dk)) flag(check.contraction_ok, "contraction", k, k + 1);
    if (dk.sign() > 0 &&
        Scalar::compare(dk1, dk) != std::strong_ordering::less)
      flag(check.monotone_ok, "monotone_decrease", k, k + 1);
  }

  // Pairwise bound on all recorded index pairs with successors.
  Scalar one = Scalar::one(steps.front().image_distance.mode());
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    for (std::size_t j = i + 1; j + 1 < steps.size(); ++j) {
      Scalar dij = trace.metric.distance(steps[i].point, steps[j].point);
      if (dij.is_zero()) continue;
      Scalar lhs = dij * (one - beta.evaluate(dij));
      Scalar rhs = *steps[i + 1].step_distance + *steps[j + 1].step_distance;
      if (!Scalar::leq(lhs, rhs)) flag(check.pair_bound_ok, "pair_bound", i, j);
    }
  }

  // Running beta product bounds the normalized step decay.
  const Scalar* first = nullptr;
  std::optional<Scalar> product;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (!steps[k].step_distance) continue;
    const Scalar& dk = *steps[k].step_distance;
    if (!first) {
      first = &dk;
      product = one;
      continue;
    }
    // product of beta over the previous steps
    // (recomputed from the gauge, independent of the recorded values)
    if (!Scalar::leq(dk, *product * beta.evaluate(*steps[k - 1].step_distance) * *first)) {
      flag(check.product_bound_ok, "product_bound", k - 1, k);
    }
    product = *product * beta.evaluate(*steps[k - 1].step_distance);
  }

  return check;
}

std::string outcome_name(IterationTrace::Outcome outcome) {
  switch (outcome) {
    case IterationTrace::Outcome::FixedPoint: return "fixed_point";
    case IterationTrace::Outcome::MaxIterExceeded: return "max_iter_exceeded";
    case IterationTrace::Outcome::BoundViolation: return "bound_violation";
  }
  return "unknown";
}

std::string trace_to_csv(const IterationTrace& trace) {
  std::string out = "n,point_id,step_distance,image_distance,beta_value\n";
  for (const TraceStep& s : trace.steps) {
    out += std::to_string(s.n);
    out += ',';
    out += s.point.describe();
    out += ',';
    if (s.step_distance) out += s.step_distance->str();
    out += ',';
    out += s.image_distance.str();
    out += ',';
    if (s.beta_value) out += s.beta_value->str();
    out += '\n';
  }
  return out;
}

}  // namespace mvfp
