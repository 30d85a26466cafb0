#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvfp/metric.hpp"
#include "mvfp/scalar.hpp"
#include "mvfp/set_map.hpp"

namespace mvfp {

// A gauge function alpha: [0, inf) -> [0, 1). Constants, tables with a
// default branch, registered closed-form rules, and the derived transform
// t -> (1 + alpha(t)) / 2.
class Gauge {
 public:
  enum class Kind { Constant, Tabulated, Rule, BetaTransform };
  using RuleParams = std::map<std::string, Scalar>;

  static Gauge constant(Scalar r);
  static Gauge tabulated(std::vector<std::pair<Scalar, Scalar>> entries,
                         Scalar default_value);
  // Registered rules: "t_over_one_plus_t" (alpha(t) = t / (1 + t)).
  static Gauge rule(std::string name, RuleParams params, NumericMode mode);

  Kind kind() const noexcept;
  NumericMode mode() const noexcept;

  // Throws NegativeArgument for t < 0 and CodomainViolation when a rule
  // evaluates outside [0, 1).
  Scalar evaluate(const Scalar& t) const;

  const Scalar& constant_value() const;                         // Constant only
  const std::vector<std::pair<Scalar, Scalar>>& entries() const;  // Tabulated only
  const Scalar& default_value() const;                          // Tabulated only
  const std::string& rule_name() const;                         // Rule only
  const RuleParams& rule_params() const;                        // Rule only

 private:
  struct Impl;
  explicit Gauge(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static Scalar eval(const std::shared_ptr<const Impl>& impl, const Scalar& t);
  std::shared_ptr<const Impl> impl_;

  friend Gauge beta_of(const Gauge& g);
};

// The transform t -> (1 + alpha(t)) / 2. Constants and tables map to the
// same kind; rules wrap.
Gauge beta_of(const Gauge& g);

// --------------------------------------------------------------------------
// Desk-scale contraction-condition checkers. These are verdicts over the
// supplied probe sets, not proofs about all reals.

struct GeraghtyReport {
  enum class Verdict { Pass, Fail, Inconclusive };
  struct Row {
    Scalar eps;
    std::optional<Scalar> s;  // sup{t in probes : alpha(t) >= 1 - eps}
  };
  std::vector<Row> rows;  // same order as the eps grid (decreasing)
  Verdict verdict = Verdict::Inconclusive;
};

// s(eps) per grid entry. Pass when every defined s(eps) <= 2 eps
// (vacuously when none is defined; the slack keeps the verdict stable
// under the beta transform), Fail when even the smallest populated eps
// violates that bound, Inconclusive otherwise.
GeraghtyReport check_geraghty_class(const Gauge& g,
                                    const std::vector<Scalar>& probes,
                                    const std::vector<Scalar>& eps_grid);

struct MtReport {
  enum class Verdict { PassMt, FailMt };
  struct Row {
    Scalar delta;
    std::optional<Scalar> estimate;  // sup{alpha(s) : s in probes, t0 < s <= t0+delta}
  };
  std::vector<Row> rows;  // same order as the schedule (decreasing)
  Scalar limsup_estimate;  // estimate at the smallest populated delta
  Verdict verdict = Verdict::PassMt;
};

// Right-limsup estimate at t0 over a shrinking window schedule. FailMt when
// the gauge strictly climbs between the two probes nearest t0 and the
// terminal window's supremum is attained at the innermost probe; flat or
// decaying gauges pass.
MtReport check_mizoguchi_takahashi(const Gauge& g, const Scalar& t0,
                                   const std::vector<Scalar>& probes,
                                   const std::vector<Scalar>& delta_schedule);

struct NadlerEstimate {
  Scalar sup_ratio;
  std::size_t witness_index = 0;  // into the supplied pair list
  std::pair<std::string, std::string> witness;
};

// sup over the pairs of H(Tx, Ty) / d(x, y) with an argmax witness. A
// constant r is consistent with the sample iff the estimate is <= r.
NadlerEstimate estimate_nadler_constant(
    const SetValuedMap& map, const Metric& metric,
    const std::vector<std::pair<Point, Point>>& pairs);

std::vector<Scalar> default_eps_grid(NumericMode mode);        // 2^-1 .. 2^-10
std::vector<Scalar> default_delta_schedule(NumericMode mode);  // 2^0 .. 2^-20

}  // namespace mvfp
