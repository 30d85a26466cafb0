#include "mvfp/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "mvfp/config.hpp"
#include "mvfp/errors.hpp"
#include "mvfp/hausdorff.hpp"

namespace mvfp {

namespace {

void require_codomain(const Scalar& v, const char* what) {
  Scalar one = Scalar::one(v.mode());
  if (v.sign() < 0 || Scalar::compare(v, one) != std::strong_ordering::less)
    fail(ErrorCode::CodomainViolation,
         std::string(what) + " " + v.str() + " lies outside [0, 1)");
}

}  // namespace

struct Gauge::Impl {
  Kind kind = Kind::Constant;
  NumericMode mode = NumericMode::Rational;
  Scalar constant;                                // Constant
  std::vector<std::pair<Scalar, Scalar>> table;   // Tabulated, sorted by key
  Scalar fallback;                                // Tabulated default
  std::string rule;                               // Rule
  RuleParams params;                              // Rule
  std::shared_ptr<const Impl> base;               // BetaTransform
};

Gauge Gauge::constant(Scalar r) {
  require_codomain(r, "constant gauge value");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Constant;
  impl->mode = r.mode();
  impl->constant = std::move(r);
  return Gauge(std::move(impl));
}

Gauge Gauge::tabulated(std::vector<std::pair<Scalar, Scalar>> entries,
                       Scalar default_value) {
  require_codomain(default_value, "tabulated gauge default");
  NumericMode mode = default_value.mode();
  for (auto& [key, value] : entries) {
    if (key.mode() != mode || value.mode() != mode)
      fail(ErrorCode::MixedMode, "tabulated gauge mixes numeric modes");
    if (key.sign() < 0)
      fail(ErrorCode::ValidationError, "tabulated gauge key " + key.str() + " is negative");
    require_codomain(value, "tabulated gauge value");
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return Scalar::compare(a.first, b.first) == std::strong_ordering::less;
  });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      fail(ErrorCode::ValidationError,
           "tabulated gauge repeats key " + entries[i].first.str());
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Tabulated;
  impl->mode = mode;
  impl->table = std::move(entries);
  impl->fallback = std::move(default_value);
  return Gauge(std::move(impl));
}

Gauge Gauge::rule(std::string name, RuleParams params, NumericMode mode) {
  if (name != "t_over_one_plus_t")
    fail(ErrorCode::InvalidArgument, "unknown gauge rule '" + name + "'");
  if (!params.empty())
    fail(ErrorCode::InvalidArgument,
         "gauge rule '" + name + "' does not take parameters");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Rule;
  impl->mode = mode;
  impl->rule = std::move(name);
  impl->params = std::move(params);
  return Gauge(std::move(impl));
}

Gauge::Kind Gauge::kind() const noexcept { return impl_->kind; }
NumericMode Gauge::mode() const noexcept { return impl_->mode; }

Scalar Gauge::evaluate(const Scalar& t) const {
  if (t.mode() != impl_->mode)
    fail(ErrorCode::MixedMode, "gauge argument mode differs from gauge mode");
  if (t.sign() < 0)
    fail(ErrorCode::NegativeArgument, "gauge argument " + t.str() + " is negative");
  return eval(impl_, t);
}

Scalar Gauge::eval(const std::shared_ptr<const Impl>& impl, const Scalar& t) {
  switch (impl->kind) {
    case Gauge::Kind::Constant:
      return impl->constant;
    case Gauge::Kind::Tabulated: {
      const auto& table = impl->table;
      if (impl->mode == NumericMode::Rational) {
        auto it = std::lower_bound(
            table.begin(), table.end(), t, [](const auto& entry, const Scalar& key) {
              return Scalar::compare(entry.first, key) == std::strong_ordering::less;
            });
        if (it != table.end() && it->first == t) return it->second;
        return impl->fallback;
      }
      // Float keys match within the global tolerance; nearest key wins.
      double tol = Config::float_tolerance();
      double td = t.to_double();
      const std::pair<Scalar, Scalar>* best = nullptr;
      double best_gap = 0.0;
      for (const auto& entry : table) {
        double gap = std::fabs(entry.first.to_double() - td);
        if (gap <= tol && (!best || gap < best_gap)) {
          best = &entry;
          best_gap = gap;
        }
      }
      return best ? best->second : impl->fallback;
    }
    case Gauge::Kind::Rule: {
      // t / (1 + t)
      Scalar one = Scalar::one(impl->mode);
      Scalar v = t / (one + t);
      require_codomain(v, "gauge rule output");
      return v;
    }
    case Gauge::Kind::BetaTransform: {
      Scalar inner = eval(impl->base, t);
      Scalar one = Scalar::one(impl->mode);
      Scalar two = one + one;
      Scalar v = (one + inner) / two;
      require_codomain(v, "beta transform output");
      return v;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown gauge kind");
}

const Scalar& Gauge::constant_value() const {
  if (impl_->kind != Kind::Constant)
    fail(ErrorCode::InvalidArgument, "constant_value applies to constant gauges");
  return impl_->constant;
}
const std::vector<std::pair<Scalar, Scalar>>& Gauge::entries() const {
  if (impl_->kind != Kind::Tabulated)
    fail(ErrorCode::InvalidArgument, "entries apply to tabulated gauges");
  return impl_->table;
}
const Scalar& Gauge::default_value() const {
  if (impl_->kind != Kind::Tabulated)
    fail(ErrorCode::InvalidArgument, "default_value applies to tabulated gauges");
  return impl_->fallback;
}
const std::string& Gauge::rule_name() const {
  if (impl_->kind != Kind::Rule)
    fail(ErrorCode::InvalidArgument, "rule_name applies to rule gauges");
  return impl_->rule;
}
const Gauge::RuleParams& Gauge::rule_params() const {
  if (impl_->kind != Kind::Rule)
    fail(ErrorCode::InvalidArgument, "rule_params applies to rule gauges");
  return impl_->params;
}

Gauge beta_of(const Gauge& g) {
  const auto& impl = *g.impl_;
  Scalar one = Scalar::one(impl.mode);
  Scalar two = one + one;
  switch (impl.kind) {
    case Gauge::Kind::Constant:
      return Gauge::constant((one + impl.constant) / two);
    case Gauge::Kind::Tabulated: {
      std::vector<std::pair<Scalar, Scalar>> entries;
      entries.reserve(impl.table.size());
      for (const auto& [key, value] : impl.table)
        entries.emplace_back(key, (one + value) / two);
      return Gauge::tabulated(std::move(entries), (one + impl.fallback) / two);
    }
    case Gauge::Kind::Rule:
    case Gauge::Kind::BetaTransform: {
      auto wrapped = std::make_shared<Gauge::Impl>();
      wrapped->kind = Gauge::Kind::BetaTransform;
      wrapped->mode = impl.mode;
      wrapped->base = g.impl_;
      return Gauge(std::move(wrapped));
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown gauge kind");
}

// --------------------------------------------------------------------------
// Checkers

GeraghtyReport check_geraghty_class(const Gauge& g,
                                    const std::vector<Scalar>& probes,
                                    const std::vector<Scalar>& eps_grid) {
  if (probes.empty()) fail(ErrorCode::EmptyProbeSet, "class-S check needs probes");
  if (eps_grid.empty())
    fail(ErrorCode::InvalidArgument, "class-S check needs an eps grid");
  Scalar one = Scalar::one(g.mode());
  for (const Scalar& e : eps_grid) {
    if (e.sign() <= 0 || Scalar::compare(e, one) != std::strong_ordering::less)
      fail(ErrorCode::InvalidArgument, "eps grid entries must lie in (0, 1)");
  }
  for (std::size_t i = 1; i < eps_grid.size(); ++i)
    if (Scalar::compare(eps_grid[i], eps_grid[i - 1]) != std::strong_ordering::less)
      fail(ErrorCode::InvalidArgument, "eps grid must be strictly decreasing");

  std::vector<Scalar> alphas;
  alphas.reserve(probes.size());
  for (const Scalar& t : probes) alphas.push_back(g.evaluate(t));

  GeraghtyReport report;
  report.rows.reserve(eps_grid.size());
  for (const Scalar& eps : eps_grid) {
    Scalar threshold = one - eps;
    std::optional<Scalar> s;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      if (!Scalar::leq(threshold, alphas[i])) continue;  // alpha(t) >= 1 - eps
      if (!s || Scalar::compare(probes[i], *s) == std::strong_ordering::greater)
        s = probes[i];
    }
    report.rows.push_back({eps, std::move(s)});
  }

  // The pass threshold carries slack 2 so that the beta transform of a
  // passing gauge still passes: beta(t) >= 1 - eps iff alpha(t) >= 1 - 2 eps.
  Scalar two = one + one;
  bool any_defined = false;
  bool all_ok = true;
  const GeraghtyReport::Row* last_defined = nullptr;
  for (const auto& row : report.rows) {
    if (!row.s) continue;
    any_defined = true;
    last_defined = &row;
    if (!Scalar::leq(*row.s, two * row.eps)) all_ok = false;
  }
  if (!any_defined || all_ok) {
    report.verdict = GeraghtyReport::Verdict::Pass;
  } else if (last_defined && !Scalar::leq(*last_defined->s, two * last_defined->eps)) {
    report.verdict = GeraghtyReport::Verdict::Fail;
  } else {
    report.verdict = GeraghtyReport::Verdict::Inconclusive;
  }
  return report;
}

MtReport check_mizoguchi_takahashi(const Gauge& g, const Scalar& t0,
                                   const std::vector<Scalar>& probes,
                                   const std::vector<Scalar>& delta_schedule) {
  if (t0.sign() < 0)
    fail(ErrorCode::NegativeArgument, "limsup base point must be >= 0");
  if (delta_schedule.empty())
    fail(ErrorCode::InvalidArgument, "limsup check needs a window schedule");
  for (const Scalar& d : delta_schedule)
    if (d.sign() <= 0)
      fail(ErrorCode::InvalidArgument, "window widths must be positive");
  for (std::size_t i = 1; i < delta_schedule.size(); ++i)
    if (Scalar::compare(delta_schedule[i], delta_schedule[i - 1]) !=
        std::strong_ordering::less)
      fail(ErrorCode::InvalidArgument, "window schedule must be strictly decreasing");

  bool any_right = false;
  for (const Scalar& t : probes)
    if (Scalar::compare(t, t0) == std::strong_ordering::greater) {
      any_right = true;
      break;
    }
  if (!any_right)
    fail(ErrorCode::NoProbesRightOfT0,
         "no probe lies strictly to the right of " + t0.str());

  MtReport report;
  report.rows.reserve(delta_schedule.size());
  const MtReport::Row* last_defined = nullptr;
  for (const Scalar& delta : delta_schedule) {
    Scalar hi = t0 + delta;
    std::optional<Scalar> estimate;
    for (const Scalar& t : probes) {
      if (Scalar::compare(t, t0) != std::strong_ordering::greater) continue;
      if (Scalar::compare(t, hi) == std::strong_ordering::greater) continue;
      Scalar a = g.evaluate(t);
      if (!estimate || Scalar::compare(a, *estimate) == std::strong_ordering::greater)
        estimate = std::move(a);
    }
    report.rows.push_back({delta, std::move(estimate)});
    if (report.rows.back().estimate) last_defined = &report.rows.back();
  }

  // At least the widest window is populated unless every right probe lies
  // beyond it; in that case the check is vacuous and passes.
  if (!last_defined) {
    report.limsup_estimate = Scalar::zero(g.mode());
    report.verdict = MtReport::Verdict::PassMt;
    return report;
  }
  report.limsup_estimate = *last_defined->estimate;

  // Failure signature: the gauge climbs as the probes approach t0 and the
  // terminal window's supremum sits at the innermost probe. Flat gauges
  // (constants) and gauges decaying toward t0 pass.
  std::vector<const Scalar*> right;
  for (const Scalar& t : probes)
    if (Scalar::compare(t, t0) == std::strong_ordering::greater) right.push_back(&t);
  std::sort(right.begin(), right.end(), [](const Scalar* a, const Scalar* b) {
    return Scalar::compare(*a, *b) == std::strong_ordering::less;
  });
  right.erase(std::unique(right.begin(), right.end(),
                          [](const Scalar* a, const Scalar* b) { return *a == *b; }),
              right.end());
  report.verdict = MtReport::Verdict::PassMt;
  if (right.size() >= 2) {
    Scalar a1 = g.evaluate(*right[0]);
    Scalar a2 = g.evaluate(*right[1]);
    if (Scalar::compare(a1, a2) == std::strong_ordering::greater &&
        Scalar::compare(report.limsup_estimate, a1) == std::strong_ordering::equal)
      report.verdict = MtReport::Verdict::FailMt;
  }
  return report;
}

NadlerEstimate estimate_nadler_constant(
    const SetValuedMap& map, const Metric& metric,
    const std::vector<std::pair<Point, Point>>& pairs) {
  if (pairs.empty())
    fail(ErrorCode::InvalidArgument, "contraction estimate needs at least one pair");
  std::optional<NadlerEstimate> best;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    Scalar d = metric.distance(x, y);
    if (d.is_zero())
      fail(ErrorCode::ZeroDistancePair,
           "pair (" + x.describe() + ", " + y.describe() + ") has zero distance");
    Scalar h = hausdorff(metric, map.image(x), map.image(y));
    Scalar ratio = h / d;
    if (!best ||
        Scalar::compare(ratio, best->sup_ratio) == std::strong_ordering::greater) {
      best = NadlerEstimate{std::move(ratio), i, {x.describe(), y.describe()}};
    }
  }
  return *best;
}

std::vector<Scalar> default_eps_grid(NumericMode mode) {
  std::vector<Scalar> grid;
  Scalar v = Scalar::one(mode);
  Scalar two = Scalar::one(mode) + Scalar::one(mode);
  for (int k = 1; k <= 10; ++k) {
    v = v / two;
    grid.push_back(v);
  }
  return grid;
}

std::vector<Scalar> default_delta_schedule(NumericMode mode) {
  std::vector<Scalar> schedule;
  Scalar v = Scalar::one(mode);
  Scalar two = Scalar::one(mode) + Scalar::one(mode);
  schedule.push_back(v);
  for (int k = 1; k <= 20; ++k) {
    v = v / two;
    schedule.push_back(v);
  }
  return schedule;
}

}  // namespace mvfp
