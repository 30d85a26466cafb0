#include "mvfp/gauge.hpp"

#include <random>
#include <vector>

#include "doctest.h"
#include "mvfp/errors.hpp"

using namespace mvfp;

namespace {

Scalar q(long long num, long long den = 1) { return Scalar::rational(num, den); }

std::vector<Scalar> recurrence(std::size_t n) {
  std::vector<Scalar> taus{q(1, 2)};
  Scalar one = Scalar::one(NumericMode::Rational);
  while (taus.size() < n) taus.push_back((one - taus.back()) * taus.back());
  return taus;
}

// The built-in instance's gauge shape: alpha(tau_n) = 1 - tau_n, default 0.
Gauge recurrence_gauge(std::size_t n) {
  auto taus = recurrence(n);
  Scalar one = Scalar::one(NumericMode::Rational);
  std::vector<std::pair<Scalar, Scalar>> entries;
  for (const Scalar& t : taus) entries.emplace_back(t, one - t);
  return Gauge::tabulated(std::move(entries), q(0));
}

std::vector<Scalar> int_probes(int lo, int hi) {
  std::vector<Scalar> out;
  for (int i = lo; i <= hi; ++i) out.push_back(q(i));
  return out;
}

}  // namespace

TEST_CASE("constant gauges evaluate everywhere and respect the codomain") {
  Gauge g = Gauge::constant(q(1, 2));
  CHECK(g.evaluate(q(173, 10)) == q(1, 2));
  CHECK(g.evaluate(q(0)) == q(1, 2));
  CHECK_THROWS_AS(Gauge::constant(q(1)), Error);
  CHECK_THROWS_AS(Gauge::constant(q(-1, 10)), Error);
  try {
    g.evaluate(q(-1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeArgument);
  }
}

TEST_CASE("tabulated gauges look up keys exactly and fall back to the default") {
  Gauge g = recurrence_gauge(6);
  auto taus = recurrence(6);
  CHECK(g.evaluate(taus[1]) == q(3, 4));   // 1 - 1/4
  CHECK(g.evaluate(taus[0]) == q(1, 2));   // 1 - 1/2
  CHECK(g.evaluate(q(3, 10)) == q(0));     // off the key set
  CHECK(g.evaluate(q(39, 256)) == Scalar::one(NumericMode::Rational) - q(39, 256));

  CHECK_THROWS_AS(Gauge::tabulated({{q(1, 2), q(1)}}, q(0)), Error);
  CHECK_THROWS_AS(Gauge::tabulated({{q(-1, 2), q(0)}}, q(0)), Error);
  CHECK_THROWS_AS(Gauge::tabulated({{q(1, 2), q(0)}, {q(1, 2), q(1, 4)}}, q(0)), Error);
}

TEST_CASE("float tabulated keys match within the global tolerance") {
  Gauge g = Gauge::tabulated({{Scalar::real(0.25), Scalar::real(0.5)}},
                             Scalar::real(0.0));
  CHECK(g.evaluate(Scalar::real(0.25)).to_double() == 0.5);
  CHECK(g.evaluate(Scalar::real(0.25 + 5e-13)).to_double() == 0.5);
  CHECK(g.evaluate(Scalar::real(0.25 + 1e-9)).to_double() == 0.0);
}

TEST_CASE("the ratio rule stays inside the codomain") {
  Gauge g = Gauge::rule("t_over_one_plus_t", {}, NumericMode::Rational);
  CHECK(g.evaluate(q(0)) == q(0));
  CHECK(g.evaluate(q(1)) == q(1, 2));
  CHECK(g.evaluate(q(100)) == q(100, 101));
  CHECK_THROWS_AS(Gauge::rule("nope", {}, NumericMode::Rational), Error);
}

TEST_CASE("the beta transform leaves slack below one") {
  CHECK(beta_of(Gauge::constant(q(0))).evaluate(q(7)) == q(1, 2));
  Gauge b = beta_of(Gauge::constant(q(1, 2)));
  CHECK(b.kind() == Gauge::Kind::Constant);
  CHECK(b.constant_value() == q(3, 4));

  Gauge g = recurrence_gauge(8);
  Gauge bg = beta_of(g);
  CHECK(bg.kind() == Gauge::Kind::Tabulated);
  CHECK(bg.evaluate(q(1, 2)) == q(3, 4));  // (1 + 1/2) / 2

  // alpha(t) < beta(t) < 1 on every probe
  Scalar one = Scalar::one(NumericMode::Rational);
  auto probes = recurrence(8);
  probes.push_back(q(3, 10));
  probes.push_back(q(0));
  for (const Scalar& t : probes) {
    Scalar a = g.evaluate(t);
    Scalar bv = bg.evaluate(t);
    CHECK(a < bv);
    CHECK(bv < one);
  }

  Gauge rule = Gauge::rule("t_over_one_plus_t", {}, NumericMode::Rational);
  Gauge brule = beta_of(rule);
  CHECK(brule.kind() == Gauge::Kind::BetaTransform);
  CHECK(brule.evaluate(q(1)) == q(3, 4));
  CHECK(beta_of(brule).evaluate(q(1)) == q(7, 8));
}

TEST_CASE("class-S check: vacuous pass for constants under a low grid") {
  // every grid entry keeps 1 - eps above r, so no probe qualifies
  Gauge g = Gauge::constant(q(1, 10));
  std::vector<Scalar> grid{q(1, 4), q(1, 8), q(1, 16)};
  GeraghtyReport report = check_geraghty_class(g, int_probes(1, 50), grid);
  CHECK(report.verdict == GeraghtyReport::Verdict::Pass);
  for (const auto& row : report.rows) CHECK(!row.s.has_value());
}

TEST_CASE("class-S check: the recurrence gauge passes with s(eps) <= eps") {
  Gauge g = recurrence_gauge(40);
  GeraghtyReport report = check_geraghty_class(
      g, recurrence(40), default_eps_grid(NumericMode::Rational));
  CHECK(report.verdict == GeraghtyReport::Verdict::Pass);
  bool any = false;
  for (const auto& row : report.rows) {
    if (!row.s) continue;
    any = true;
    CHECK(Scalar::leq(*row.s, row.eps));
  }
  CHECK(any);
  // s(eps) is nonincreasing as eps decreases
  const Scalar* prev = nullptr;
  for (const auto& row : report.rows) {
    if (!row.s) continue;
    if (prev) CHECK(Scalar::leq(*row.s, *prev));
    prev = &*row.s;
  }
}

TEST_CASE("class-S check: t/(1+t) fails on a growing probe range") {
  Gauge g = Gauge::rule("t_over_one_plus_t", {}, NumericMode::Rational);
  GeraghtyReport report = check_geraghty_class(
      g, int_probes(1, 100), default_eps_grid(NumericMode::Rational));
  CHECK(report.verdict == GeraghtyReport::Verdict::Fail);
}

TEST_CASE("class-S check: a mid-grid wobble is inconclusive") {
  // alpha >= 1/2 only at a large probe, but the small-eps behaviour is fine
  Gauge g = Gauge::tabulated({{q(10), q(6, 10)}, {q(1, 2048), q(9999, 10000)}}, q(0));
  GeraghtyReport report = check_geraghty_class(
      g, {q(10), q(1, 2048)}, default_eps_grid(NumericMode::Rational));
  CHECK(report.verdict == GeraghtyReport::Verdict::Inconclusive);
}

TEST_CASE("class-S check rejects bad inputs") {
  Gauge g = Gauge::constant(q(1, 2));
  CHECK_THROWS_AS(check_geraghty_class(g, {}, default_eps_grid(NumericMode::Rational)),
                  Error);
  CHECK_THROWS_AS(check_geraghty_class(g, int_probes(1, 3), {q(1, 4), q(1, 2)}), Error);
  CHECK_THROWS_AS(check_geraghty_class(g, int_probes(1, 3), {q(2)}), Error);
}

TEST_CASE("limsup check: constants pass at any base point") {
  Gauge g = Gauge::constant(q(99, 100));
  MtReport report = check_mizoguchi_takahashi(
      g, q(0), recurrence(30), default_delta_schedule(NumericMode::Rational));
  CHECK(report.verdict == MtReport::Verdict::PassMt);
  CHECK(report.limsup_estimate == q(99, 100));
}

TEST_CASE("limsup check: the recurrence gauge fails at zero") {
  Gauge g = recurrence_gauge(40);
  auto taus = recurrence(40);
  MtReport report = check_mizoguchi_takahashi(
      g, q(0), taus, default_delta_schedule(NumericMode::Rational));
  CHECK(report.verdict == MtReport::Verdict::FailMt);
  CHECK(report.limsup_estimate == Scalar::one(NumericMode::Rational) - taus.back());
}

TEST_CASE("limsup check: t/(1+t) passes to the right of one") {
  Gauge g = Gauge::rule("t_over_one_plus_t", {}, NumericMode::Rational);
  std::vector<Scalar> probes;
  Scalar step = q(1, 2);
  Scalar two = q(2);
  for (int j = 1; j <= 20; ++j) {
    probes.push_back(Scalar::one(NumericMode::Rational) + step);
    step = step / two;
  }
  MtReport report = check_mizoguchi_takahashi(
      g, q(1), probes, default_delta_schedule(NumericMode::Rational));
  CHECK(report.verdict == MtReport::Verdict::PassMt);
  CHECK(report.limsup_estimate > q(1, 2));
  CHECK(report.limsup_estimate < q(6, 10));

  try {
    check_mizoguchi_takahashi(g, q(1000), probes,
                              default_delta_schedule(NumericMode::Rational));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoProbesRightOfT0);
  }
}

TEST_CASE("contraction-constant estimate: constant maps and the halving rule") {
  Metric euc = Metric::euclidean();

  std::vector<Point> pts{Point::dense("a", {q(0)}), Point::dense("b", {q(1)}),
                         Point::dense("c", {q(3)})};
  FiniteSet target = FiniteSet::of_points({pts[0]});
  SetValuedMap constant_map = SetValuedMap::table(
      {{pts[0], target}, {pts[1], target}, {pts[2], target}});
  std::vector<std::pair<Point, Point>> pairs{{pts[0], pts[1]}, {pts[1], pts[2]},
                                             {pts[0], pts[2]}};
  NadlerEstimate est = estimate_nadler_constant(constant_map, euc, pairs);
  CHECK(est.sup_ratio == q(0));

  SetValuedMap halve = SetValuedMap::rule("scale", {});
  NadlerEstimate est2 = estimate_nadler_constant(halve, euc, pairs);
  CHECK(est2.sup_ratio == q(1, 2));

  // adding pairs never lowers the estimate
  std::vector<std::pair<Point, Point>> fewer{pairs.front()};
  NadlerEstimate est3 = estimate_nadler_constant(halve, euc, fewer);
  CHECK(Scalar::leq(est3.sup_ratio, est2.sup_ratio));

  std::vector<std::pair<Point, Point>> degenerate{{pts[0], pts[0]}};
  try {
    estimate_nadler_constant(halve, euc, degenerate);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroDistancePair);
  }
}

TEST_CASE("class-S pass survives the beta transform") {
  Gauge g = recurrence_gauge(40);
  GeraghtyReport before = check_geraghty_class(
      g, recurrence(40), default_eps_grid(NumericMode::Rational));
  GeraghtyReport after = check_geraghty_class(
      beta_of(g), recurrence(40), default_eps_grid(NumericMode::Rational));
  CHECK(before.verdict == GeraghtyReport::Verdict::Pass);
  CHECK(after.verdict == GeraghtyReport::Verdict::Pass);
}
