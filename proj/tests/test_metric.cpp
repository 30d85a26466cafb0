#include "mvfp/metric.hpp"

#include <random>
#include <vector>

#include "doctest.h"
#include "mvfp/errors.hpp"

using namespace mvfp;

namespace {

Scalar q(long long num, long long den = 1) { return Scalar::rational(num, den); }

// tau_1 = 1/2, tau_{n+1} = (1 - tau_n) tau_n, built with plain Scalar ops.
std::vector<Scalar> recurrence(std::size_t n) {
  std::vector<Scalar> taus{q(1, 2)};
  Scalar one = Scalar::one(NumericMode::Rational);
  while (taus.size() < n) taus.push_back((one - taus.back()) * taus.back());
  return taus;
}

Point basis_point(std::size_t n, const Scalar& value) {
  return Point::sparse("x" + std::to_string(n), {{n - 1, value}});
}

Point dense2(double x, double y) {
  return Point::dense("", {Scalar::real(x), Scalar::real(y)});
}

}  // namespace

TEST_CASE("sup distance on one-hot sparse points picks the larger coefficient") {
  auto taus = recurrence(5);
  Metric sup = Metric::sup_norm();
  Point x1 = basis_point(1, taus[0]);
  Point x2 = basis_point(2, taus[1]);
  CHECK(sup.distance(x1, x1) == q(0));
  CHECK(sup.distance(x2, x1) == q(1, 2));
  CHECK(sup.distance(x1, x2) == sup.distance(x2, x1));
  // and in general d(x_m, x_n) equals the smaller-index coefficient
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::size_t n = 1; n < m; ++n)
      CHECK(sup.distance(basis_point(m, taus[m - 1]), basis_point(n, taus[n - 1])) ==
            taus[n - 1]);
}

TEST_CASE("euclidean distance on a 3-4-5 triangle is exact") {
  Metric euc = Metric::euclidean();
  Point a = Point::dense("a", {q(0), q(0)});
  Point b = Point::dense("b", {q(3), q(4)});
  CHECK(euc.distance(a, b) == q(5));
  CHECK(euc.distance(b, a) == q(5));
  CHECK(euc.distance(a, a) == q(0));

  Metric euc_f = Metric::euclidean();
  CHECK(euc_f.distance(dense2(0, 0), dense2(3, 4)).to_double() ==
        doctest::Approx(5.0));
}

TEST_CASE("point-to-set distance attains the minimum") {
  auto taus = recurrence(5);
  Metric sup = Metric::sup_norm();
  std::vector<Point> tail;
  for (std::size_t n = 2; n <= 5; ++n) tail.push_back(basis_point(n, taus[n - 1]));
  FiniteSet set = FiniteSet::of_points(tail);

  // membership short-circuits to zero
  CHECK(sup.point_to_set(tail.front(), set) == q(0));
  // all candidates tie at 1/2 from x_1
  CHECK(sup.point_to_set(basis_point(1, taus[0]), set) == q(1, 2));
  auto [arg, dist] = sup.nearest(basis_point(1, taus[0]), set);
  CHECK(arg->id() == "x2");  // canonical order breaks the tie
  CHECK(dist == q(1, 2));

  Metric euc = Metric::euclidean();
  FiniteSet two = FiniteSet::of_points(
      {Point::dense("p", {q(1), q(0)}), Point::dense("r", {q(0), q(2)})});
  CHECK(euc.point_to_set(Point::dense("o", {q(0), q(0)}), two) == q(1));
}

TEST_CASE("property: union of sets takes the smaller point-to-set distance") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long long> c(-8, 8);
  Metric sup = Metric::sup_norm();
  for (int round = 0; round < 50; ++round) {
    auto mk = [&](std::string id) {
      return Point::dense(std::move(id), {q(c(rng)), q(c(rng), 3)});
    };
    std::vector<Point> a_pts, b_pts, both;
    for (int i = 0; i < 4; ++i) {
      a_pts.push_back(mk("a" + std::to_string(i)));
      b_pts.push_back(mk("b" + std::to_string(i)));
    }
    both = a_pts;
    both.insert(both.end(), b_pts.begin(), b_pts.end());
    Point x = mk("x");
    FiniteSet A = FiniteSet::of_points(a_pts);
    FiniteSet B = FiniteSet::of_points(b_pts);
    FiniteSet U = FiniteSet::of_points(both);
    CHECK(sup.point_to_set(x, U) ==
          scalar_min(sup.point_to_set(x, A), sup.point_to_set(x, B)));
  }
}

TEST_CASE("property: sup distance on sparse points equals their dense padding") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long long> c(-9, 9);
  std::uniform_int_distribution<std::size_t> idx(0, 7);
  Metric sup = Metric::sup_norm();
  for (int round = 0; round < 100; ++round) {
    std::vector<std::pair<std::size_t, Scalar>> ea, eb;
    for (int i = 0; i < 3; ++i) {
      ea.emplace_back(idx(rng), q(c(rng), 4));
      eb.emplace_back(idx(rng), q(c(rng), 4));
    }
    auto dedupe = [](std::vector<std::pair<std::size_t, Scalar>> v) {
      std::vector<std::pair<std::size_t, Scalar>> out;
      for (auto& e : v) {
        bool seen = false;
        for (auto& o : out) seen |= o.first == e.first;
        if (!seen) out.push_back(e);
      }
      return out;
    };
    Point a = Point::sparse("a", dedupe(ea), NumericMode::Rational);
    Point b = Point::sparse("b", dedupe(eb), NumericMode::Rational);
    Scalar sparse_d = sup.distance(a, b);
    CHECK(sparse_d == sup.distance(a.to_dense(8), b.to_dense(8)));
    CHECK(sparse_d == sup.distance(b, a));
  }
}

TEST_CASE("property: metric axioms for euclidean and sup on random points") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> c(-5.0, 5.0);
  Metric euc = Metric::euclidean();
  Metric sup = Metric::sup_norm();
  for (int round = 0; round < 200; ++round) {
    Point p = dense2(c(rng), c(rng));
    Point r = dense2(c(rng), c(rng));
    Point s = dense2(c(rng), c(rng));
    for (const Metric& m : {euc, sup}) {
      Scalar pr = m.distance(p, r);
      CHECK(pr.to_double() >= 0.0);
      CHECK(pr == m.distance(r, p));  // same value, bit for bit
      CHECK(Scalar::leq(m.distance(p, s), pr + m.distance(r, s)));
    }
  }
  // exact rational triangle inequality under the sup metric
  std::uniform_int_distribution<long long> ci(-6, 6);
  for (int round = 0; round < 100; ++round) {
    auto mk = [&] { return Point::dense("", {q(ci(rng), 2), q(ci(rng), 3)}); };
    Point p = mk(), r = mk(), s = mk();
    CHECK(Scalar::leq(sup.distance(p, s), sup.distance(p, r) + sup.distance(r, s)));
  }
}

TEST_CASE("explicit tables are validated eagerly") {
  CHECK(!validate_metric_table({{q(0)}}).has_value());

  // the recurrence table d(i, j) = tau_min(i, j) is a metric
  auto taus = recurrence(5);
  std::vector<std::vector<Scalar>> rows(5, std::vector<Scalar>(5, q(0)));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) rows[i][j] = taus[std::min(i, j)];
  CHECK(!validate_metric_table(rows).has_value());
  CHECK(Metric::table({"x1", "x2", "x3", "x4", "x5"}, rows).kind() ==
        Metric::Kind::ExplicitTable);

  // triangle violation is reported with its first triple
  std::vector<std::vector<Scalar>> bad{
      {q(0), q(1), q(3)}, {q(1), q(0), q(1)}, {q(3), q(1), q(0)}};
  auto v = validate_metric_table(bad);
  REQUIRE(v.has_value());
  CHECK(v->kind == TableViolation::Kind::Triangle);
  CHECK(v->i == 0);
  CHECK(v->j == 1);
  CHECK(v->k == 2);
  CHECK_THROWS_AS(Metric::table({"a", "b", "c"}, bad), Error);

  std::vector<std::vector<Scalar>> asym{{q(0), q(1)}, {q(2), q(0)}};
  auto va = validate_metric_table(asym);
  REQUIRE(va.has_value());
  CHECK(va->kind == TableViolation::Kind::Asymmetric);

  std::vector<std::vector<Scalar>> diag{{q(1)}};
  CHECK(validate_metric_table(diag)->kind == TableViolation::Kind::NonzeroDiagonal);

  std::vector<std::vector<Scalar>> zero_off{{q(0), q(0)}, {q(0), q(0)}};
  CHECK(validate_metric_table(zero_off)->kind ==
        TableViolation::Kind::ZeroOffDiagonal);

  std::vector<std::vector<Scalar>> neg{{q(0), q(-1)}, {q(-1), q(0)}};
  CHECK(validate_metric_table(neg)->kind == TableViolation::Kind::NegativeEntry);

  std::vector<std::vector<Scalar>> ragged{{q(0), q(1)}, {q(1)}};
  CHECK(validate_metric_table(ragged)->kind == TableViolation::Kind::NotSquare);
}

TEST_CASE("table metric resolves labels and rejects strangers") {
  std::vector<std::vector<Scalar>> rows{{q(0), q(1)}, {q(1), q(0)}};
  Metric m = Metric::table({"a", "b"}, rows);
  CHECK(m.distance(Point::labeled("a"), Point::labeled("b")) == q(1));
  CHECK_THROWS_AS(m.distance(Point::labeled("a"), Point::labeled("zz")), Error);
  try {
    m.distance(Point::labeled("zz"), Point::labeled("a"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompatiblePoints);
  }
}

TEST_CASE("sparse points drop explicit zeros and repeated indices are rejected") {
  Point p = Point::sparse("p", {{0, q(1, 2)}, {3, q(0)}, {7, q(1, 4)}});
  CHECK(p.support().size() == 2);
  CHECK(p.support()[0].first == 0);
  CHECK(p.support()[1].first == 7);
  CHECK(p == Point::sparse("renamed", {{7, q(1, 4)}, {0, q(1, 2)}}));
  CHECK_THROWS_AS(Point::sparse("bad", {{1, q(1)}, {1, q(2)}}), Error);
  CHECK_THROWS_AS(Point::sparse("empty", {}), Error);
  CHECK(Point::sparse("zero", {}, NumericMode::Rational).support().empty());
}

TEST_CASE("incompatible points are rejected with the right code") {
  Metric euc = Metric::euclidean();
  Metric sup = Metric::sup_norm();
  Point d2 = Point::dense("p", {q(0), q(0)});
  Point d3 = Point::dense("r", {q(0), q(0), q(0)});
  Point sp = Point::sparse("s", {{0, q(1)}});
  Point fl = dense2(0, 0);

  CHECK_THROWS_AS(euc.distance(d2, d3), Error);
  CHECK_THROWS_AS(euc.distance(d2, sp), Error);
  CHECK_THROWS_AS(sup.distance(d2, sp), Error);
  try {
    sup.distance(d2, fl);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompatiblePoints);
  }
}
