#include "mvfp/metric.hpp"

#include <unordered_map>

#include "mvfp/errors.hpp"

namespace mvfp {

namespace {

std::string table_msg(const char* what, std::size_t i, std::size_t j) {
  return std::string(what) + " at (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

std::optional<TableViolation> validate_metric_table(
    const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i)
    if (rows[i].size() != n)
      return TableViolation{TableViolation::Kind::NotSquare, i, rows[i].size(), 0,
                            "row " + std::to_string(i) + " has " +
                                std::to_string(rows[i].size()) + " entries, expected " +
                                std::to_string(n)};

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& d = rows[i][j];
      if (d.sign() < 0)
        return TableViolation{TableViolation::Kind::NegativeEntry, i, j, 0,
                              table_msg("negative distance", i, j)};
      if (i == j && !d.is_zero())
        return TableViolation{TableViolation::Kind::NonzeroDiagonal, i, j, 0,
                              table_msg("nonzero diagonal", i, j)};
      if (i != j && d.is_zero())
        return TableViolation{TableViolation::Kind::ZeroOffDiagonal, i, j, 0,
                              table_msg("zero distance between distinct points", i, j)};
      if (j < i && !Scalar::approx_eq(rows[i][j], rows[j][i]))
        return TableViolation{TableViolation::Kind::Asymmetric, i, j, 0,
                              table_msg("asymmetric entry", i, j)};
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (!Scalar::leq(rows[i][k], rows[i][j] + rows[j][k]))
          return TableViolation{TableViolation::Kind::Triangle, i, j, k,
                                "triangle inequality fails for (" + std::to_string(i) +
                                    "," + std::to_string(j) + "," + std::to_string(k) +
                                    ")"};
      }
    }
  return std::nullopt;
}

struct Metric::Impl {
  Kind kind = Kind::Euclidean;
  std::vector<std::string> labels;
  std::vector<std::vector<Scalar>> rows;
  std::unordered_map<std::string, std::size_t> index;
};

Metric Metric::euclidean() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Euclidean;
  return Metric(std::move(impl));
}

Metric Metric::sup_norm() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::SupNorm;
  return Metric(std::move(impl));
}

Metric Metric::table(std::vector<std::string> labels,
                     std::vector<std::vector<Scalar>> rows) {
  if (labels.empty()) fail(ErrorCode::ValidationError, "metric table needs labels");
  if (labels.size() != rows.size())
    fail(ErrorCode::ValidationError, "metric table size does not match label count");
  NumericMode mode = NumericMode::Rational;
  bool saw = false;
  for (const auto& row : rows)
    for (const Scalar& s : row) {
      if (!saw) {
        mode = s.mode();
        saw = true;
      } else if (s.mode() != mode) {
        fail(ErrorCode::MixedMode, "metric table mixes numeric modes");
      }
    }
  if (auto v = validate_metric_table(rows))
    fail(ErrorCode::ValidationError, "invalid metric table: " + v->message);

  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::ExplicitTable;
  impl->labels = std::move(labels);
  impl->rows = std::move(rows);
  for (std::size_t i = 0; i < impl->labels.size(); ++i) {
    if (impl->labels[i].empty())
      fail(ErrorCode::ValidationError, "metric table labels must be nonempty");
    if (!impl->index.emplace(impl->labels[i], i).second)
      fail(ErrorCode::ValidationError,
           "duplicate label '" + impl->labels[i] + "' in metric table");
  }
  return Metric(std::move(impl));
}

Metric::Kind Metric::kind() const noexcept { return impl_->kind; }

const std::vector<std::string>& Metric::labels() const {
  if (impl_->kind != Kind::ExplicitTable)
    fail(ErrorCode::InvalidArgument, "labels apply to table metrics only");
  return impl_->labels;
}

const std::vector<std::vector<Scalar>>& Metric::table_rows() const {
  if (impl_->kind != Kind::ExplicitTable)
    fail(ErrorCode::InvalidArgument, "table rows apply to table metrics only");
  return impl_->rows;
}

Scalar Metric::distance(const Point& p, const Point& q) const {
  switch (impl_->kind) {
    case Kind::ExplicitTable: {
      auto ip = impl_->index.find(p.id());
      auto iq = impl_->index.find(q.id());
      if (ip == impl_->index.end() || iq == impl_->index.end())
        fail(ErrorCode::IncompatiblePoints,
             "point '" + (ip == impl_->index.end() ? p.id() : q.id()) +
                 "' is not a label of the metric table");
      return impl_->rows[ip->second][iq->second];
    }
    case Kind::Euclidean: {
      if (p.repr() != Point::Repr::Dense || q.repr() != Point::Repr::Dense)
        fail(ErrorCode::IncompatiblePoints,
             "euclidean metric needs dense points");
      if (p.mode() != q.mode())
        fail(ErrorCode::IncompatiblePoints, "points mix numeric modes");
      if (p.dimension() != q.dimension())
        fail(ErrorCode::IncompatiblePoints,
             "dimension mismatch: " + std::to_string(p.dimension()) + " vs " +
                 std::to_string(q.dimension()));
      Scalar acc = Scalar::zero(p.mode());
      for (std::size_t i = 0; i < p.dimension(); ++i) {
        Scalar d = p.coords()[i] - q.coords()[i];
        acc = acc + d * d;
      }
      return acc.sqrt();
    }
    case Kind::SupNorm: {
      if (p.repr() == Point::Repr::Label || q.repr() == Point::Repr::Label)
        fail(ErrorCode::IncompatiblePoints, "sup metric needs coordinate points");
      if (p.repr() != q.repr())
        fail(ErrorCode::IncompatiblePoints,
             "sup metric cannot mix dense and sparse points");
      if (p.mode() != q.mode())
        fail(ErrorCode::IncompatiblePoints, "points mix numeric modes");
      if (p.repr() == Point::Repr::Dense) {
        if (p.dimension() != q.dimension())
          fail(ErrorCode::IncompatiblePoints,
               "dimension mismatch: " + std::to_string(p.dimension()) + " vs " +
                   std::to_string(q.dimension()));
        Scalar best = Scalar::zero(p.mode());
        for (std::size_t i = 0; i < p.dimension(); ++i) {
          Scalar d = (p.coords()[i] - q.coords()[i]).abs();
          best = scalar_max(best, d);
        }
        return best;
      }
      // Sparse: walk the union of supports.
      const auto& a = p.support();
      const auto& b = q.support();
      Scalar best = Scalar::zero(p.mode());
      std::size_t i = 0, j = 0;
      while (i < a.size() || j < b.size()) {
        Scalar d = Scalar::zero(p.mode());
        if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
          d = a[i].second.abs();
          ++i;
        } else if (i >= a.size() || b[j].first < a[i].first) {
          d = b[j].second.abs();
          ++j;
        } else {
          d = (a[i].second - b[j].second).abs();
          ++i;
          ++j;
        }
        best = scalar_max(best, d);
      }
      return best;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown metric kind");
}

std::pair<const Point*, Scalar> Metric::nearest(const Point& x, const FiniteSet& A) const {
  const auto& pts = A.points();
  if (pts.empty()) fail(ErrorCode::EmptySet, "point-to-set distance over an empty set");
  const Point* arg = &pts.front();
  Scalar best = distance(x, pts.front());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Scalar d = distance(x, pts[i]);
    if (Scalar::compare(d, best) == std::strong_ordering::less) {
      best = d;
      arg = &pts[i];
    }
  }
  return {arg, best};
}

Scalar Metric::point_to_set(const Point& x, const FiniteSet& A) const {
  return nearest(x, A).second;
}

}  // namespace mvfp
