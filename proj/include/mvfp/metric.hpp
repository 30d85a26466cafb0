#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvfp/finite_set.hpp"
#include "mvfp/point.hpp"
#include "mvfp/scalar.hpp"

namespace mvfp {

struct TableViolation {
  enum class Kind {
    NotSquare,
    NegativeEntry,
    NonzeroDiagonal,
    Asymmetric,
    ZeroOffDiagonal,
    Triangle,
  };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;
  std::string message;
};

// Checks symmetry, zero diagonal, off-diagonal positivity and the triangle
// inequality over all index triples. Returns the first violation in index
// order, or nullopt when the table is a genuine metric.
std::optional<TableViolation> validate_metric_table(
    const std::vector<std::vector<Scalar>>& rows);

class Metric {
 public:
  enum class Kind { Euclidean, SupNorm, ExplicitTable };

  static Metric euclidean();
  static Metric sup_norm();
  // Validates eagerly; throws ValidationError describing the first
  // violating entry or triple.
  static Metric table(std::vector<std::string> labels,
                      std::vector<std::vector<Scalar>> rows);

  Kind kind() const noexcept;

  Scalar distance(const Point& p, const Point& q) const;

  // min over the elements of A of distance(x, .). The nearest variant also
  // returns the attaining element (first in canonical order on ties).
  Scalar point_to_set(const Point& x, const FiniteSet& A) const;
  std::pair<const Point*, Scalar> nearest(const Point& x, const FiniteSet& A) const;

  const std::vector<std::string>& labels() const;            // table only
  const std::vector<std::vector<Scalar>>& table_rows() const;  // table only

 private:
  struct Impl;
  explicit Metric(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace mvfp
