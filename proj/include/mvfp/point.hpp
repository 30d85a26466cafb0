#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvfp/scalar.hpp"

namespace mvfp {

// An element of a metric space: a dense coordinate vector, a finitely
// supported sparse vector (no explicit zeros), or a bare label for use
// with explicit distance tables. Identity is the canonical coordinate
// representation; ids are stable display labels.
class Point {
 public:
  enum class Repr { Label, Dense, Sparse };

  static Point dense(std::string id, std::vector<Scalar> coords);
  static Point sparse(std::string id,
                      std::vector<std::pair<std::size_t, Scalar>> entries,
                      std::optional<NumericMode> mode_if_empty = std::nullopt);
  static Point labeled(std::string id);

  Repr repr() const noexcept { return repr_; }
  const std::string& id() const noexcept { return id_; }
  bool has_coords() const noexcept { return repr_ != Repr::Label; }
  NumericMode mode() const;

  std::size_t dimension() const;
  const std::vector<Scalar>& coords() const;
  const std::vector<std::pair<std::size_t, Scalar>>& support() const;

  // Sparse point as an explicitly padded dense vector.
  Point to_dense(std::size_t dimension) const;

  // Canonical total order: labels by id; dense by dimension then
  // coordinate-lexicographic; sparse lexicographic over (index, value)
  // support entries, so lower first-support-index sorts first.
  static std::strong_ordering compare(const Point& a, const Point& b);
  bool operator==(const Point& other) const {
    return compare(*this, other) == std::strong_ordering::equal;
  }
  bool operator!=(const Point& other) const { return !(*this == other); }

  std::string describe() const;  // id when present, else coordinates

 private:
  Point() = default;

  Repr repr_ = Repr::Label;
  std::string id_;
  std::optional<NumericMode> mode_;
  std::vector<Scalar> coords_;
  std::vector<std::pair<std::size_t, Scalar>> support_;
};

}  // namespace mvfp
