#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <vector>

#include "mvfp/point.hpp"

namespace mvfp {

// A canonical (sorted, deduplicated, nonempty) finite set. Level 1 holds
// points; level k >= 2 holds sets of level k-1, up to the configured
// hyperspace cap. Canonical form makes equality structural.
class FiniteSet {
 public:
  static FiniteSet of_points(std::vector<Point> elements);
  static FiniteSet of_sets(std::vector<FiniteSet> elements);

  int level() const noexcept;
  std::size_t size() const noexcept;
  const std::vector<Point>& points() const;  // level 1
  const std::vector<FiniteSet>& sets() const;  // level >= 2

  static std::strong_ordering compare(const FiniteSet& a, const FiniteSet& b);
  bool operator==(const FiniteSet& other) const {
    return compare(*this, other) == std::strong_ordering::equal;
  }
  bool operator!=(const FiniteSet& other) const { return !(*this == other); }

  bool contains(const Point& p) const;  // level 1

 private:
  struct Impl;
  explicit FiniteSet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace mvfp
