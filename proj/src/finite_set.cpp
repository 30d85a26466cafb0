#include "mvfp/finite_set.hpp"

#include <algorithm>

#include "mvfp/config.hpp"
#include "mvfp/errors.hpp"

namespace mvfp {

struct FiniteSet::Impl {
  int level = 1;
  std::vector<Point> points;
  std::vector<FiniteSet> sets;
};

FiniteSet FiniteSet::of_points(std::vector<Point> elements) {
  if (elements.empty()) fail(ErrorCode::EmptySet, "finite set must be nonempty");
  std::sort(elements.begin(), elements.end(), [](const Point& a, const Point& b) {
    return Point::compare(a, b) == std::strong_ordering::less;
  });
  elements.erase(std::unique(elements.begin(), elements.end(),
                             [](const Point& a, const Point& b) { return a == b; }),
                 elements.end());
  auto impl = std::make_shared<Impl>();
  impl->level = 1;
  impl->points = std::move(elements);
  return FiniteSet(std::move(impl));
}

FiniteSet FiniteSet::of_sets(std::vector<FiniteSet> elements) {
  if (elements.empty()) fail(ErrorCode::EmptySet, "finite set must be nonempty");
  int child_level = elements.front().level();
  for (const FiniteSet& e : elements)
    if (e.level() != child_level)
      fail(ErrorCode::LevelMismatch, "set elements have unequal levels");
  if (child_level + 1 > Config::max_hyperspace_level())
    fail(ErrorCode::LevelCapExceeded,
         "hyperspace level " + std::to_string(child_level + 1) +
             " exceeds the configured cap of " +
             std::to_string(Config::max_hyperspace_level()));
  std::sort(elements.begin(), elements.end(), [](const FiniteSet& a, const FiniteSet& b) {
    return compare(a, b) == std::strong_ordering::less;
  });
  elements.erase(std::unique(elements.begin(), elements.end(),
                             [](const FiniteSet& a, const FiniteSet& b) { return a == b; }),
                 elements.end());
  auto impl = std::make_shared<Impl>();
  impl->level = child_level + 1;
  impl->sets = std::move(elements);
  return FiniteSet(std::move(impl));
}

int FiniteSet::level() const noexcept { return impl_->level; }

std::size_t FiniteSet::size() const noexcept {
  return impl_->level == 1 ? impl_->points.size() : impl_->sets.size();
}

const std::vector<Point>& FiniteSet::points() const {
  if (impl_->level != 1)
    fail(ErrorCode::LevelMismatch, "points() applies to level-1 sets only");
  return impl_->points;
}

const std::vector<FiniteSet>& FiniteSet::sets() const {
  if (impl_->level == 1)
    fail(ErrorCode::LevelMismatch, "sets() applies to sets of level >= 2");
  return impl_->sets;
}

std::strong_ordering FiniteSet::compare(const FiniteSet& a, const FiniteSet& b) {
  if (auto c = a.level() <=> b.level(); c != 0) return c;
  if (a.impl_ == b.impl_) return std::strong_ordering::equal;
  if (a.level() == 1) {
    std::size_t n = std::min(a.impl_->points.size(), b.impl_->points.size());
    for (std::size_t i = 0; i < n; ++i)
      if (auto c = Point::compare(a.impl_->points[i], b.impl_->points[i]); c != 0) return c;
    return a.impl_->points.size() <=> b.impl_->points.size();
  }
  std::size_t n = std::min(a.impl_->sets.size(), b.impl_->sets.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = compare(a.impl_->sets[i], b.impl_->sets[i]); c != 0) return c;
  return a.impl_->sets.size() <=> b.impl_->sets.size();
}

bool FiniteSet::contains(const Point& p) const {
  for (const Point& q : points())
    if (p == q) return true;
  return false;
}

}  // namespace mvfp
