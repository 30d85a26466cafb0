#include "mvfp/point.hpp"

#include <algorithm>

#include "mvfp/errors.hpp"

namespace mvfp {

Point Point::dense(std::string id, std::vector<Scalar> coords) {
  if (coords.empty())
    fail(ErrorCode::InvalidArgument, "dense point needs at least one coordinate");
  NumericMode m = coords.front().mode();
  for (const Scalar& c : coords)
    if (c.mode() != m)
      fail(ErrorCode::MixedMode, "point coordinates mix numeric modes");
  Point p;
  p.repr_ = Repr::Dense;
  p.id_ = std::move(id);
  p.mode_ = m;
  p.coords_ = std::move(coords);
  return p;
}

Point Point::sparse(std::string id,
                    std::vector<std::pair<std::size_t, Scalar>> entries,
                    std::optional<NumericMode> mode_if_empty) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      fail(ErrorCode::InvalidArgument,
           "sparse point repeats index " + std::to_string(entries[i].first));

  std::optional<NumericMode> m = mode_if_empty;
  std::vector<std::pair<std::size_t, Scalar>> kept;
  kept.reserve(entries.size());
  for (auto& e : entries) {
    if (m && e.second.mode() != *m)
      fail(ErrorCode::MixedMode, "point coordinates mix numeric modes");
    m = e.second.mode();
    if (!e.second.is_zero()) kept.push_back(std::move(e));
  }
  if (!m)
    fail(ErrorCode::InvalidArgument,
         "empty sparse point needs an explicit numeric mode");

  Point p;
  p.repr_ = Repr::Sparse;
  p.id_ = std::move(id);
  p.mode_ = m;
  p.support_ = std::move(kept);
  return p;
}

Point Point::labeled(std::string id) {
  if (id.empty()) fail(ErrorCode::InvalidArgument, "labeled point needs a nonempty id");
  Point p;
  p.repr_ = Repr::Label;
  p.id_ = std::move(id);
  return p;
}

NumericMode Point::mode() const {
  if (!mode_) fail(ErrorCode::InvalidArgument, "labeled point has no numeric mode");
  return *mode_;
}

std::size_t Point::dimension() const {
  if (repr_ != Repr::Dense)
    fail(ErrorCode::InvalidArgument, "dimension applies to dense points only");
  return coords_.size();
}

const std::vector<Scalar>& Point::coords() const {
  if (repr_ != Repr::Dense)
    fail(ErrorCode::InvalidArgument, "coords apply to dense points only");
  return coords_;
}

const std::vector<std::pair<std::size_t, Scalar>>& Point::support() const {
  if (repr_ != Repr::Sparse)
    fail(ErrorCode::InvalidArgument, "support applies to sparse points only");
  return support_;
}

Point Point::to_dense(std::size_t dimension) const {
  if (repr_ != Repr::Sparse)
    fail(ErrorCode::InvalidArgument, "to_dense applies to sparse points only");
  if (!support_.empty() && support_.back().first >= dimension)
    fail(ErrorCode::InvalidArgument, "to_dense dimension too small for support");
  std::vector<Scalar> coords(dimension, Scalar::zero(mode()));
  for (const auto& [i, v] : support_) coords[i] = v;
  return dense(id_, std::move(coords));
}

std::strong_ordering Point::compare(const Point& a, const Point& b) {
  if (a.repr_ != b.repr_)
    return static_cast<int>(a.repr_) <=> static_cast<int>(b.repr_);
  switch (a.repr_) {
    case Repr::Label:
      return a.id_ <=> b.id_;
    case Repr::Dense: {
      if (auto c = a.coords_.size() <=> b.coords_.size(); c != 0) return c;
      for (std::size_t i = 0; i < a.coords_.size(); ++i)
        if (auto c = Scalar::compare(a.coords_[i], b.coords_[i]); c != 0) return c;
      return std::strong_ordering::equal;
    }
    case Repr::Sparse: {
      std::size_t n = std::min(a.support_.size(), b.support_.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a.support_[i].first <=> b.support_[i].first; c != 0) return c;
        if (auto c = Scalar::compare(a.support_[i].second, b.support_[i].second); c != 0)
          return c;
      }
      return a.support_.size() <=> b.support_.size();
    }
  }
  return std::strong_ordering::equal;
}

std::string Point::describe() const {
  if (!id_.empty()) return id_;
  std::string out = "(";
  if (repr_ == Repr::Dense) {
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) out += ",";
      out += coords_[i].str();
    }
  } else if (repr_ == Repr::Sparse) {
    for (std::size_t i = 0; i < support_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(support_[i].first) + ":" + support_[i].second.str();
    }
  }
  out += ")";
  return out;
}

}  // namespace mvfp
