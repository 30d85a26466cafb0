#include "mvfp/set_map.hpp"

#include <unordered_map>

#include "mvfp/errors.hpp"

namespace mvfp {

struct SetValuedMap::Impl {
  bool table = true;
  std::vector<std::pair<Point, FiniteSet>> entries;
  std::unordered_map<std::string, std::size_t> index;
  std::string rule;
  RuleParams params;
  std::optional<FiniteSet> space;
};

SetValuedMap SetValuedMap::table(std::vector<std::pair<Point, FiniteSet>> entries) {
  if (entries.empty())
    fail(ErrorCode::InvalidArgument, "table map needs at least one entry");
  auto impl = std::make_shared<Impl>();
  impl->table = true;
  impl->entries = std::move(entries);
  for (std::size_t i = 0; i < impl->entries.size(); ++i) {
    const auto& [pt, img] = impl->entries[i];
    if (pt.id().empty())
      fail(ErrorCode::InvalidArgument, "table map points need ids");
    if (img.level() != 1)
      fail(ErrorCode::InvalidArgument, "table map images must be level-1 sets");
    if (!impl->index.emplace(pt.id(), i).second)
      fail(ErrorCode::InvalidArgument,
           "duplicate map entry for point '" + pt.id() + "'");
  }
  return SetValuedMap(std::move(impl));
}

SetValuedMap SetValuedMap::rule(std::string name, RuleParams params,
                                std::optional<FiniteSet> declared_space) {
  if (name != "scale")
    fail(ErrorCode::InvalidArgument, "unknown map rule '" + name + "'");
  for (const auto& [key, value] : params)
    if (key != "factor")
      fail(ErrorCode::InvalidArgument,
           "map rule 'scale' does not take parameter '" + key + "'");
  auto impl = std::make_shared<Impl>();
  impl->table = false;
  impl->rule = std::move(name);
  impl->params = std::move(params);
  impl->space = std::move(declared_space);
  return SetValuedMap(std::move(impl));
}

FiniteSet SetValuedMap::image(const Point& x) const {
  if (impl_->table) {
    auto it = impl_->index.find(x.id());
    if (it == impl_->index.end())
      fail(ErrorCode::DomainEscape,
           "point '" + x.describe() + "' is outside the map's domain");
    return impl_->entries[it->second].second;
  }

  // rule "scale"
  Scalar factor = Scalar::rational(1, 2);
  auto it = impl_->params.find("factor");
  if (it != impl_->params.end()) factor = it->second;
  if (x.mode() == NumericMode::Float64 && factor.is_rational())
    factor = Scalar::real(factor.to_double());
  if (factor.mode() != x.mode())
    fail(ErrorCode::MixedMode, "map rule parameter mode differs from point mode");

  Point y = Point::labeled("placeholder");
  if (x.repr() == Point::Repr::Dense) {
    std::vector<Scalar> coords;
    coords.reserve(x.dimension());
    for (const Scalar& c : x.coords()) coords.push_back(c * factor);
    y = Point::dense("", std::move(coords));
  } else if (x.repr() == Point::Repr::Sparse) {
    std::vector<std::pair<std::size_t, Scalar>> entries;
    entries.reserve(x.support().size());
    for (const auto& [i, v] : x.support()) entries.emplace_back(i, v * factor);
    y = Point::sparse("", std::move(entries), x.mode());
  } else {
    fail(ErrorCode::IncompatiblePoints, "map rule 'scale' needs coordinate points");
  }

  if (impl_->space && !impl_->space->contains(y))
    fail(ErrorCode::DomainEscape,
         "rule image " + y.describe() + " escapes the declared space");
  return FiniteSet::of_points({std::move(y)});
}

bool SetValuedMap::is_table() const noexcept { return impl_->table; }

const std::vector<std::pair<Point, FiniteSet>>& SetValuedMap::entries() const {
  if (!impl_->table) fail(ErrorCode::InvalidArgument, "entries apply to table maps only");
  return impl_->entries;
}

const std::string& SetValuedMap::rule_name() const {
  if (impl_->table) fail(ErrorCode::InvalidArgument, "rule name applies to rule maps only");
  return impl_->rule;
}

const SetValuedMap::RuleParams& SetValuedMap::rule_params() const {
  if (impl_->table) fail(ErrorCode::InvalidArgument, "rule params apply to rule maps only");
  return impl_->params;
}

const std::optional<FiniteSet>& SetValuedMap::declared_space() const {
  return impl_->space;
}

}  // namespace mvfp
