#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvfp/finite_set.hpp"
#include "mvfp/point.hpp"

namespace mvfp {

// A total map from points to nonempty finite sets, given either as an
// explicit table over a finite point space or as a registered rule.
class SetValuedMap {
 public:
  using RuleParams = std::map<std::string, Scalar>;

  // Table entries are keyed by point id; every point must carry one.
  static SetValuedMap table(std::vector<std::pair<Point, FiniteSet>> entries);
  // Registered rules: "scale" (singleton image {factor * x}, default 1/2).
  // When a space is declared, rule images must stay inside it.
  static SetValuedMap rule(std::string name, RuleParams params,
                           std::optional<FiniteSet> declared_space = std::nullopt);

  FiniteSet image(const Point& x) const;

  bool is_table() const noexcept;
  const std::vector<std::pair<Point, FiniteSet>>& entries() const;  // table only
  const std::string& rule_name() const;                             // rule only
  const RuleParams& rule_params() const;                            // rule only
  const std::optional<FiniteSet>& declared_space() const;

 private:
  struct Impl;
  explicit SetValuedMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace mvfp
