#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvfp/gauge.hpp"
#include "mvfp/metric.hpp"
#include "mvfp/set_map.hpp"

namespace mvfp {

// One problem-file format shared by every subcommand. Rational scalars
// travel as "p/q" strings so exactness survives the text round-trip.
struct Problem {
  NumericMode mode = NumericMode::Rational;
  Metric metric = Metric::sup_norm();
  std::vector<Point> points;
  std::map<std::string, FiniteSet> named_sets;
  std::optional<SetValuedMap> map;
  std::optional<Gauge> gauge;

  struct SolveParams {
    std::optional<std::string> x0;
    std::optional<Scalar> tol;
    std::optional<long> max_iter;
  } solver;

  const Point& point_by_id(const std::string& id) const;
};

// Parses and fully validates a problem file; throws ParseError or
// ValidationError naming the offending field.
Problem parse_problem(const std::string& json_text);

std::string emit_problem(const Problem& problem);

// A set argument is either a comma-separated list of point ids or
// "@Name" for a set declared in the file.
FiniteSet resolve_set_spec(const Problem& problem, const std::string& spec);

}  // namespace mvfp
