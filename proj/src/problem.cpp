#include "mvfp/problem.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "mvfp/errors.hpp"

namespace mvfp {

using nlohmann::json;

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  fail(ErrorCode::ParseError, "problem file field '" + field + "': " + what);
}

Scalar parse_scalar(const json& j, NumericMode mode, const std::string& field) {
  try {
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), mode);
    if (j.is_number()) {
      if (mode == NumericMode::Float64) return Scalar::real(j.get<double>());
      if (j.is_number_integer())
        return Scalar::rational(j.get<long long>());
      bad_field(field, "rational mode needs exact literals, got a float number");
    }
  } catch (const Error& e) {
    bad_field(field, e.what());
  }
  bad_field(field, "expected a scalar literal");
}

Point parse_point(const json& j, NumericMode mode, const std::string& field) {
  if (!j.is_object()) bad_field(field, "expected an object");
  std::string id;
  if (j.contains("id")) {
    if (!j["id"].is_string()) bad_field(field + ".id", "expected a string");
    id = j["id"].get<std::string>();
  }
  if (id.empty()) bad_field(field + ".id", "points need a nonempty id");

  bool has_coords = j.contains("coords");
  bool has_sparse = j.contains("sparse");
  if (has_coords && has_sparse)
    bad_field(field, "point cannot be both dense and sparse");
  if (!has_coords && !has_sparse) return Point::labeled(id);

  if (has_coords) {
    if (!j["coords"].is_array()) bad_field(field + ".coords", "expected an array");
    std::vector<Scalar> coords;
    for (std::size_t i = 0; i < j["coords"].size(); ++i)
      coords.push_back(parse_scalar(j["coords"][i], mode,
                                    field + ".coords[" + std::to_string(i) + "]"));
    if (coords.empty()) bad_field(field + ".coords", "dense point needs coordinates");
    return Point::dense(id, std::move(coords));
  }

  if (!j["sparse"].is_object()) bad_field(field + ".sparse", "expected an object");
  std::vector<std::pair<std::size_t, Scalar>> entries;
  for (const auto& [key, value] : j["sparse"].items()) {
    std::size_t index = 0;
    try {
      std::size_t pos = 0;
      index = std::stoull(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (...) {
      bad_field(field + ".sparse", "bad index '" + key + "'");
    }
    entries.emplace_back(index, parse_scalar(value, mode, field + ".sparse." + key));
  }
  return Point::sparse(id, std::move(entries), mode);
}

FiniteSet parse_set_literal(const json& j,
                            const std::unordered_map<std::string, const Point*>& by_id,
                            const std::string& field) {
  if (!j.is_object() || !j.contains("set") || !j["set"].is_array())
    bad_field(field, "expected {\"set\": [...]}");
  const json& arr = j["set"];
  if (arr.empty()) bad_field(field, "sets must be nonempty");

  if (arr.front().is_string()) {
    std::vector<Point> pts;
    for (const auto& e : arr) {
      if (!e.is_string()) bad_field(field, "set mixes ids and nested sets");
      auto it = by_id.find(e.get<std::string>());
      if (it == by_id.end())
        bad_field(field, "unknown point id '" + e.get<std::string>() + "'");
      pts.push_back(*it->second);
    }
    return FiniteSet::of_points(std::move(pts));
  }

  std::vector<FiniteSet> subs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_object()) bad_field(field, "set mixes ids and nested sets");
    subs.push_back(
        parse_set_literal(arr[i], by_id, field + "[" + std::to_string(i) + "]"));
  }
  return FiniteSet::of_sets(std::move(subs));
}

json set_to_json(const FiniteSet& s) {
  json arr = json::array();
  if (s.level() == 1) {
    for (const Point& p : s.points()) arr.push_back(p.id());
  } else {
    for (const FiniteSet& e : s.sets()) arr.push_back(set_to_json(e));
  }
  return json{{"set", arr}};
}

std::string scalar_text(const Scalar& s) {
  if (s.mode() == NumericMode::Float64) return s.str();
  auto f = s.fraction();
  if (!f)
    fail(ErrorCode::InvalidArgument,
         "scalar is too large for exact text serialization");
  return *f;
}

}  // namespace

const Point& Problem::point_by_id(const std::string& id) const {
  for (const Point& p : points)
    if (p.id() == id) return p;
  fail(ErrorCode::InvalidArgument, "unknown point id '" + id + "'");
}

Problem parse_problem(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("problem file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::ParseError, "problem file must be a JSON object");

  Problem p;

  std::string mode_text = j.value("mode", std::string("rational"));
  if (mode_text == "rational")
    p.mode = NumericMode::Rational;
  else if (mode_text == "float")
    p.mode = NumericMode::Float64;
  else
    bad_field("mode", "expected \"rational\" or \"float\"");

  if (j.contains("points")) {
    if (!j["points"].is_array()) bad_field("points", "expected an array");
    for (std::size_t i = 0; i < j["points"].size(); ++i)
      p.points.push_back(
          parse_point(j["points"][i], p.mode, "points[" + std::to_string(i) + "]"));
  }

  std::unordered_map<std::string, const Point*> by_id;
  for (const Point& pt : p.points)
    if (!by_id.emplace(pt.id(), &pt).second)
      bad_field("points", "duplicate point id '" + pt.id() + "'");
  for (std::size_t i = 0; i < p.points.size(); ++i)
    for (std::size_t k = i + 1; k < p.points.size(); ++k)
      if (p.points[i] == p.points[k])
        bad_field("points", "points '" + p.points[i].id() + "' and '" +
                                p.points[k].id() + "' have equal coordinates");

  std::string metric_text = j.value("metric", std::string("sup"));
  if (metric_text == "euclidean") {
    p.metric = Metric::euclidean();
  } else if (metric_text == "sup") {
    p.metric = Metric::sup_norm();
  } else if (metric_text == "table") {
    if (!j.contains("table") || !j["table"].is_array())
      bad_field("table", "table metric needs a row-major \"table\" array");
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t i = 0; i < j["table"].size(); ++i) {
      const json& row = j["table"][i];
      if (!row.is_array()) bad_field("table", "rows must be arrays");
      std::vector<Scalar> r;
      for (std::size_t k = 0; k < row.size(); ++k)
        r.push_back(parse_scalar(row[k], p.mode,
                                 "table[" + std::to_string(i) + "][" +
                                     std::to_string(k) + "]"));
      rows.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    for (const Point& pt : p.points) labels.push_back(pt.id());
    if (labels.size() != rows.size())
      bad_field("table", "table size must match the point count");
    try {
      p.metric = Metric::table(std::move(labels), std::move(rows));
    } catch (const Error& e) {
      bad_field("table", e.what());
    }
  } else {
    bad_field("metric", "expected \"euclidean\", \"sup\" or \"table\"");
  }

  if (j.contains("sets")) {
    if (!j["sets"].is_object()) bad_field("sets", "expected an object");
    for (const auto& [name, value] : j["sets"].items())
      p.named_sets.emplace(name, parse_set_literal(value, by_id, "sets." + name));
  }

  if (j.contains("map")) {
    const json& m = j["map"];
    if (!m.is_object()) bad_field("map", "expected an object");
    bool has_table = m.contains("table");
    bool has_rule = m.contains("rule");
    if (has_table == has_rule)
      bad_field("map", "expected exactly one of \"table\" or \"rule\"");
    if (has_table) {
      if (!m["table"].is_object()) bad_field("map.table", "expected an object");
      std::unordered_set<std::string> domain;
      if (m.contains("domain")) {
        if (!m["domain"].is_array()) bad_field("map.domain", "expected an array");
        for (const auto& e : m["domain"]) {
          if (!e.is_string() || !by_id.count(e.get<std::string>()))
            bad_field("map.domain", "unknown point id");
          domain.insert(e.get<std::string>());
        }
      } else {
        for (const Point& pt : p.points) domain.insert(pt.id());
      }
      std::vector<std::pair<Point, FiniteSet>> entries;
      for (const auto& [id, value] : m["table"].items()) {
        auto it = by_id.find(id);
        if (it == by_id.end())
          bad_field("map.table", "unknown point id '" + id + "'");
        if (!value.is_array() || value.empty())
          bad_field("map.table." + id, "expected a nonempty id array");
        std::vector<Point> image;
        for (const auto& e : value) {
          if (!e.is_string()) bad_field("map.table." + id, "expected point ids");
          auto target = by_id.find(e.get<std::string>());
          if (target == by_id.end())
            bad_field("map.table." + id,
                      "unknown point id '" + e.get<std::string>() + "'");
          image.push_back(*target->second);
        }
        entries.emplace_back(*it->second, FiniteSet::of_points(std::move(image)));
        domain.erase(id);
      }
      if (!domain.empty())
        bad_field("map.table",
                  "map is not total: missing entry for '" + *domain.begin() + "'");
      try {
        p.map = SetValuedMap::table(std::move(entries));
      } catch (const Error& e) {
        bad_field("map.table", e.what());
      }
    } else {
      if (!m["rule"].is_string()) bad_field("map.rule", "expected a rule name");
      SetValuedMap::RuleParams params;
      if (m.contains("params")) {
        if (!m["params"].is_object()) bad_field("map.params", "expected an object");
        for (const auto& [key, value] : m["params"].items())
          params.emplace(key, parse_scalar(value, p.mode, "map.params." + key));
      }
      std::optional<FiniteSet> space;
      if (!p.points.empty() && p.metric.kind() == Metric::Kind::ExplicitTable)
        space = FiniteSet::of_points(p.points);
      try {
        p.map = SetValuedMap::rule(m["rule"].get<std::string>(), std::move(params),
                                   std::move(space));
      } catch (const Error& e) {
        bad_field("map.rule", e.what());
      }
    }
  }

  if (j.contains("gauge")) {
    const json& g = j["gauge"];
    if (!g.is_object() || !g.contains("kind") || !g["kind"].is_string())
      bad_field("gauge", "expected an object with a \"kind\"");
    std::string kind = g["kind"].get<std::string>();
    try {
      if (kind == "constant") {
        if (!g.contains("value")) bad_field("gauge.value", "missing");
        p.gauge = Gauge::constant(parse_scalar(g["value"], p.mode, "gauge.value"));
      } else if (kind == "tabulated") {
        if (!g.contains("entries") || !g["entries"].is_array())
          bad_field("gauge.entries", "expected an array of [key, value] pairs");
        std::vector<std::pair<Scalar, Scalar>> entries;
        for (std::size_t i = 0; i < g["entries"].size(); ++i) {
          const json& e = g["entries"][i];
          if (!e.is_array() || e.size() != 2)
            bad_field("gauge.entries", "expected [key, value] pairs");
          std::string f = "gauge.entries[" + std::to_string(i) + "]";
          entries.emplace_back(parse_scalar(e[0], p.mode, f + "[0]"),
                               parse_scalar(e[1], p.mode, f + "[1]"));
        }
        Scalar dflt = g.contains("default")
                          ? parse_scalar(g["default"], p.mode, "gauge.default")
                          : Scalar::zero(p.mode);
        p.gauge = Gauge::tabulated(std::move(entries), std::move(dflt));
      } else if (kind == "rule") {
        if (!g.contains("name") || !g["name"].is_string())
          bad_field("gauge.name", "expected a rule name");
        Gauge::RuleParams params;
        if (g.contains("params")) {
          if (!g["params"].is_object()) bad_field("gauge.params", "expected an object");
          for (const auto& [key, value] : g["params"].items())
            params.emplace(key, parse_scalar(value, p.mode, "gauge.params." + key));
        }
        p.gauge = Gauge::rule(g["name"].get<std::string>(), std::move(params), p.mode);
      } else {
        bad_field("gauge.kind", "expected \"constant\", \"tabulated\" or \"rule\"");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      bad_field("gauge", e.what());
    }
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (!s.is_object()) bad_field("solver", "expected an object");
    if (s.contains("x0")) {
      if (!s["x0"].is_string()) bad_field("solver.x0", "expected a point id");
      std::string id = s["x0"].get<std::string>();
      if (!by_id.count(id) && !p.points.empty())
        bad_field("solver.x0", "unknown point id '" + id + "'");
      p.solver.x0 = id;
    }
    if (s.contains("tol"))
      p.solver.tol = parse_scalar(s["tol"], p.mode, "solver.tol");
    if (s.contains("max_iter")) {
      if (!s["max_iter"].is_number_integer() || s["max_iter"].get<long>() < 0)
        bad_field("solver.max_iter", "expected a nonnegative integer");
      p.solver.max_iter = s["max_iter"].get<long>();
    }
  }

  return p;
}

std::string emit_problem(const Problem& p) {
  json j;
  j["mode"] = p.mode == NumericMode::Rational ? "rational" : "float";

  json pts = json::array();
  for (const Point& pt : p.points) {
    json o;
    o["id"] = pt.id();
    if (pt.repr() == Point::Repr::Dense) {
      json coords = json::array();
      for (const Scalar& c : pt.coords()) coords.push_back(scalar_text(c));
      o["coords"] = coords;
    } else if (pt.repr() == Point::Repr::Sparse) {
      json sparse = json::object();
      for (const auto& [i, v] : pt.support())
        sparse[std::to_string(i)] = scalar_text(v);
      o["sparse"] = sparse;
    }
    pts.push_back(o);
  }
  j["points"] = pts;

  switch (p.metric.kind()) {
    case Metric::Kind::Euclidean: j["metric"] = "euclidean"; break;
    case Metric::Kind::SupNorm: j["metric"] = "sup"; break;
    case Metric::Kind::ExplicitTable: {
      j["metric"] = "table";
      json rows = json::array();
      for (const auto& row : p.metric.table_rows()) {
        json r = json::array();
        for (const Scalar& s : row) r.push_back(scalar_text(s));
        rows.push_back(r);
      }
      j["table"] = rows;
      break;
    }
  }

  if (!p.named_sets.empty()) {
    json sets = json::object();
    for (const auto& [name, s] : p.named_sets) sets[name] = set_to_json(s);
    j["sets"] = sets;
  }

  if (p.map) {
    json m;
    if (p.map->is_table()) {
      json table = json::object();
      for (const auto& [pt, image] : p.map->entries()) {
        json ids = json::array();
        for (const Point& q : image.points()) ids.push_back(q.id());
        table[pt.id()] = ids;
      }
      m["table"] = table;
    } else {
      m["rule"] = p.map->rule_name();
      json params = json::object();
      for (const auto& [key, value] : p.map->rule_params())
        params[key] = scalar_text(value);
      m["params"] = params;
    }
    j["map"] = m;
  }

  if (p.gauge) {
    json g;
    switch (p.gauge->kind()) {
      case Gauge::Kind::Constant:
        g["kind"] = "constant";
        g["value"] = scalar_text(p.gauge->constant_value());
        break;
      case Gauge::Kind::Tabulated: {
        g["kind"] = "tabulated";
        json entries = json::array();
        for (const auto& [key, value] : p.gauge->entries())
          entries.push_back(json::array({scalar_text(key), scalar_text(value)}));
        g["entries"] = entries;
        g["default"] = scalar_text(p.gauge->default_value());
        break;
      }
      case Gauge::Kind::Rule:
        g["kind"] = "rule";
        g["name"] = p.gauge->rule_name();
        break;
      case Gauge::Kind::BetaTransform:
        fail(ErrorCode::InvalidArgument,
             "derived beta gauges are not serializable");
    }
    j["gauge"] = g;
  }

  json s = json::object();
  if (p.solver.x0) s["x0"] = *p.solver.x0;
  if (p.solver.tol) s["tol"] = scalar_text(*p.solver.tol);
  if (p.solver.max_iter) s["max_iter"] = *p.solver.max_iter;
  if (!s.empty()) j["solver"] = s;

  return j.dump(2);
}

FiniteSet resolve_set_spec(const Problem& problem, const std::string& spec) {
  if (spec.empty()) fail(ErrorCode::InvalidArgument, "empty set specification");
  if (spec.front() == '@') {
    std::string name = spec.substr(1);
    auto it = problem.named_sets.find(name);
    if (it == problem.named_sets.end())
      fail(ErrorCode::InvalidArgument, "unknown named set '" + name + "'");
    return it->second;
  }
  std::vector<Point> pts;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    std::string id = spec.substr(start, comma == std::string::npos
                                            ? std::string::npos
                                            : comma - start);
    if (id.empty()) fail(ErrorCode::InvalidArgument, "empty id in set specification");
    pts.push_back(problem.point_by_id(id));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return FiniteSet::of_points(std::move(pts));
}

}  // namespace mvfp
