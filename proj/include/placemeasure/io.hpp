#pragma once

// JSON definition files for maps, partitions and explicit functions.
//
// Map:
//   { "name": "omega", "kind": "builtin" }
//   { "name": "finite", "kind": "spec",
//     "base": { "table": [ { "place": "inf", "value": "1" } ],
//               "tail": { "tag": "const_lambda", "coefficient": "1" } },
//     "overrides": [ { "level": 7, "entries": [ { "place": "7:2:1", "value": "1/4" } ] } ] }
//   "tail" may also be a list of such objects; their rules are added.
//
// Partition:
//   { "scope": "Y", "exceptional": { "2": ["[7:2:1]", "[7:2:3]"] }, "order": ["inf", "2"] }
//
// Explicit function:
//   { "level": 5, "values": [ { "place": "5:inf:1", "value": "0.5" } ] }

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "text.hpp"

namespace placemeasure::io {

using json = nlohmann::ordered_json;

struct named_map {
  std::string name;
  consistent_map map;
};

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string as_string(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw parse_error(std::string("expected a string for ") + what);
}

inline map_value as_value(const json& j) {
  if (j.is_number_float()) return map_value::real(j.get<double>());
  return text::parse_value(as_string(j, "value"));
}

inline tail_rule as_tail(const json& j) {
  if (j.is_array()) {
    tail_rule sum;
    for (const auto& item : j) sum = sum + as_tail(item);
    return sum;
  }
  std::string tag = as_string(field(j, "tag"), "tail tag");
  rational q = j.contains("coefficient") ? text::parse_rational(as_string(j.at("coefficient"), "coefficient"))
                                         : rational(1);
  tail_rule t;
  if (tag == "zero") return t;
  if (tag == "const_lambda") t.lambda = q;
  else if (tag == "reciprocal_log") t.reciprocal_log = q;
  else if (tag == "alternating_unit") t.alternating = q;
  else throw parse_error("unknown tail tag '" + tag + "'");
  return t;
}

}  // namespace detail

inline json parse_json(const std::string& content) {
  try {
    return json::parse(content);
  } catch (const json::exception& e) {
    throw parse_error(e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline named_map map_from_json(const json& j) {
  using detail::field;
  std::string name = j.contains("name") ? detail::as_string(j.at("name"), "name") : "";
  std::string kind = detail::as_string(field(j, "kind"), "kind");
  if (kind == "builtin") {
    if (name == "lambda") return {name, make_builtin(builtin_map::lambda)};
    if (name == "omega") return {name, make_builtin(builtin_map::omega)};
    if (name == "alternating") return {name, make_builtin(builtin_map::alternating)};
    throw parse_error("unknown builtin map '" + name + "'");
  }
  if (kind != "spec") throw parse_error("unknown map kind '" + kind + "'");
  base_assignment base;
  if (j.contains("base")) {
    const auto& b = j.at("base");
    if (b.contains("table"))
      for (const auto& entry : b.at("table")) {
        auto p = text::parse_rational_place(detail::as_string(field(entry, "place"), "place"));
        if (!base.table.emplace(p, detail::as_value(field(entry, "value"))).second)
          throw parse_error("rational place " + p.to_string() + " listed twice");
      }
    if (b.contains("tail")) base.tail = detail::as_tail(b.at("tail"));
  }
  override_chain chain;
  if (j.contains("overrides"))
    for (const auto& lvl : j.at("overrides")) {
      const auto& n = field(lvl, "level");
      override_level entry{text::parse_level(detail::as_string(n, "level")), {}};
      for (const auto& e : field(lvl, "entries")) {
        auto v = text::parse_place(detail::as_string(field(e, "place"), "place"));
        if (!entry.entries.emplace(v, detail::as_value(field(e, "value"))).second)
          throw parse_error("place " + v.to_string() + " listed twice");
      }
      chain.push_back(std::move(entry));
    }
  return {name, consistent_map::from_spec(std::move(base), std::move(chain))};
}

inline json map_to_json(const std::string& name, const consistent_map& c) {
  json j;
  j["name"] = name;
  j["kind"] = "spec";
  json table = json::array();
  for (const auto& [p, v] : c.base().table)
    table.push_back({{"place", p.to_string()}, {"value", v.to_string()}});
  json tail = json::array();
  const auto& t = c.base().tail;
  if (t.lambda != 0) tail.push_back({{"tag", "const_lambda"}, {"coefficient", t.lambda.get_str()}});
  if (t.reciprocal_log != 0)
    tail.push_back({{"tag", "reciprocal_log"}, {"coefficient", t.reciprocal_log.get_str()}});
  if (t.alternating != 0)
    tail.push_back({{"tag", "alternating_unit"}, {"coefficient", t.alternating.get_str()}});
  j["base"] = {{"table", table}, {"tail", tail}};
  json overrides = json::array();
  for (const auto& lvl : c.overrides()) {
    json entries = json::array();
    for (const auto& [v, value] : lvl.entries)
      entries.push_back({{"place", v.to_string()}, {"value", value.to_string()}});
    overrides.push_back({{"level", lvl.at.conductor()}, {"entries", entries}});
  }
  j["overrides"] = overrides;
  return j;
}

inline partition partition_from_json(const json& j) {
  algebra_set scope = j.contains("scope")
                          ? text::parse_set(detail::as_string(j.at("scope"), "scope"))
                          : algebra_set::everything();
  std::vector<fiber_parts> exceptional;
  if (j.contains("exceptional")) {
    const auto& e = j.at("exceptional");
    if (!e.is_object()) throw parse_error("'exceptional' must map rational places to set lists");
    for (const auto& [key, parts] : e.items()) {
      fiber_parts entry{text::parse_rational_place(key), {}};
      for (const auto& part : parts)
        entry.parts.push_back(text::parse_ring_set(detail::as_string(part, "part")));
      exceptional.push_back(std::move(entry));
    }
  }
  std::vector<rational_place> order;
  if (j.contains("order"))
    for (const auto& p : j.at("order"))
      order.push_back(text::parse_rational_place(detail::as_string(p, "order entry")));
  return partition(std::move(scope), std::move(exceptional), std::move(order));
}

inline simple_function function_from_json(const json& j) {
  level lvl = text::parse_level(detail::as_string(detail::field(j, "level"), "level"));
  std::map<place, map_value> values;
  for (const auto& e : detail::field(j, "values")) {
    auto v = text::parse_place(detail::as_string(detail::field(e, "place"), "place"));
    values.emplace(v, detail::as_value(detail::field(e, "value")));
  }
  return simple_function(lvl, std::move(values));
}

inline named_map load_map(const std::string& path) { return map_from_json(parse_json(read_file(path))); }
inline partition load_partition(const std::string& path) {
  return partition_from_json(parse_json(read_file(path)));
}

/// Element literal, including file:<path> for explicit functions.
inline algebraic_element load_element(const std::string& literal) {
  if (literal.rfind("file:", 0) == 0)
    return algebraic_element::from_function(function_from_json(parse_json(read_file(literal.substr(5)))));
  return text::parse_element(literal);
}

}  // namespace placemeasure::io
