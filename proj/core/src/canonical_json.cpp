#include "kgfacet/canonical_json.hpp"

#include "kgfacet/error.hpp"

namespace kgfacet::canonical {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(Errc::invalid_argument, "malformed document: " + what);
}

const Json& field(const Json& obj, const char* name) {
  if (!obj.is_object()) malformed(std::string("expected an object with '") + name + "'");
  auto it = obj.find(name);
  if (it == obj.end()) malformed(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const Json& obj, const char* name) {
  const Json& v = field(obj, name);
  if (!v.is_string()) malformed(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

bool negated_field(const Json& obj) {
  auto it = obj.find("negated");
  if (it == obj.end()) return false;
  if (!it->is_boolean()) malformed("field 'negated' must be a boolean");
  return it->get<bool>();
}

const Json& array_field(const Json& obj, const char* name) {
  const Json& v = field(obj, name);
  if (!v.is_array()) malformed(std::string("field '") + name + "' must be an array");
  return v;
}

// Numeric operands may arrive as strings (exact) or JSON numbers.
Decimal decimal_field(const Json& obj, const char* name) {
  const Json& v = field(obj, name);
  std::string text;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_number()) {
    text = v.dump();
  } else {
    malformed(std::string("field '") + name + "' must be a number");
  }
  auto d = Decimal::parse(text);
  if (!d) malformed("'" + text + "' is not a decimal");
  return *d;
}

CalendarDate date_field(const Json& obj, const char* name) {
  const std::string text = string_field(obj, name);
  auto d = CalendarDate::parse(text);
  if (!d) malformed("'" + text + "' is not a YYYY-MM-DD date");
  return *d;
}

ResourceId id_of(const std::string& text) {
  if (!ResourceId::is_valid(text)) malformed("invalid id '" + text + "'");
  return ResourceId(text);
}

}  // namespace

std::string dump_canonical(const Json& tree) {
  try {
    return tree.dump(-1, ' ', false, Json::error_handler_t::strict);
  } catch (const Json::exception& e) {
    throw Error(Errc::invalid_argument, e.what());
  }
}

Json to_json(const Value& value) {
  return Json{{"kind", to_string(value.kind())}, {"lexical", value.lexical()}};
}

Value value_from_json(const Json& tree) {
  const auto kind = parse_datatype(string_field(tree, "kind"));
  if (!kind) malformed("unknown value kind");
  try {
    return Value::from_lexical(*kind, string_field(tree, "lexical"));
  } catch (const Error& e) {
    malformed(e.what());
  }
}

Json to_json(const ComparisonTable& table) {
  Json contributions = Json::array();
  for (const auto& c : table.contributions()) {
    contributions.push_back({{"id", c.id.str()}, {"label", c.label}});
  }
  Json properties = Json::array();
  Json cells = Json::array();
  for (const auto& p : table.properties()) {
    properties.push_back(
        {{"id", p.id.str()},
         {"label", p.label},
         {"datatype", p.datatype ? Json(to_string(*p.datatype)) : Json()}});
    for (const auto& c : table.contributions()) {
      auto values = table.cell(p.id, c.id);
      if (values.empty()) continue;
      Json list = Json::array();
      for (const auto& v : values) list.push_back(to_json(v));
      cells.push_back({{"property", p.id.str()},
                       {"contribution", c.id.str()},
                       {"values", std::move(list)}});
    }
  }
  return Json{{"contributions", std::move(contributions)},
              {"properties", std::move(properties)},
              {"cells", std::move(cells)}};
}

ComparisonTable table_from_json(const Json& tree) {
  std::vector<ContributionColumn> columns;
  for (const auto& c : array_field(tree, "contributions")) {
    columns.push_back({id_of(string_field(c, "id")), string_field(c, "label")});
  }
  std::vector<PropertyRow> rows;
  for (const auto& p : array_field(tree, "properties")) {
    std::optional<Datatype> datatype;
    const Json& d = field(p, "datatype");
    if (!d.is_null()) {
      if (!d.is_string()) malformed("datatype must be a string or null");
      datatype = parse_datatype(d.get<std::string>());
      if (!datatype) malformed("unknown datatype");
    }
    rows.push_back({id_of(string_field(p, "id")), string_field(p, "label"),
                    datatype});
  }
  ComparisonTable::CellMap cells;
  for (const auto& c : array_field(tree, "cells")) {
    std::vector<Value> values;
    for (const auto& v : array_field(c, "values")) {
      values.push_back(value_from_json(v));
    }
    auto key = ComparisonTable::CellKey{id_of(string_field(c, "property")),
                                        id_of(string_field(c, "contribution"))};
    if (!cells.emplace(std::move(key), std::move(values)).second) {
      malformed("duplicate cell");
    }
  }
  return ComparisonTable(std::move(columns), std::move(rows), std::move(cells));
}

Json to_json(const FilterSpec& spec) {
  if (const auto* s = std::get_if<TextAnyOf>(&spec)) {
    Json values = Json::array();
    for (const auto& v : s->values) values.push_back(v);
    return Json{{"kind", "text_any_of"},
                {"values", std::move(values)},
                {"negated", s->negated}};
  }
  if (const auto* s = std::get_if<NumericCmp>(&spec)) {
    return Json{{"kind", "numeric_cmp"},
                {"op", to_string(s->op)},
                {"operand", s->operand.lexical()},
                {"negated", s->op == NumericOp::neq}};
  }
  if (const auto* s = std::get_if<NumericRange>(&spec)) {
    return Json{{"kind", "numeric_range"},
                {"low", s->low.lexical()},
                {"high", s->high.lexical()},
                {"negated", s->negated}};
  }
  if (const auto* s = std::get_if<DateCmp>(&spec)) {
    return Json{{"kind", "date_cmp"},
                {"op", to_string(s->op)},
                {"date", s->date.to_string()},
                {"negated", s->negated}};
  }
  const auto& s = std::get<DateRange>(spec);
  return Json{{"kind", "date_range"},
              {"start", s.start.to_string()},
              {"end", s.end.to_string()},
              {"negated", s.negated}};
}

FilterSpec spec_from_json(const Json& tree) {
  const std::string kind = string_field(tree, "kind");
  if (kind == "text_any_of") {
    TextAnyOf spec;
    for (const auto& v : array_field(tree, "values")) {
      if (!v.is_string()) malformed("text filter values must be strings");
      spec.values.insert(v.get<std::string>());
    }
    spec.negated = negated_field(tree);
    return spec;
  }
  if (kind == "numeric_cmp") {
    const auto op = parse_numeric_op(string_field(tree, "op"));
    if (!op) malformed("unknown numeric operator");
    if (tree.contains("negated") && negated_field(tree) != (*op == NumericOp::neq)) {
      malformed("numeric_cmp 'negated' must match its operator");
    }
    return NumericCmp{*op, decimal_field(tree, "operand")};
  }
  if (kind == "numeric_range") {
    return NumericRange{decimal_field(tree, "low"), decimal_field(tree, "high"),
                        negated_field(tree)};
  }
  if (kind == "date_cmp") {
    const auto op = parse_date_op(string_field(tree, "op"));
    if (!op) malformed("unknown date operator");
    return DateCmp{*op, date_field(tree, "date"), negated_field(tree)};
  }
  if (kind == "date_range") {
    return DateRange{date_field(tree, "start"), date_field(tree, "end"),
                     negated_field(tree)};
  }
  malformed("unknown filter kind '" + kind + "'");
}

Json to_json(const FilterConfig& config) {
  Json out = Json::object();
  for (const auto& [property, spec] : config.clauses()) {
    out[property.str()] = to_json(spec);
  }
  return out;
}

FilterConfig config_from_json(const Json& tree) {
  if (!tree.is_object()) malformed("filter config must be an object");
  FilterConfig config;
  for (const auto& [property, spec] : tree.items()) {
    try {
      config.add(id_of(property), spec_from_json(spec));
    } catch (const Error& e) {
      if (e.code() == Errc::invalid_argument) throw;
      malformed(e.what());
    }
  }
  return config;
}

Json to_json(const FacetDescriptor& facet) {
  Json candidates = Json::array();
  for (const auto& c : facet.candidates) {
    candidates.push_back({{"value", c.value_text}, {"count", c.count}});
  }
  return {{"property", facet.property.str()},
          {"kind", to_string(facet.kind)},
          {"candidates", std::move(candidates)},
          {"min", facet.min ? to_json(*facet.min) : Json()},
          {"max", facet.max ? to_json(*facet.max) : Json()}};
}

Json to_json(std::span<const FacetDescriptor> facets) {
  Json out = Json::array();
  for (const auto& f : facets) out.push_back(to_json(f));
  return out;
}

Json to_json(std::span<const ResourceId> ids) {
  Json out = Json::array();
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

std::vector<ResourceId> ids_from_json(const Json& tree) {
  if (!tree.is_array()) malformed("expected an array of ids");
  std::vector<ResourceId> out;
  for (const auto& v : tree) {
    if (!v.is_string()) malformed("ids must be strings");
    out.push_back(id_of(v.get<std::string>()));
  }
  return out;
}

}  // namespace kgfacet::canonical
