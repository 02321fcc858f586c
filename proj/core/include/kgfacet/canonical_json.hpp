#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgfacet/comparison.hpp"
#include "kgfacet/facets.hpp"
#include "kgfacet/filters.hpp"
#include "kgfacet/value.hpp"

// Canonical tree forms of the domain types. Object keys are sorted (the
// default for nlohmann::json) and dump_canonical() emits compact UTF-8, so
// equal structures always produce identical bytes.
//
// The *_from_json functions throw Error(invalid_argument) for trees that do
// not have the documented shape.
namespace kgfacet::canonical {

using Json = nlohmann::json;

/// Compact, sorted-key, UTF-8 text. Throws Error(invalid_argument) on
/// invalid UTF-8.
std::string dump_canonical(const Json& tree);

Json to_json(const Value& value);
Value value_from_json(const Json& tree);

/// {contributions:[{id,label}], properties:[{id,label,datatype}],
///  cells:[{property, contribution, values:[{kind, lexical}]}]}.
/// Cells are listed in row order, then column order.
Json to_json(const ComparisonTable& table);
ComparisonTable table_from_json(const Json& tree);

Json to_json(const FilterSpec& spec);
FilterSpec spec_from_json(const Json& tree);

/// Object keyed by property id.
Json to_json(const FilterConfig& config);
FilterConfig config_from_json(const Json& tree);

Json to_json(const FacetDescriptor& facet);
Json to_json(std::span<const FacetDescriptor> facets);

Json to_json(std::span<const ResourceId> ids);
std::vector<ResourceId> ids_from_json(const Json& tree);

}  // namespace kgfacet::canonical
