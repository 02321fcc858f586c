#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgfacet/comparison.hpp"
#include "kgfacet/graph_store.hpp"
#include "kgfacet/value.hpp"

namespace kgfacet {

enum class FacetKind { string, numeric, date };

std::string_view to_string(FacetKind kind) noexcept;
std::optional<FacetKind> parse_facet_kind(std::string_view name) noexcept;

struct Candidate {
  std::string value_text;
  std::size_t count;  // contributions whose cell holds this value

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Filterable dimension of one property. String facets carry candidates
/// (count desc, then text asc); numeric and date facets carry bounds.
struct FacetDescriptor {
  ResourceId property;
  FacetKind kind;
  std::vector<Candidate> candidates;
  std::optional<Value> min;
  std::optional<Value> max;

  friend bool operator==(const FacetDescriptor&,
                         const FacetDescriptor&) = default;
};

/// Facet kind of a row. A declared datatype always wins: number gives
/// numeric, date gives date, text and link give string. Undeclared rows are
/// numeric when every value reads as a decimal, date when every value reads
/// as YYYY-MM-DD, and string otherwise.
FacetKind resolve_facet_kind(const ComparisonTable& table,
                             const ResourceId& property,
                             std::optional<Datatype> declared);

/// One descriptor per row, in row order, using the datatypes captured in the
/// table rows.
std::vector<FacetDescriptor> infer_facets(const ComparisonTable& table);

/// Same, but datatypes come only from `templates`; rows without a
/// matching template are sniffed.
std::vector<FacetDescriptor> infer_facets(
    const ComparisonTable& table, std::span<const PropertyTemplate> templates);

/// Candidate texts starting with `prefix` (ASCII case-insensitive), ordered
/// by count desc then case-folded text, at most `limit` entries.
/// Throws Error(wrong_facet_kind) for non-string facets and
/// Error(invalid_argument) when limit is 0.
std::vector<std::string> autocomplete(const FacetDescriptor& facet,
                                      std::string_view prefix,
                                      std::size_t limit);

const FacetDescriptor* find_facet(std::span<const FacetDescriptor> facets,
                                  const ResourceId& property);

}  // namespace kgfacet
