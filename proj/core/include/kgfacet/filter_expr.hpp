#pragma once

#include <string>
#include <string_view>

#include "kgfacet/comparison.hpp"
#include "kgfacet/filters.hpp"

namespace kgfacet {

/// Parses the filter mini-language against `table`:
///
///     expr    := clause (';' clause)*
///     clause  := prop op
///     op      := ('=' | '!=' | '<' | '<=' | '>' | '>=' | '!<' | '!>') scalar
///              | ('=' | '!=') '[' scalar ('|' scalar)* ']'
///              | ('in' | 'not in') scalar '..' scalar
///
/// `prop` is a bare or double-quoted name, resolved by exact id and then by
/// unique label. The property's facet kind decides how scalars are read.
/// `!<` and `!>` are the negated date comparisons.
///
/// Throws SyntaxError, or Error with unknown_property, ambiguous_label or
/// duplicate_clause.
FilterConfig parse_filter_expr(std::string_view text,
                               const ComparisonTable& table);

/// Expression text that parses back to `config` on a table whose facet
/// kinds match the config's specs. Properties are written by id.
std::string serialize_filter_expr(const FilterConfig& config);

/// Resolves a property name by exact id, then by unique label.
/// Throws Error(unknown_property) or Error(ambiguous_label).
const PropertyRow& resolve_property(const ComparisonTable& table,
                                    std::string_view name);

}  // namespace kgfacet
