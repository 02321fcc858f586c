#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kgfacet/graph_store.hpp"
#include "kgfacet/value.hpp"

namespace kgfacet {

struct ContributionColumn {
  ResourceId id;
  std::string label;

  friend bool operator==(const ContributionColumn&,
                         const ContributionColumn&) = default;
};

/// A table row. `datatype` is the property's template datatype captured at
/// build time, if the property had one.
struct PropertyRow {
  ResourceId id;
  std::string label;
  std::optional<Datatype> datatype;

  friend bool operator==(const PropertyRow&, const PropertyRow&) = default;
};

/// Contributions x properties grid with multi-valued cells. Immutable once
/// built.
class ComparisonTable {
 public:
  using CellKey = std::pair<ResourceId, ResourceId>;  // (property, contribution)
  using CellMap = std::map<CellKey, std::vector<Value>>;

  ComparisonTable() = default;

  /// Validates the table invariants: unique contributions and properties,
  /// every cell addressing a known row and column, no empty cells, and every
  /// row with at least one cell. Cell values are sorted and deduplicated.
  /// Throws Error(invalid_argument).
  ComparisonTable(std::vector<ContributionColumn> contributions,
                  std::vector<PropertyRow> properties, CellMap cells);

  const std::vector<ContributionColumn>& contributions() const noexcept {
    return contributions_;
  }
  const std::vector<PropertyRow>& properties() const noexcept {
    return properties_;
  }
  const CellMap& cells() const noexcept { return cells_; }

  /// Values of one cell in canonical order; empty when the cell is absent.
  std::span<const Value> cell(const ResourceId& property,
                              const ResourceId& contribution) const;

  const PropertyRow* find_property(const ResourceId& id) const;
  bool has_contribution(const ResourceId& id) const;
  std::vector<ResourceId> contribution_ids() const;

  friend bool operator==(const ComparisonTable&,
                         const ComparisonTable&) = default;

 private:
  std::vector<ContributionColumn> contributions_;
  std::vector<PropertyRow> properties_;
  CellMap cells_;
};

/// Builds the comparison of the given contributions. Rows are ordered by
/// coverage (descending), then label, then id; columns keep input order.
///
/// Throws Error(invalid_argument) for an empty list,
/// Error(duplicate_contribution) and Error(unknown_contribution).
ComparisonTable build_comparison(const GraphStore& store,
                                 std::span<const ResourceId> contribution_ids);

/// Restricts the table to `keep`, preserving column order and dropping rows
/// that become empty. Throws Error(empty_projection) when `keep` is empty and
/// Error(unknown_contribution_in_projection) for ids not in the table.
ComparisonTable project(const ComparisonTable& table,
                        std::span<const ResourceId> keep);

/// Like project() but without validation: ids outside the table are
/// ignored and an empty selection yields an empty table.
ComparisonTable select_columns(const ComparisonTable& table,
                               std::span<const ResourceId> keep);

}  // namespace kgfacet
