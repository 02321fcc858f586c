#include "kgfacet/comparison.hpp"

#include <algorithm>
#include <set>

#include "kgfacet/error.hpp"

namespace kgfacet {

ComparisonTable::ComparisonTable(std::vector<ContributionColumn> contributions,
                                 std::vector<PropertyRow> properties,
                                 CellMap cells)
    : contributions_(std::move(contributions)),
      properties_(std::move(properties)),
      cells_(std::move(cells)) {
  std::set<ResourceId> columns;
  for (const auto& c : contributions_) {
    if (!columns.insert(c.id).second) {
      throw Error(Errc::invalid_argument,
                  "duplicate contribution '" + c.id.str() + "'");
    }
  }
  std::set<ResourceId> rows;
  for (const auto& p : properties_) {
    if (!rows.insert(p.id).second) {
      throw Error(Errc::invalid_argument,
                  "duplicate property '" + p.id.str() + "'");
    }
  }
  std::set<ResourceId> covered;
  for (auto& [key, values] : cells_) {
    if (!rows.contains(key.first) || !columns.contains(key.second)) {
      throw Error(Errc::invalid_argument,
                  "cell (" + key.first.str() + ", " + key.second.str() +
                      ") outside the table");
    }
    if (values.empty()) {
      throw Error(Errc::invalid_argument,
                  "empty cell (" + key.first.str() + ", " +
                      key.second.str() + ")");
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    covered.insert(key.first);
  }
  for (const auto& p : properties_) {
    if (!covered.contains(p.id)) {
      throw Error(Errc::invalid_argument,
                  "property row '" + p.id.str() + "' has no values");
    }
  }
}

std::span<const Value> ComparisonTable::cell(
    const ResourceId& property, const ResourceId& contribution) const {
  auto it = cells_.find(CellKey{property, contribution});
  if (it == cells_.end()) return {};
  return it->second;
}

const PropertyRow* ComparisonTable::find_property(const ResourceId& id) const {
  for (const auto& p : properties_) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

bool ComparisonTable::has_contribution(const ResourceId& id) const {
  return std::any_of(contributions_.begin(), contributions_.end(),
                     [&](const auto& c) { return c.id == id; });
}

std::vector<ResourceId> ComparisonTable::contribution_ids() const {
  std::vector<ResourceId> out;
  out.reserve(contributions_.size());
  for (const auto& c : contributions_) out.push_back(c.id);
  return out;
}

ComparisonTable build_comparison(
    const GraphStore& store, std::span<const ResourceId> contribution_ids) {
  if (contribution_ids.empty()) {
    throw Error(Errc::invalid_argument, "no contributions requested");
  }
  std::set<ResourceId> seen;
  for (const auto& id : contribution_ids) {
    if (!seen.insert(id).second) {
      throw Error(Errc::duplicate_contribution,
                  "contribution '" + id.str() + "' listed twice");
    }
  }

  std::vector<ContributionColumn> columns;
  ComparisonTable::CellMap cells;
  std::map<ResourceId, std::size_t> coverage;
  for (const auto& id : contribution_ids) {
    auto statements = store.match_statements(id, std::nullopt, std::nullopt);
    if (statements.empty()) {
      throw Error(Errc::unknown_contribution,
                  "contribution '" + id.str() + "' has no statements");
    }
    columns.push_back({id, store.resource_label(id)});
    for (auto& s : statements) {
      auto& cell = cells[{s.predicate, id}];
      if (cell.empty()) ++coverage[s.predicate];
      cell.push_back(std::move(s.object));
    }
  }

  std::vector<PropertyRow> rows;
  rows.reserve(coverage.size());
  for (const auto& [predicate, count] : coverage) {
    std::optional<Datatype> datatype;
    if (auto t = store.find_template(predicate)) datatype = t->datatype;
    rows.push_back({predicate, store.property_label(predicate), datatype});
  }
  std::sort(rows.begin(), rows.end(),
            [&](const PropertyRow& a, const PropertyRow& b) {
              const auto ca = coverage.at(a.id);
              const auto cb = coverage.at(b.id);
              if (ca != cb) return ca > cb;
              if (a.label != b.label) return a.label < b.label;
              return a.id < b.id;
            });
  return ComparisonTable(std::move(columns), std::move(rows),
                         std::move(cells));
}

ComparisonTable select_columns(const ComparisonTable& table,
                               std::span<const ResourceId> keep) {
  const std::set<ResourceId> wanted(keep.begin(), keep.end());
  std::vector<ContributionColumn> columns;
  for (const auto& c : table.contributions()) {
    if (wanted.contains(c.id)) columns.push_back(c);
  }
  ComparisonTable::CellMap cells;
  std::set<ResourceId> covered;
  for (const auto& [key, values] : table.cells()) {
    if (wanted.contains(key.second)) {
      cells.emplace(key, values);
      covered.insert(key.first);
    }
  }
  std::vector<PropertyRow> rows;
  for (const auto& p : table.properties()) {
    if (covered.contains(p.id)) rows.push_back(p);
  }
  return ComparisonTable(std::move(columns), std::move(rows),
                         std::move(cells));
}

ComparisonTable project(const ComparisonTable& table,
                        std::span<const ResourceId> keep) {
  if (keep.empty()) {
    throw Error(Errc::empty_projection, "projection keeps no contributions");
  }
  for (const auto& id : keep) {
    if (!table.has_contribution(id)) {
      throw Error(Errc::unknown_contribution_in_projection,
                  "contribution '" + id.str() + "' is not in the table");
    }
  }
  return select_columns(table, keep);
}

}  // namespace kgfacet
