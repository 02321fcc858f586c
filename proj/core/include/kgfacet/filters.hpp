#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kgfacet/calendar_date.hpp"
#include "kgfacet/comparison.hpp"
#include "kgfacet/decimal.hpp"
#include "kgfacet/facets.hpp"
#include "kgfacet/value.hpp"

namespace kgfacet {

/// Exact, case-sensitive match of any value's display text against a set.
struct TextAnyOf {
  std::set<std::string> values;
  bool negated = false;

  friend bool operator==(const TextAnyOf&, const TextAnyOf&) = default;
};

enum class NumericOp { eq, neq, lt, le, gt, ge };
std::string_view to_string(NumericOp op) noexcept;
std::optional<NumericOp> parse_numeric_op(std::string_view name) noexcept;

/// NEQ is the negation of EQ: it holds when no value equals the operand,
/// including for a missing cell.
struct NumericCmp {
  NumericOp op;
  Decimal operand;

  friend bool operator==(const NumericCmp&, const NumericCmp&) = default;
};

/// Inclusive at both ends.
struct NumericRange {
  Decimal low;
  Decimal high;
  bool negated = false;

  friend bool operator==(const NumericRange&, const NumericRange&) = default;
};

enum class DateOp { on, before, after };
std::string_view to_string(DateOp op) noexcept;
std::optional<DateOp> parse_date_op(std::string_view name) noexcept;

struct DateCmp {
  DateOp op;
  CalendarDate date;
  bool negated = false;

  friend bool operator==(const DateCmp&, const DateCmp&) = default;
};

/// Inclusive duration.
struct DateRange {
  CalendarDate start;
  CalendarDate end;
  bool negated = false;

  friend bool operator==(const DateRange&, const DateRange&) = default;
};

using FilterSpec =
    std::variant<TextAnyOf, NumericCmp, NumericRange, DateCmp, DateRange>;

/// Throws Error(invalid_argument) when the spec breaks its invariants
/// (empty value set, low > high, start > end).
void check_spec(const FilterSpec& spec);

bool is_negated(const FilterSpec& spec) noexcept;
/// The complementary spec: flips `negated`, or swaps EQ and NEQ. Returns
/// nullopt for ordered numeric comparisons, which have no complement.
std::optional<FilterSpec> negated_twin(const FilterSpec& spec);

/// The facet kind a spec is meant for.
FacetKind spec_facet_kind(const FilterSpec& spec) noexcept;

/// Per-property filter specs, evaluated as a conjunction.
class FilterConfig {
 public:
  using Clauses = std::map<ResourceId, FilterSpec>;

  FilterConfig() = default;

  /// Throws Error(duplicate_clause) if the property already has a clause
  /// and Error(invalid_argument) for an invalid spec.
  void add(ResourceId property, FilterSpec spec);
  void remove(const ResourceId& property) { clauses_.erase(property); }

  const Clauses& clauses() const noexcept { return clauses_; }
  bool empty() const noexcept { return clauses_.empty(); }
  std::size_t size() const noexcept { return clauses_.size(); }

  friend bool operator==(const FilterConfig&, const FilterConfig&) = default;

 private:
  Clauses clauses_;
};

/// Positive specs hold when some value satisfies the predicate; negated
/// specs hold when none does. An empty list is a missing cell. Values the
/// spec cannot read (links for numbers, non-dates for dates) never satisfy.
bool eval_cell(const FilterSpec& spec, std::span<const Value> values);

/// Keeps the contributions that pass every clause. Throws
/// Error(unknown_property) for clauses on properties absent from the table.
ComparisonTable apply_filters(const ComparisonTable& table,
                              const FilterConfig& config);

/// Contributions (in table order) that pass every clause.
std::vector<ResourceId> matching_contributions(const ComparisonTable& table,
                                               const FilterConfig& config);

struct Warning {
  enum class Kind { unknown_property, kind_mismatch, not_a_candidate,
                    out_of_range };

  ResourceId property;
  Kind kind;
  std::string message;
};

std::string_view to_string(Warning::Kind kind) noexcept;

/// Non-fatal consistency checks of a config against a table's facets.
std::vector<Warning> validate_config(const FilterConfig& config,
                                     const ComparisonTable& table,
                                     std::span<const FacetDescriptor> facets);

}  // namespace kgfacet
