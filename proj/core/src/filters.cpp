#include "kgfacet/filters.hpp"

#include <algorithm>
#include <type_traits>

#include "kgfacet/error.hpp"

namespace kgfacet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool compare(NumericOp op, const Decimal& value, const Decimal& operand) {
  switch (op) {
    case NumericOp::eq:
    case NumericOp::neq: return value == operand;
    case NumericOp::lt: return value < operand;
    case NumericOp::le: return value <= operand;
    case NumericOp::gt: return value > operand;
    case NumericOp::ge: return value >= operand;
  }
  return false;
}

bool compare(DateOp op, const CalendarDate& value, const CalendarDate& date) {
  switch (op) {
    case DateOp::on: return value == date;
    case DateOp::before: return value < date;
    case DateOp::after: return value > date;
  }
  return false;
}

// Whether one value satisfies the un-negated predicate of `spec`.
bool satisfies(const FilterSpec& spec, const Value& value) {
  return std::visit(
      overloaded{
          [&](const TextAnyOf& s) {
            return s.values.contains(value.display_text());
          },
          [&](const NumericCmp& s) {
            auto d = value.as_decimal();
            return d && compare(s.op, *d, s.operand);
          },
          [&](const NumericRange& s) {
            auto d = value.as_decimal();
            return d && s.low <= *d && *d <= s.high;
          },
          [&](const DateCmp& s) {
            auto d = value.as_date();
            return d && compare(s.op, *d, s.date);
          },
          [&](const DateRange& s) {
            auto d = value.as_date();
            return d && s.start <= *d && *d <= s.end;
          },
      },
      spec);
}

void require_properties(const ComparisonTable& table,
                        const FilterConfig& config) {
  for (const auto& [property, spec] : config.clauses()) {
    if (!table.find_property(property)) {
      throw Error(Errc::unknown_property,
                  "filter on unknown property '" + property.str() + "'");
    }
  }
}

std::string join(const std::set<std::string>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ", ";
    out += v;
  }
  return out;
}

}  // namespace

std::string_view to_string(NumericOp op) noexcept {
  switch (op) {
    case NumericOp::eq: return "EQ";
    case NumericOp::neq: return "NEQ";
    case NumericOp::lt: return "LT";
    case NumericOp::le: return "LE";
    case NumericOp::gt: return "GT";
    case NumericOp::ge: return "GE";
  }
  return "EQ";
}

std::optional<NumericOp> parse_numeric_op(std::string_view name) noexcept {
  if (name == "EQ") return NumericOp::eq;
  if (name == "NEQ") return NumericOp::neq;
  if (name == "LT") return NumericOp::lt;
  if (name == "LE") return NumericOp::le;
  if (name == "GT") return NumericOp::gt;
  if (name == "GE") return NumericOp::ge;
  return std::nullopt;
}

std::string_view to_string(DateOp op) noexcept {
  switch (op) {
    case DateOp::on: return "ON";
    case DateOp::before: return "BEFORE";
    case DateOp::after: return "AFTER";
  }
  return "ON";
}

std::optional<DateOp> parse_date_op(std::string_view name) noexcept {
  if (name == "ON") return DateOp::on;
  if (name == "BEFORE") return DateOp::before;
  if (name == "AFTER") return DateOp::after;
  return std::nullopt;
}

std::string_view to_string(Warning::Kind kind) noexcept {
  switch (kind) {
    case Warning::Kind::unknown_property: return "unknown-property";
    case Warning::Kind::kind_mismatch: return "kind-mismatch";
    case Warning::Kind::not_a_candidate: return "not-a-candidate";
    case Warning::Kind::out_of_range: return "out-of-range";
  }
  return "unknown";
}

void check_spec(const FilterSpec& spec) {
  std::visit(overloaded{
                 [](const TextAnyOf& s) {
                   if (s.values.empty()) {
                     throw Error(Errc::invalid_argument,
                                 "text filter needs at least one value");
                   }
                 },
                 [](const NumericCmp&) {},
                 [](const NumericRange& s) {
                   if (s.high < s.low) {
                     throw Error(Errc::invalid_argument,
                                 "numeric range low exceeds high");
                   }
                 },
                 [](const DateCmp&) {},
                 [](const DateRange& s) {
                   if (s.end < s.start) {
                     throw Error(Errc::invalid_argument,
                                 "date range start is after end");
                   }
                 },
             },
             spec);
}

bool is_negated(const FilterSpec& spec) noexcept {
  return std::visit(overloaded{
                        [](const NumericCmp& s) {
                          return s.op == NumericOp::neq;
                        },
                        [](const auto& s) { return s.negated; },
                    },
                    spec);
}

std::optional<FilterSpec> negated_twin(const FilterSpec& spec) {
  return std::visit(
      overloaded{
          [](const NumericCmp& s) -> std::optional<FilterSpec> {
            if (s.op == NumericOp::eq) return NumericCmp{NumericOp::neq, s.operand};
            if (s.op == NumericOp::neq) return NumericCmp{NumericOp::eq, s.operand};
            return std::nullopt;
          },
          [](auto s) -> std::optional<FilterSpec> {
            s.negated = !s.negated;
            return s;
          },
      },
      spec);
}

FacetKind spec_facet_kind(const FilterSpec& spec) noexcept {
  switch (spec.index()) {
    case 0: return FacetKind::string;
    case 1:
    case 2: return FacetKind::numeric;
    default: return FacetKind::date;
  }
}

void FilterConfig::add(ResourceId property, FilterSpec spec) {
  check_spec(spec);
  if (clauses_.contains(property)) {
    throw Error(Errc::duplicate_clause,
                "property '" + property.str() + "' already has a filter");
  }
  clauses_.emplace(std::move(property), std::move(spec));
}

bool eval_cell(const FilterSpec& spec, std::span<const Value> values) {
  const bool any = std::any_of(values.begin(), values.end(),
                               [&](const Value& v) { return satisfies(spec, v); });
  return is_negated(spec) ? !any : any;
}

std::vector<ResourceId> matching_contributions(const ComparisonTable& table,
                                               const FilterConfig& config) {
  require_properties(table, config);
  std::vector<ResourceId> keep;
  for (const auto& c : table.contributions()) {
    const bool pass = std::all_of(
        config.clauses().begin(), config.clauses().end(), [&](const auto& kv) {
          return eval_cell(kv.second, table.cell(kv.first, c.id));
        });
    if (pass) keep.push_back(c.id);
  }
  return keep;
}

ComparisonTable apply_filters(const ComparisonTable& table,
                              const FilterConfig& config) {
  if (config.empty()) return table;
  return select_columns(table, matching_contributions(table, config));
}

std::vector<Warning> validate_config(const FilterConfig& config,
                                     const ComparisonTable& table,
                                     std::span<const FacetDescriptor> facets) {
  std::vector<Warning> out;
  for (const auto& [property, spec] : config.clauses()) {
    const FacetDescriptor* facet = find_facet(facets, property);
    if (!table.find_property(property) || !facet) {
      out.push_back({property, Warning::Kind::unknown_property,
                     "property '" + property.str() + "' is not in the comparison"});
      continue;
    }
    const FacetKind wanted = spec_facet_kind(spec);
    if (wanted != facet->kind) {
      out.push_back({property, Warning::Kind::kind_mismatch,
                     "a " + std::string(to_string(wanted)) +
                         " filter on " + std::string(to_string(facet->kind)) +
                         " property '" + property.str() + "'"});
      continue;
    }
    if (const auto* text = std::get_if<TextAnyOf>(&spec)) {
      std::set<std::string> missing;
      for (const auto& v : text->values) {
        const bool known = std::any_of(
            facet->candidates.begin(), facet->candidates.end(),
            [&](const Candidate& c) { return c.value_text == v; });
        if (!known) missing.insert(v);
      }
      if (!missing.empty()) {
        out.push_back({property, Warning::Kind::not_a_candidate,
                       "not among the candidates of '" + property.str() +
                           "': " + join(missing)});
      }
      continue;
    }
    if (!facet->min || !facet->max) continue;
    // Comparisons warn when the operand lies outside the facet bounds,
    // ranges only when they miss the bounds entirely.
    auto check = [&](const auto& lo, const auto& hi, const auto& low,
                     const auto& high, bool is_range) {
      const bool outside = is_range ? (high < lo || low > hi) : (low < lo || low > hi);
      if (!outside) return;
      const auto text = [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Decimal>) {
          return v.lexical();
        } else {
          return v.to_string();
        }
      };
      const std::string operand =
          is_range ? text(low) + ".." + text(high) : text(low);
      out.push_back({property, Warning::Kind::out_of_range,
                     operand + " outside [" + text(lo) + ", " + text(hi) + "]"});
    };
    if (wanted == FacetKind::numeric) {
      const Decimal lo = *facet->min->as_decimal();
      const Decimal hi = *facet->max->as_decimal();
      if (const auto* c = std::get_if<NumericCmp>(&spec)) {
        check(lo, hi, c->operand, c->operand, false);
      } else if (const auto* r = std::get_if<NumericRange>(&spec)) {
        check(lo, hi, r->low, r->high, true);
      }
    } else {
      const CalendarDate lo = *facet->min->as_date();
      const CalendarDate hi = *facet->max->as_date();
      if (const auto* c = std::get_if<DateCmp>(&spec)) {
        check(lo, hi, c->date, c->date, false);
      } else if (const auto* r = std::get_if<DateRange>(&spec)) {
        check(lo, hi, r->start, r->end, true);
      }
    }
  }
  return out;
}

}  // namespace kgfacet
