#include "random_tables.hpp"

#include <array>
#include <string>

#include "kgfacet/facets.hpp"

namespace kgfacet::testing {

namespace {

constexpr std::array<const char*, 7> kTexts = {
    "alpha", "beta", "Gamma", "PCR", "pcr", "Antibody test", "x|y"};
constexpr std::array<const char*, 9> kNumbers = {
    "-3", "0", "1.5", "2", "10", "10.00", "99.99", "250", "-0.25"};
constexpr std::array<const char*, 7> kDates = {
    "2019-12-31", "2020-01-01", "2020-02-29", "2020-03-15",
    "2020-05-01", "2020-05-31", "2021-07-04"};

template <typename T, std::size_t N>
const T& pick(Rng& rng, const std::array<T, N>& pool) {
  return pool[std::uniform_int_distribution<std::size_t>(0, N - 1)(rng)];
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

enum class Family { text, number, date, link, numeric_text, mixed };

Value random_value(Rng& rng, Family family) {
  switch (family) {
    case Family::text:
      return Value::text(pick(rng, kTexts));
    case Family::number:
      return Value::number(Decimal::from_string(pick(rng, kNumbers)));
    case Family::date:
      return Value::date(CalendarDate::from_string(pick(rng, kDates)));
    case Family::link: {
      const auto n = uniform(rng, 0, 3);
      return Value::link(ResourceId("R" + std::to_string(n)),
                         n == 3 ? std::string() : std::string(pick(rng, kTexts)));
    }
    case Family::numeric_text:
      return Value::text(pick(rng, kNumbers));
    case Family::mixed:
      return random_value(rng, Family(uniform(rng, 0, 4)));
  }
  return Value::text("alpha");
}

Datatype template_for(Family family, Rng& rng) {
  switch (family) {
    case Family::text: return Datatype::text;
    case Family::number: return Datatype::number;
    case Family::date: return Datatype::date;
    case Family::link: return Datatype::link;
    default:
      return Datatype(uniform(rng, 0, 3));
  }
}

Decimal random_decimal(Rng& rng) {
  return Decimal::from_string(pick(rng, kNumbers));
}

CalendarDate random_date(Rng& rng) {
  return CalendarDate::from_string(pick(rng, kDates));
}

}  // namespace

std::shared_ptr<GraphStore> random_store(Rng& rng, const TableShape& shape) {
  auto store = std::make_shared<GraphStore>();
  const std::size_t n = uniform(rng, 1, shape.max_contributions);
  const std::size_t m = uniform(rng, 1, shape.max_properties);
  std::vector<Family> families;
  for (std::size_t p = 0; p < m; ++p) {
    const Family family = Family(uniform(rng, 0, 5));
    families.push_back(family);
    const ResourceId pid("P" + std::to_string(p));
    if (coin(rng, 0.6)) {
      store->register_template(PropertyTemplate{
          pid, template_for(family, rng), "prop " + std::to_string(p % 4)});
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    const ResourceId cid("C" + std::to_string(c));
    bool any = false;
    for (std::size_t p = 0; p < m; ++p) {
      // Guarantee every contribution at least one statement.
      if (!coin(rng, 0.6) && !(p + 1 == m && !any)) continue;
      const std::size_t k = uniform(rng, 1, shape.max_values);
      for (std::size_t v = 0; v < k; ++v) {
        store->add_statement(Statement{cid, ResourceId("P" + std::to_string(p)),
                                       random_value(rng, families[p])});
      }
      any = true;
    }
  }
  return store;
}

ComparisonTable random_table(Rng& rng, const TableShape& shape) {
  auto store = random_store(rng, shape);
  std::vector<ResourceId> ids;
  for (const auto& s : store->match_statements(std::nullopt, std::nullopt,
                                               std::nullopt)) {
    if (ids.empty() || ids.back() != s.subject) ids.push_back(s.subject);
  }
  std::shuffle(ids.begin(), ids.end(), rng);
  return build_comparison(*store, ids);
}

FilterSpec random_spec(Rng& rng) {
  return random_spec_for(rng, FacetKind(uniform(rng, 0, 2)));
}

FilterSpec random_spec_for(Rng& rng, FacetKind kind) {
  const bool negated = coin(rng);
  const auto text_spec = [&] {
    TextAnyOf s;
    const std::size_t k = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < k; ++i) {
      // Numeric and date facets get their own lexicals as candidate texts.
      switch (kind) {
        case FacetKind::string: s.values.insert(pick(rng, kTexts)); break;
        case FacetKind::numeric: s.values.insert(pick(rng, kNumbers)); break;
        case FacetKind::date: s.values.insert(pick(rng, kDates)); break;
      }
    }
    s.negated = negated;
    return FilterSpec(s);
  };
  switch (kind) {
    case FacetKind::string:
      return text_spec();
    case FacetKind::numeric:
      switch (uniform(rng, 0, 2)) {
        case 0: return text_spec();
        case 1:
          return NumericCmp{NumericOp(uniform(rng, 0, 5)), random_decimal(rng)};
        default: {
          auto a = random_decimal(rng), b = random_decimal(rng);
          if (b < a) std::swap(a, b);
          return NumericRange{a, b, negated};
        }
      }
    case FacetKind::date:
      switch (uniform(rng, 0, 2)) {
        case 0: return text_spec();
        case 1: return DateCmp{DateOp(uniform(rng, 0, 2)), random_date(rng), negated};
        default: {
          auto a = random_date(rng), b = random_date(rng);
          if (b < a) std::swap(a, b);
          return DateRange{a, b, negated};
        }
      }
  }
  return text_spec();
}

FilterConfig random_config(Rng& rng, const ComparisonTable& table,
                           bool kind_consistent) {
  FilterConfig config;
  const auto facets = kind_consistent ? infer_facets(table)
                                      : std::vector<FacetDescriptor>{};
  for (std::size_t i = 0; i < table.properties().size(); ++i) {
    if (!coin(rng, 0.4)) continue;
    const auto& row = table.properties()[i];
    config.add(row.id, kind_consistent ? random_spec_for(rng, facets[i].kind)
                                       : random_spec(rng));
  }
  return config;
}

const PropertyRow* unfiltered_property(Rng& rng, const ComparisonTable& table,
                                       const FilterConfig& config) {
  std::vector<const PropertyRow*> free;
  for (const auto& p : table.properties()) {
    if (!config.clauses().contains(p.id)) free.push_back(&p);
  }
  if (free.empty()) return nullptr;
  return free[uniform(rng, 0, free.size() - 1)];
}

}  // namespace kgfacet::testing
