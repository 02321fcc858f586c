#include "kgfacet/facets.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kgfacet/error.hpp"

namespace kgfacet {

namespace {

char fold(char c) { return c >= 'A' && c <= 'Z' ? char(c - 'A' + 'a') : c; }

std::string folded(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), fold);
  return out;
}

template <typename Fn>
void for_each_value(const ComparisonTable& table, const ResourceId& property,
                    Fn&& fn) {
  for (const auto& c : table.contributions()) {
    for (const auto& v : table.cell(property, c.id)) fn(v);
  }
}

FacetDescriptor describe(const ComparisonTable& table,
                         const PropertyRow& row,
                         std::optional<Datatype> declared) {
  FacetDescriptor facet{row.id, resolve_facet_kind(table, row.id, declared),
                        {}, std::nullopt, std::nullopt};
  switch (facet.kind) {
    case FacetKind::string: {
      std::map<std::string, std::size_t> counts;
      for (const auto& c : table.contributions()) {
        std::set<std::string> texts;
        for (const auto& v : table.cell(row.id, c.id)) {
          texts.insert(v.display_text());
        }
        for (const auto& t : texts) ++counts[t];
      }
      for (auto& [text, count] : counts) {
        facet.candidates.push_back({text, count});
      }
      std::stable_sort(facet.candidates.begin(), facet.candidates.end(),
                       [](const Candidate& a, const Candidate& b) {
                         return a.count > b.count;
                       });
      break;
    }
    case FacetKind::numeric: {
      std::optional<Decimal> lo, hi;
      for_each_value(table, row.id, [&](const Value& v) {
        auto d = v.as_decimal();
        if (!d) return;
        if (!lo || *d < *lo) lo = d;
        if (!hi || *d > *hi) hi = d;
      });
      if (lo) facet.min = Value::number(*lo);
      if (hi) facet.max = Value::number(*hi);
      break;
    }
    case FacetKind::date: {
      std::optional<CalendarDate> lo, hi;
      for_each_value(table, row.id, [&](const Value& v) {
        auto d = v.as_date();
        if (!d) return;
        if (!lo || *d < *lo) lo = d;
        if (!hi || *d > *hi) hi = d;
      });
      if (lo) facet.min = Value::date(*lo);
      if (hi) facet.max = Value::date(*hi);
      break;
    }
  }
  return facet;
}

}  // namespace

std::string_view to_string(FacetKind kind) noexcept {
  switch (kind) {
    case FacetKind::string: return "string";
    case FacetKind::numeric: return "numeric";
    case FacetKind::date: return "date";
  }
  return "string";
}

std::optional<FacetKind> parse_facet_kind(std::string_view name) noexcept {
  if (name == "string") return FacetKind::string;
  if (name == "numeric") return FacetKind::numeric;
  if (name == "date") return FacetKind::date;
  return std::nullopt;
}

FacetKind resolve_facet_kind(const ComparisonTable& table,
                             const ResourceId& property,
                             std::optional<Datatype> declared) {
  if (declared) {
    switch (*declared) {
      case Datatype::number: return FacetKind::numeric;
      case Datatype::date: return FacetKind::date;
      case Datatype::text:
      case Datatype::link: return FacetKind::string;
    }
  }
  bool all_numeric = true;
  bool all_dates = true;
  bool any = false;
  for_each_value(table, property, [&](const Value& v) {
    any = true;
    if (v.kind() == Datatype::link || !v.as_decimal()) all_numeric = false;
    if (v.kind() == Datatype::link || !v.as_date()) all_dates = false;
  });
  if (any && all_numeric) return FacetKind::numeric;
  if (any && all_dates) return FacetKind::date;
  return FacetKind::string;
}

std::vector<FacetDescriptor> infer_facets(const ComparisonTable& table) {
  std::vector<FacetDescriptor> out;
  out.reserve(table.properties().size());
  for (const auto& row : table.properties()) {
    out.push_back(describe(table, row, row.datatype));
  }
  return out;
}

std::vector<FacetDescriptor> infer_facets(
    const ComparisonTable& table, std::span<const PropertyTemplate> templates) {
  std::vector<FacetDescriptor> out;
  out.reserve(table.properties().size());
  for (const auto& row : table.properties()) {
    std::optional<Datatype> declared;
    for (const auto& t : templates) {
      if (t.predicate == row.id) declared = t.datatype;
    }
    out.push_back(describe(table, row, declared));
  }
  return out;
}

std::vector<std::string> autocomplete(const FacetDescriptor& facet,
                                      std::string_view prefix,
                                      std::size_t limit) {
  if (facet.kind != FacetKind::string) {
    throw Error(Errc::wrong_facet_kind,
                "autocomplete needs a string facet; '" + facet.property.str() +
                    "' is " + std::string(to_string(facet.kind)));
  }
  if (limit == 0) {
    throw Error(Errc::invalid_argument, "autocomplete limit must be >= 1");
  }
  const std::string needle = folded(prefix);
  struct Hit {
    const Candidate* candidate;
    std::string key;
  };
  std::vector<Hit> hits;
  for (const auto& c : facet.candidates) {
    std::string key = folded(c.value_text);
    if (key.starts_with(needle)) hits.push_back({&c, std::move(key)});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.candidate->count != b.candidate->count) {
      return a.candidate->count > b.candidate->count;
    }
    if (a.key != b.key) return a.key < b.key;
    return a.candidate->value_text < b.candidate->value_text;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < hits.size() && i < limit; ++i) {
    out.push_back(hits[i].candidate->value_text);
  }
  return out;
}

const FacetDescriptor* find_facet(std::span<const FacetDescriptor> facets,
                                  const ResourceId& property) {
  for (const auto& f : facets) {
    if (f.property == property) return &f;
  }
  return nullptr;
}

}  // namespace kgfacet
