#include "kgfacet/service.hpp"

#include <map>
#include <set>

#include "kgfacet/canonical_json.hpp"
#include "kgfacet/comparison.hpp"
#include "kgfacet/facets.hpp"
#include "kgfacet/filter_expr.hpp"
#include "kgfacet/filters.hpp"

namespace kgfacet {

namespace {

using canonical::Json;
using canonical::dump_canonical;

enum class Route { health, compare, autocomplete, save, get_saved, list_saved };

constexpr std::size_t kDefaultLimit = 10;
constexpr std::size_t kMaxLimit = 100;

ApiError invalid_request(std::string message, int status = 400) {
  return {"invalid-request", std::move(message), status};
}

ApiError map_error(const Error& e, Route route) {
  const std::string message = e.what();
  switch (e.code()) {
    case Errc::unknown_contribution:
      return {"unknown-contribution", message, 404};
    case Errc::unknown_property:
      return {"unknown-property", message, route == Route::autocomplete ? 404 : 422};
    case Errc::ambiguous_label:
    case Errc::wrong_facet_kind:
      return invalid_request(message, 422);
    case Errc::syntax_error:
      return {"syntax-error", message, 400};
    case Errc::not_found:
      return {"not-found", message, 404};
    case Errc::malformed_id:
      return {"malformed-id", message, 400};
    case Errc::hash_collision:
      return {"conflict", message, 409};
    case Errc::invalid_id:
    case Errc::invalid_value:
    case Errc::invalid_argument:
    case Errc::duplicate_contribution:
    case Errc::duplicate_clause:
    case Errc::empty_projection:
    case Errc::unknown_contribution_in_projection:
      return invalid_request(message);
    default:
      return {"internal", message, 500};
  }
}

// Thrown inside handlers to short-circuit into an envelope.
struct RequestRejected {
  ApiError error;
};

Json parse_body(std::string_view body) {
  Json tree = Json::parse(body, nullptr, false);
  if (tree.is_discarded() || !tree.is_object()) {
    throw RequestRejected{invalid_request("request body must be a JSON object")};
  }
  return tree;
}

std::vector<ResourceId> contributions_of(const Json& request) {
  auto it = request.find("contributions");
  if (it == request.end() || !it->is_array() || it->empty()) {
    throw RequestRejected{
        invalid_request("'contributions' must be a non-empty array of ids")};
  }
  std::vector<ResourceId> ids;
  for (const auto& v : *it) {
    if (!v.is_string() || !ResourceId::is_valid(v.get<std::string>())) {
      throw RequestRejected{invalid_request("invalid contribution id in 'contributions'")};
    }
    ids.emplace_back(v.get<std::string>());
  }
  return ids;
}

// `filter` may be omitted, null, a canonical config object, or an
// expression string.
FilterConfig filter_of(const Json& request, const ComparisonTable& table) {
  auto it = request.find("filter");
  if (it == request.end() || it->is_null()) return {};
  if (it->is_string()) return parse_filter_expr(it->get<std::string>(), table);
  if (it->is_object()) return canonical::config_from_json(*it);
  throw RequestRejected{invalid_request("'filter' must be an object or an expression string")};
}

struct Evaluated {
  std::vector<ResourceId> source;
  ComparisonTable full;
  FilterConfig config;
  ComparisonTable filtered;
};

Evaluated evaluate(const GraphStore& graph, const Json& request) {
  Evaluated out;
  out.source = contributions_of(request);
  out.full = build_comparison(graph, out.source);
  out.config = filter_of(request, out.full);
  out.filtered = apply_filters(out.full, out.config);
  return out;
}

std::map<std::string, std::size_t> candidate_counts(const ComparisonTable& table,
                                                    const ResourceId& property) {
  std::map<std::string, std::size_t> counts;
  for (const auto& c : table.contributions()) {
    std::set<std::string> texts;
    for (const auto& v : table.cell(property, c.id)) texts.insert(v.display_text());
    for (const auto& t : texts) ++counts[t];
  }
  return counts;
}

Json annotated_facets(const ComparisonTable& full, const ComparisonTable& filtered) {
  const auto facets = infer_facets(full);
  Json out = Json::array();
  for (const auto& f : facets) {
    Json tree = canonical::to_json(f);
    if (f.kind == FacetKind::string) {
      const auto counts = candidate_counts(filtered, f.property);
      for (auto& c : tree["candidates"]) {
        auto hit = counts.find(c["value"].get<std::string>());
        c["filtered_count"] = hit == counts.end() ? 0 : hit->second;
      }
    }
    out.push_back(std::move(tree));
  }
  return out;
}

Json warnings_of(const Evaluated& e) {
  const auto facets = infer_facets(e.full);
  Json out = Json::array();
  for (const auto& w : validate_config(e.config, e.full, facets)) {
    out.push_back({{"property", w.property.str()},
                   {"kind", to_string(w.kind)},
                   {"message", w.message}});
  }
  return out;
}

std::size_t limit_of(const Json& request) {
  auto it = request.find("limit");
  if (it == request.end() || it->is_null()) return kDefaultLimit;
  if (!it->is_number_integer() || it->get<long long>() < 1 ||
      it->get<long long>() > static_cast<long long>(kMaxLimit)) {
    throw RequestRejected{invalid_request("'limit' must be an integer in [1, 100]")};
  }
  return it->get<std::size_t>();
}

template <typename Fn>
ApiResponse guarded(Route route, Fn&& fn) {
  try {
    return fn();
  } catch (const RequestRejected& r) {
    return error_response(r.error);
  } catch (const Error& e) {
    return error_response(map_error(e, route));
  } catch (const std::exception& e) {
    return error_response({"internal", e.what(), 500});
  }
}

ApiResponse ok(const Json& tree) { return {200, dump_canonical(tree)}; }

}  // namespace

ApiResponse error_response(const ApiError& error) {
  return {error.http_status,
          dump_canonical({{"error", {{"code", error.code}, {"message", error.message}}}})};
}

ApiService::ApiService(std::shared_ptr<const GraphStore> graph,
                       SnapshotStore snapshots, std::string base_url)
    : graph_(std::move(graph)),
      snapshots_(std::move(snapshots)),
      base_url_(std::move(base_url)) {}

ApiResponse ApiService::health() const {
  return guarded(Route::health, [&] {
    return ok({{"status", "ok"}, {"statements", graph_->size()}});
  });
}

ApiResponse ApiService::compare(std::string_view body) const {
  return guarded(Route::compare, [&] {
    const Json request = parse_body(body);
    const Evaluated e = evaluate(*graph_, request);
    return ok({{"table", canonical::to_json(e.filtered)},
               {"facets", annotated_facets(e.full, e.filtered)},
               {"active_filters", canonical::to_json(e.config)},
               {"warnings", warnings_of(e)}});
  });
}

ApiResponse ApiService::autocomplete(std::string_view body) const {
  return guarded(Route::autocomplete, [&] {
    const Json request = parse_body(body);
    const auto ids = contributions_of(request);
    auto prop = request.find("property");
    if (prop == request.end() || !prop->is_string()) {
      throw RequestRejected{invalid_request("'property' must be a string")};
    }
    std::string prefix;
    if (auto p = request.find("prefix"); p != request.end() && !p->is_null()) {
      if (!p->is_string()) {
        throw RequestRejected{invalid_request("'prefix' must be a string")};
      }
      prefix = p->get<std::string>();
    }
    const std::size_t limit = limit_of(request);
    const ComparisonTable table = build_comparison(*graph_, ids);
    const PropertyRow& row = resolve_property(table, prop->get<std::string>());
    const auto facets = infer_facets(table);
    const FacetDescriptor* facet = find_facet(facets, row.id);
    return ok(Json(kgfacet::autocomplete(*facet, prefix, limit)));
  });
}

ApiResponse ApiService::save(std::string_view body) {
  return guarded(Route::save, [&] {
    const Json request = parse_body(body);
    const Evaluated e = evaluate(*graph_, request);
    const SavedComparison saved = snapshots_.save(e.filtered, e.config, e.source);
    return ok({{"id", saved.id}, {"url", permalink(base_url_, saved.id)}});
  });
}

ApiResponse ApiService::get_saved(std::string_view id) const {
  return guarded(Route::get_saved, [&] {
    const SavedComparison saved = snapshots_.load(id);
    // The stored bytes are already canonical; embed them verbatim.
    std::string body = "{\"created_at\":" + dump_canonical(saved.created_at) +
                       ",\"id\":" + dump_canonical(saved.id) +
                       ",\"snapshot\":" + saved.bytes + "}";
    return ApiResponse{200, std::move(body)};
  });
}

ApiResponse ApiService::list_saved() const {
  return guarded(Route::list_saved, [&] {
    Json entries = Json::array();
    for (const auto& e : snapshots_.list_saved()) {
      entries.push_back({{"id", e.id}, {"created_at", e.created_at}});
    }
    return ok({{"saved", std::move(entries)}});
  });
}

ApiResponse ApiService::dispatch(std::string_view method, std::string_view path,
                                 std::string_view body) {
  if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  auto wrong_method = [&] {
    return error_response(invalid_request(
        "method " + std::string(method) + " not allowed on " + std::string(path), 405));
  };
  if (path == "/health") {
    return method == "GET" ? health() : wrong_method();
  }
  if (path == "/compare") {
    return method == "POST" ? compare(body) : wrong_method();
  }
  if (path == "/autocomplete") {
    return method == "POST" ? autocomplete(body) : wrong_method();
  }
  if (path == "/saved") {
    if (method == "POST") return save(body);
    if (method == "GET") return list_saved();
    return wrong_method();
  }
  constexpr std::string_view saved_prefix = "/saved/";
  if (path.starts_with(saved_prefix)) {
    return method == "GET" ? get_saved(path.substr(saved_prefix.size()))
                           : wrong_method();
  }
  return error_response({"not-found", "no route for " + std::string(path), 404});
}

}  // namespace kgfacet
