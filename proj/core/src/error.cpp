#include "kgfacet/error.hpp"

namespace kgfacet {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_id: return "invalid-id";
    case Errc::invalid_value: return "invalid-value";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::template_conflict: return "template-conflict";
    case Errc::io_failure: return "io-failure";
    case Errc::unknown_contribution: return "unknown-contribution";
    case Errc::duplicate_contribution: return "duplicate-contribution";
    case Errc::unknown_contribution_in_projection:
      return "unknown-contribution-in-projection";
    case Errc::empty_projection: return "empty-projection";
    case Errc::wrong_facet_kind: return "wrong-facet-kind";
    case Errc::unknown_property: return "unknown-property";
    case Errc::syntax_error: return "syntax-error";
    case Errc::ambiguous_label: return "ambiguous-label";
    case Errc::duplicate_clause: return "duplicate-clause";
    case Errc::invalid_snapshot: return "invalid-snapshot";
    case Errc::storage_failure: return "storage-failure";
    case Errc::hash_collision: return "hash-collision";
    case Errc::not_found: return "not-found";
    case Errc::malformed_id: return "malformed-id";
    case Errc::integrity_failure: return "integrity-failure";
    case Errc::ingest_failure: return "ingest-failure";
    case Errc::bind_failure: return "bind-failure";
  }
  return "unknown";
}

namespace {

std::string describe(std::size_t position,
                     const std::vector<std::string>& expected,
                     const std::string& detail) {
  std::string out = "syntax error at position " + std::to_string(position);
  if (!detail.empty()) {
    out += ": " + detail;
  }
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position,
                         std::vector<std::string> expected,
                         const std::string& detail)
    : Error(Errc::syntax_error, describe(position, expected, detail)),
      position_(position),
      expected_(std::move(expected)) {}

}  // namespace kgfacet
