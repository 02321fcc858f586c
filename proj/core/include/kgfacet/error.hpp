#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgfacet {

enum class Errc {
  invalid_id,
  invalid_value,
  invalid_argument,
  template_conflict,
  io_failure,
  unknown_contribution,
  duplicate_contribution,
  unknown_contribution_in_projection,
  empty_projection,
  wrong_facet_kind,
  unknown_property,
  syntax_error,
  ambiguous_label,
  duplicate_clause,
  invalid_snapshot,
  storage_failure,
  hash_collision,
  not_found,
  malformed_id,
  integrity_failure,
  ingest_failure,
  bind_failure,
};

/// Kebab-case name of an error code, e.g. "unknown-property".
std::string_view to_string(Errc code) noexcept;

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by the filter-expression parser. `position` is a 0-based byte
/// offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected,
              const std::string& detail);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

}  // namespace kgfacet
