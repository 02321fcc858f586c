#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "kgfacet/calendar_date.hpp"
#include "kgfacet/decimal.hpp"

namespace kgfacet {

/// Opaque node identifier: non-empty and free of whitespace.
class ResourceId {
 public:
  /// Throws Error(invalid_id) when `id` is empty or contains whitespace.
  explicit ResourceId(std::string id);

  static bool is_valid(std::string_view id) noexcept;

  const std::string& str() const noexcept { return id_; }

  friend bool operator==(const ResourceId&, const ResourceId&) = default;
  friend auto operator<=>(const ResourceId&, const ResourceId&) = default;

 private:
  std::string id_;
};

enum class Datatype { text, number, date, link };

std::string_view to_string(Datatype kind) noexcept;
std::optional<Datatype> parse_datatype(std::string_view name) noexcept;

struct TextValue {
  std::string text;
};
struct NumberValue {
  Decimal number;
};
struct DateValue {
  CalendarDate date;
};
struct LinkValue {
  ResourceId target;
  std::string label;
};

/// Typed statement object. Exactly one of text, number, date or link.
///
/// The canonical text (`lexical()`) is the string form used in dumps and
/// snapshots: the text itself, the decimal as written, `YYYY-MM-DD`, or
/// `target|label` for links. Equality and ordering are defined on
/// (canonical text, kind).
class Value {
 public:
  static Value text(std::string text);
  static Value number(Decimal number);
  static Value date(CalendarDate date);
  /// Throws Error(invalid_id) if the target contains '|'.
  static Value link(ResourceId target, std::string label);

  /// Parses the canonical text of a value of the given kind. Throws
  /// Error(invalid_value) or Error(invalid_id).
  static Value from_lexical(Datatype kind, std::string_view lexical);

  Datatype kind() const noexcept { return Datatype(payload_.index()); }
  const std::string& lexical() const noexcept { return lexical_; }

  /// Text shown to users and matched by text filters; a link shows its
  /// label (its target id when the label is empty).
  const std::string& display_text() const noexcept;

  /// The numeric reading of this value: Number values, or Text values whose
  /// content is a plain decimal.
  std::optional<Decimal> as_decimal() const;
  /// The calendar reading: Date values, or Text values written YYYY-MM-DD.
  std::optional<CalendarDate> as_date() const;

  template <typename T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&payload_);
  }

  friend bool operator==(const Value& a, const Value& b) noexcept {
    return a.kind() == b.kind() && a.lexical_ == b.lexical_;
  }
  friend std::strong_ordering operator<=>(const Value& a,
                                          const Value& b) noexcept {
    if (auto c = a.lexical_ <=> b.lexical_; c != 0) return c;
    return a.payload_.index() <=> b.payload_.index();
  }

 private:
  using Payload = std::variant<TextValue, NumberValue, DateValue, LinkValue>;

  Value(Payload payload, std::string lexical)
      : payload_(std::move(payload)), lexical_(std::move(lexical)) {}

  Payload payload_;
  std::string lexical_;
};

}  // namespace kgfacet
