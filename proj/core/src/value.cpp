#include "kgfacet/value.hpp"

#include <algorithm>

#include "kgfacet/error.hpp"

namespace kgfacet {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

}  // namespace

ResourceId::ResourceId(std::string id) : id_(std::move(id)) {
  if (!is_valid(id_)) {
    throw Error(Errc::invalid_id, "invalid resource id '" + id_ + "'");
  }
}

bool ResourceId::is_valid(std::string_view id) noexcept {
  return !id.empty() && std::none_of(id.begin(), id.end(), is_space);
}

std::string_view to_string(Datatype kind) noexcept {
  switch (kind) {
    case Datatype::text: return "text";
    case Datatype::number: return "number";
    case Datatype::date: return "date";
    case Datatype::link: return "link";
  }
  return "text";
}

std::optional<Datatype> parse_datatype(std::string_view name) noexcept {
  if (name == "text") return Datatype::text;
  if (name == "number") return Datatype::number;
  if (name == "date") return Datatype::date;
  if (name == "link") return Datatype::link;
  return std::nullopt;
}

Value Value::text(std::string text) {
  std::string lexical = text;
  return Value(TextValue{std::move(text)}, std::move(lexical));
}

Value Value::number(Decimal number) {
  std::string lexical = number.lexical();
  return Value(NumberValue{std::move(number)}, std::move(lexical));
}

Value Value::date(CalendarDate date) {
  return Value(DateValue{date}, date.to_string());
}

Value Value::link(ResourceId target, std::string label) {
  if (target.str().find('|') != std::string::npos) {
    throw Error(Errc::invalid_id,
                "link target may not contain '|': '" + target.str() + "'");
  }
  std::string lexical = target.str() + "|" + label;
  return Value(LinkValue{std::move(target), std::move(label)},
               std::move(lexical));
}

Value Value::from_lexical(Datatype kind, std::string_view lexical) {
  switch (kind) {
    case Datatype::text:
      return text(std::string(lexical));
    case Datatype::number:
      return number(Decimal::from_string(lexical));
    case Datatype::date:
      return date(CalendarDate::from_string(lexical));
    case Datatype::link: {
      const auto bar = lexical.find('|');
      if (bar == std::string_view::npos) {
        throw Error(Errc::invalid_value,
                    "link value must be 'target|label': '" +
                        std::string(lexical) + "'");
      }
      return link(ResourceId(std::string(lexical.substr(0, bar))),
                  std::string(lexical.substr(bar + 1)));
    }
  }
  throw Error(Errc::invalid_value, "unknown value kind");
}

const std::string& Value::display_text() const noexcept {
  if (const auto* l = get_if<LinkValue>()) {
    return l->label.empty() ? l->target.str() : l->label;
  }
  return lexical_;
}

std::optional<Decimal> Value::as_decimal() const {
  if (const auto* n = get_if<NumberValue>()) return n->number;
  if (const auto* t = get_if<TextValue>()) return Decimal::parse(t->text);
  return std::nullopt;
}

std::optional<CalendarDate> Value::as_date() const {
  if (const auto* d = get_if<DateValue>()) return d->date;
  if (const auto* t = get_if<TextValue>()) return CalendarDate::parse(t->text);
  return std::nullopt;
}

}  // namespace kgfacet
