#include "kgfacet/calendar_date.hpp"

#include <cstdio>

#include "kgfacet/error.hpp"

namespace kgfacet {

namespace {

bool read_digits(std::string_view text, std::size_t pos, std::size_t count,
                 int& out) {
  out = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
    out = out * 10 + (text[i] - '0');
  }
  return true;
}

}  // namespace

CalendarDate::CalendarDate(std::chrono::year_month_day ymd) : ymd_(ymd) {
  if (!ymd.ok() || int(ymd.year()) < 0 || int(ymd.year()) > 9999) {
    throw Error(Errc::invalid_value, "invalid calendar date");
  }
}

std::optional<CalendarDate> CalendarDate::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    return std::nullopt;
  }
  int y = 0, m = 0, d = 0;
  if (!read_digits(text, 0, 4, y) || !read_digits(text, 5, 2, m) ||
      !read_digits(text, 8, 2, d)) {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year(y),
                                  std::chrono::month(unsigned(m)),
                                  std::chrono::day(unsigned(d))};
  if (!ymd.ok()) {
    return std::nullopt;
  }
  return CalendarDate(ymd);
}

CalendarDate CalendarDate::from_string(std::string_view text) {
  auto d = parse(text);
  if (!d) {
    throw Error(Errc::invalid_value,
                "not a YYYY-MM-DD date: '" + std::string(text) + "'");
  }
  return *d;
}

std::string CalendarDate::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd_.year()),
                unsigned(ymd_.month()), unsigned(ymd_.day()));
  return buf;
}

}  // namespace kgfacet
