#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace kgfacet {

/// Proleptic Gregorian calendar date with day precision, written as
/// `YYYY-MM-DD` (years 0000..9999).
class CalendarDate {
 public:
  CalendarDate(std::chrono::year_month_day ymd);

  static std::optional<CalendarDate> parse(std::string_view text);
  /// Throws Error(invalid_value) on malformed or impossible dates.
  static CalendarDate from_string(std::string_view text);

  std::chrono::year_month_day ymd() const noexcept { return ymd_; }
  std::string to_string() const;

  friend bool operator==(const CalendarDate&, const CalendarDate&) = default;
  friend auto operator<=>(const CalendarDate& a, const CalendarDate& b) {
    return std::chrono::sys_days(a.ymd_) <=> std::chrono::sys_days(b.ymd_);
  }

 private:
  std::chrono::year_month_day ymd_;
};

}  // namespace kgfacet
