#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace kgfacet {

/// Arbitrary-precision decimal that keeps the exact text it was parsed from.
///
/// Accepted syntax is `[+-]?(digits[.digits*] | .digits)`; exponents are not
/// accepted. Comparison is numeric ("1.50" == "1.5"), while `lexical()`
/// returns the original text unchanged.
class Decimal {
 public:
  /// Returns nullopt when `text` is not a plain decimal.
  static std::optional<Decimal> parse(std::string_view text);

  /// Throws Error(invalid_value) on malformed input.
  static Decimal from_string(std::string_view text);

  const std::string& lexical() const noexcept { return lexical_; }

  friend bool operator==(const Decimal& a, const Decimal& b) noexcept;
  friend std::weak_ordering operator<=>(const Decimal& a,
                                        const Decimal& b) noexcept;

 private:
  Decimal() = default;

  std::string lexical_;
  bool negative_ = false;
  std::string integer_;   // no leading zeros; empty for zero
  std::string fraction_;  // no trailing zeros
};

}  // namespace kgfacet
