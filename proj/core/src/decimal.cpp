#include "kgfacet/decimal.hpp"

#include <algorithm>

#include "kgfacet/error.hpp"

namespace kgfacet {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Magnitude comparison of two normalized (integer, fraction) pairs.
std::weak_ordering compare_magnitude(const std::string& ai,
                                     const std::string& af,
                                     const std::string& bi,
                                     const std::string& bf) {
  if (ai.size() != bi.size()) {
    return ai.size() <=> bi.size();
  }
  if (auto c = ai.compare(bi); c != 0) {
    return c <=> 0;
  }
  const std::size_t n = std::max(af.size(), bf.size());
  for (std::size_t i = 0; i < n; ++i) {
    const char x = i < af.size() ? af[i] : '0';
    const char y = i < bf.size() ? bf[i] : '0';
    if (x != y) return x <=> y;
  }
  return std::weak_ordering::equivalent;
}

}  // namespace

std::optional<Decimal> Decimal::parse(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  const std::size_t int_begin = pos;
  while (pos < text.size() && is_digit(text[pos])) ++pos;
  std::string_view int_part = text.substr(int_begin, pos - int_begin);
  std::string_view frac_part;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t frac_begin = pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    frac_part = text.substr(frac_begin, pos - frac_begin);
  }
  if (pos != text.size() || (int_part.empty() && frac_part.empty())) {
    return std::nullopt;
  }

  Decimal d;
  d.lexical_ = std::string(text);
  const auto first_nonzero = int_part.find_first_not_of('0');
  d.integer_ = first_nonzero == std::string_view::npos
                   ? std::string()
                   : std::string(int_part.substr(first_nonzero));
  const auto last_nonzero = frac_part.find_last_not_of('0');
  d.fraction_ = last_nonzero == std::string_view::npos
                    ? std::string()
                    : std::string(frac_part.substr(0, last_nonzero + 1));
  d.negative_ = negative && !(d.integer_.empty() && d.fraction_.empty());
  return d;
}

Decimal Decimal::from_string(std::string_view text) {
  auto d = parse(text);
  if (!d) {
    throw Error(Errc::invalid_value,
                "not a decimal number: '" + std::string(text) + "'");
  }
  return *std::move(d);
}

bool operator==(const Decimal& a, const Decimal& b) noexcept {
  return a.negative_ == b.negative_ && a.integer_ == b.integer_ &&
         a.fraction_ == b.fraction_;
}

std::weak_ordering operator<=>(const Decimal& a, const Decimal& b) noexcept {
  if (a.negative_ != b.negative_) {
    return a.negative_ ? std::weak_ordering::less
                       : std::weak_ordering::greater;
  }
  auto mag = compare_magnitude(a.integer_, a.fraction_, b.integer_,
                               b.fraction_);
  if (a.negative_) {
    return 0 <=> mag;
  }
  return mag;
}

}  // namespace kgfacet
