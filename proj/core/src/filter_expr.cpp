#include "kgfacet/filter_expr.hpp"

#include <optional>
#include <vector>

#include "kgfacet/error.hpp"

namespace kgfacet {

namespace {

enum class Op { eq, neq, lt, le, gt, ge, not_lt, not_gt, in, not_in };

std::string_view op_text(Op op) {
  switch (op) {
    case Op::eq: return "=";
    case Op::neq: return "!=";
    case Op::lt: return "<";
    case Op::le: return "<=";
    case Op::gt: return ">";
    case Op::ge: return ">=";
    case Op::not_lt: return "!<";
    case Op::not_gt: return "!>";
    case Op::in: return "in";
    case Op::not_in: return "not in";
  }
  return "?";
}

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Characters that end a bare property name.
bool ends_property(char c) {
  switch (c) {
    case '=': case '!': case '<': case '>': case ';': case '[': case ']':
    case '|': case '"':
      return true;
    default:
      return false;
  }
}

struct Scalar {
  std::string text;
  std::size_t position;
};

class Parser {
 public:
  Parser(std::string_view text, const ComparisonTable& table)
      : text_(text), table_(table) {}

  FilterConfig parse() {
    FilterConfig config;
    while (true) {
      skip_ws();
      parse_clause(config);
      skip_ws();
      if (at_end()) break;
      if (peek() != ';') {
        fail({"';'", "end of input"}, "unexpected '" + std::string(1, peek()) + "'");
      }
      ++pos_;
    }
    return config;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool looking_at(std::string_view s) const {
    return text_.substr(pos_).starts_with(s);
  }

  void skip_ws() {
    while (!at_end() && is_ws(text_[pos_])) ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected,
                         const std::string& detail = {}) const {
    fail_at(pos_, std::move(expected), detail);
  }
  [[noreturn]] static void fail_at(std::size_t pos,
                                   std::vector<std::string> expected,
                                   const std::string& detail = {}) {
    throw SyntaxError(pos, std::move(expected), detail);
  }

  std::string quoted() {
    const std::size_t start = pos_;
    ++pos_;  // opening quote
    std::string out;
    while (!at_end()) {
      char c = text_[pos_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (at_end()) break;
        c = text_[pos_++];
        if (c != '"' && c != '\\') {
          fail_at(pos_ - 1, {"'\\\"'", "'\\\\'"}, "unknown escape");
        }
      }
      out.push_back(c);
    }
    fail_at(start, {"closing '\"'"}, "unterminated string");
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
    return s;
  }

  // Bare property names may contain spaces and end at an operator character
  // or at a standalone `in` / `not in` word.
  std::string property_name() {
    if (peek() == '"') {
      const std::size_t start = pos_;
      std::string name = quoted();
      if (name.empty()) fail_at(start, {"property name"}, "empty property name");
      return name;
    }
    const std::size_t start = pos_;
    std::size_t end = start;
    while (end < text_.size() && !ends_property(text_[end])) ++end;

    // Locate word boundaries in [start, end).
    struct Word {
      std::size_t begin, end;
    };
    std::vector<Word> words;
    for (std::size_t i = start; i < end;) {
      while (i < end && is_ws(text_[i])) ++i;
      if (i >= end) break;
      const std::size_t b = i;
      while (i < end && !is_ws(text_[i])) ++i;
      words.push_back({b, i});
    }
    auto word = [&](std::size_t i) {
      return text_.substr(words[i].begin, words[i].end - words[i].begin);
    };
    std::vector<std::size_t> splits;
    for (std::size_t i = 1; i < words.size(); ++i) {
      if (word(i) == "in" ||
          (word(i) == "not" && i + 1 < words.size() && word(i + 1) == "in")) {
        splits.push_back(words[i].begin);
      }
    }
    // Prefer the first split whose prefix names a property, so labels such
    // as "time in hospital" work unquoted.
    std::size_t split = splits.empty() ? end : splits.front();
    auto prefix = [&](std::size_t at) {
      return trim(text_.substr(start, at - start));
    };
    if (!splits.empty()) {
      bool resolved = false;
      for (std::size_t at : splits) {
        if (names_property(prefix(at))) {
          split = at;
          resolved = true;
          break;
        }
      }
      if (!resolved && end < text_.size() && names_property(prefix(end))) {
        split = end;
      }
    }
    std::string_view name = trim(text_.substr(start, split - start));
    if (name.empty()) fail_at(start, {"property name"});
    pos_ = split;
    return std::string(name);
  }

  bool names_property(std::string_view name) const {
    for (const auto& p : table_.properties()) {
      if (p.id.str() == name || p.label == name) return true;
    }
    return false;
  }

  std::optional<Op> keyword_op() {
    auto word_at = [&](std::size_t p, std::string_view w) {
      return text_.substr(p).starts_with(w) &&
             (p + w.size() >= text_.size() || is_ws(text_[p + w.size()]) ||
              text_[p + w.size()] == '"');
    };
    if (word_at(pos_, "in")) {
      pos_ += 2;
      return Op::in;
    }
    if (word_at(pos_, "not")) {
      std::size_t p = pos_ + 3;
      while (p < text_.size() && is_ws(text_[p])) ++p;
      if (word_at(p, "in")) {
        pos_ = p + 2;
        return Op::not_in;
      }
    }
    return std::nullopt;
  }

  Op operator_token() {
    static constexpr std::pair<std::string_view, Op> symbols[] = {
        {"!=", Op::neq}, {"!<", Op::not_lt}, {"!>", Op::not_gt},
        {"<=", Op::le},  {">=", Op::ge},     {"=", Op::eq},
        {"<", Op::lt},   {">", Op::gt},
    };
    for (const auto& [sym, op] : symbols) {
      if (looking_at(sym)) {
        pos_ += sym.size();
        return op;
      }
    }
    if (auto op = keyword_op()) return *op;
    fail({"'='", "'!='", "'<'", "'<='", "'>'", "'>='", "'!<'", "'!>'", "'in'",
          "'not in'"});
  }

  // Reads a scalar; a bare scalar runs until one of `stops` (or "..", when
  // `stop_at_range` is set, or whitespace for a single `word`) and is trimmed.
  Scalar scalar(std::string_view stops, bool stop_at_range = false,
                bool word = false) {
    skip_ws();
    const std::size_t start = pos_;
    if (peek() == '"') {
      return {quoted(), start};
    }
    std::size_t end = pos_;
    while (end < text_.size() &&
           stops.find(text_[end]) == std::string_view::npos &&
           !(stop_at_range && text_.substr(end).starts_with("..")) &&
           !(word && is_ws(text_[end]))) {
      ++end;
    }
    std::string_view raw = trim(text_.substr(start, end - start));
    if (raw.empty()) fail_at(start, {"value"});
    pos_ = end;
    return {std::string(raw), start};
  }

  std::set<std::string> value_set() {
    std::set<std::string> values;
    ++pos_;  // '['
    while (true) {
      values.insert(scalar("|];").text);
      skip_ws();
      if (peek() == '|') {
        ++pos_;
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        return values;
      }
      fail({"'|'", "']'"});
    }
  }

  static Decimal as_decimal(const Scalar& s) {
    auto d = Decimal::parse(s.text);
    if (!d) fail_at(s.position, {"number"}, "'" + s.text + "' is not a number");
    return *d;
  }

  static CalendarDate as_date(const Scalar& s) {
    auto d = CalendarDate::parse(s.text);
    if (!d) {
      fail_at(s.position, {"date (YYYY-MM-DD)"},
              "'" + s.text + "' is not a valid date");
    }
    return *d;
  }

  void parse_clause(FilterConfig& config) {
    const std::size_t prop_pos = pos_;
    const std::string name = property_name();
    skip_ws();
    const std::size_t op_pos = pos_;
    const Op op = operator_token();

    const PropertyRow* row = nullptr;
    try {
      row = &resolve_property(table_, name);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at position " +
                                std::to_string(prop_pos));
    }
    const FacetKind kind =
        resolve_facet_kind(table_, row->id, row->datatype);

    auto not_applicable = [&]() {
      std::vector<std::string> allowed;
      switch (kind) {
        case FacetKind::string: allowed = {"'='", "'!='"}; break;
        case FacetKind::numeric:
          allowed = {"'='", "'!='", "'<'", "'<='", "'>'", "'>='", "'in'", "'not in'"};
          break;
        case FacetKind::date:
          allowed = {"'='", "'!='", "'<'", "'>'", "'!<'", "'!>'", "'in'", "'not in'"};
          break;
      }
      fail_at(op_pos, std::move(allowed),
              "operator '" + std::string(op_text(op)) +
                  "' does not apply to " + std::string(to_string(kind)) +
                  " property '" + name + "'");
    };

    std::optional<FilterSpec> spec;
    skip_ws();
    if ((op == Op::eq || op == Op::neq) && peek() == '[') {
      spec = TextAnyOf{value_set(), op == Op::neq};
    } else if (op == Op::in || op == Op::not_in) {
      const std::size_t range_pos = pos_;
      if (kind == FacetKind::string) not_applicable();
      const Scalar low = scalar(";", true, true);
      skip_ws();
      if (!looking_at("..")) fail({"'..'"});
      pos_ += 2;
      const Scalar high = scalar(";", false, true);
      const bool negated = op == Op::not_in;
      if (kind == FacetKind::numeric) {
        auto lo = as_decimal(low);
        auto hi = as_decimal(high);
        if (hi < lo) fail_at(range_pos, {"low <= high"}, "range low exceeds high");
        spec = NumericRange{lo, hi, negated};
      } else {
        auto lo = as_date(low);
        auto hi = as_date(high);
        if (hi < lo) fail_at(range_pos, {"start <= end"}, "range start is after end");
        spec = DateRange{lo, hi, negated};
      }
    } else {
      const Scalar value = scalar(";", false, kind != FacetKind::string);
      switch (kind) {
        case FacetKind::string:
          if (op != Op::eq && op != Op::neq) not_applicable();
          spec = TextAnyOf{{value.text}, op == Op::neq};
          break;
        case FacetKind::numeric: {
          NumericOp nop;
          switch (op) {
            case Op::eq: nop = NumericOp::eq; break;
            case Op::neq: nop = NumericOp::neq; break;
            case Op::lt: nop = NumericOp::lt; break;
            case Op::le: nop = NumericOp::le; break;
            case Op::gt: nop = NumericOp::gt; break;
            case Op::ge: nop = NumericOp::ge; break;
            default: not_applicable();
          }
          spec = NumericCmp{nop, as_decimal(value)};
          break;
        }
        case FacetKind::date: {
          DateOp dop;
          bool negated = false;
          switch (op) {
            case Op::eq: dop = DateOp::on; break;
            case Op::neq: dop = DateOp::on; negated = true; break;
            case Op::lt: dop = DateOp::before; break;
            case Op::gt: dop = DateOp::after; break;
            case Op::not_lt: dop = DateOp::before; negated = true; break;
            case Op::not_gt: dop = DateOp::after; negated = true; break;
            default: not_applicable();
          }
          spec = DateCmp{dop, as_date(value), negated};
          break;
        }
      }
    }
    try {
      config.add(row->id, *std::move(spec));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at position " +
                                std::to_string(prop_pos));
    }
  }

  std::string_view text_;
  const ComparisonTable& table_;
  std::size_t pos_ = 0;
};

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool needs_quotes(std::string_view s, std::string_view specials) {
  return s.empty() || is_ws(s.front()) || is_ws(s.back()) ||
         s.front() == '"' ||
         s.find_first_of(specials) != std::string_view::npos;
}

std::string property_token(const ResourceId& id) {
  const auto& s = id.str();
  if (s == "in" || s == "not" || needs_quotes(s, "=!<>;[]|\"\\")) {
    return quote(s);
  }
  return s;
}

std::string set_scalar(std::string_view s) {
  return needs_quotes(s, "|];\"\\") ? quote(s) : std::string(s);
}

std::string range_bound(std::string_view s, bool low) {
  const bool awkward = s.find("..") != std::string_view::npos ||
                       (low && s.ends_with('.')) ||
                       (!low && s.starts_with('.'));
  return awkward ? quote(s) : std::string(s);
}

std::string range(bool negated, std::string_view lo, std::string_view hi) {
  return std::string(negated ? " not in " : " in ") + range_bound(lo, true) +
         ".." + range_bound(hi, false);
}

std::string spec_text(const FilterSpec& spec) {
  if (const auto* s = std::get_if<TextAnyOf>(&spec)) {
    std::string out = s->negated ? "!=[" : "=[";
    bool first = true;
    for (const auto& v : s->values) {
      if (!first) out += "|";
      first = false;
      out += set_scalar(v);
    }
    return out + "]";
  }
  if (const auto* s = std::get_if<NumericCmp>(&spec)) {
    static constexpr std::string_view ops[] = {"=", "!=", "<", "<=", ">", ">="};
    return std::string(ops[int(s->op)]) + s->operand.lexical();
  }
  if (const auto* s = std::get_if<NumericRange>(&spec)) {
    return range(s->negated, s->low.lexical(), s->high.lexical());
  }
  if (const auto* s = std::get_if<DateCmp>(&spec)) {
    std::string_view op;
    switch (s->op) {
      case DateOp::on: op = s->negated ? "!=" : "="; break;
      case DateOp::before: op = s->negated ? "!<" : "<"; break;
      case DateOp::after: op = s->negated ? "!>" : ">"; break;
    }
    return std::string(op) + s->date.to_string();
  }
  const auto& s = std::get<DateRange>(spec);
  return range(s.negated, s.start.to_string(), s.end.to_string());
}

}  // namespace

const PropertyRow& resolve_property(const ComparisonTable& table,
                                    std::string_view name) {
  for (const auto& p : table.properties()) {
    if (p.id.str() == name) return p;
  }
  const PropertyRow* found = nullptr;
  for (const auto& p : table.properties()) {
    if (p.label == name) {
      if (found) {
        throw Error(Errc::ambiguous_label,
                    "label '" + std::string(name) +
                        "' matches more than one property");
      }
      found = &p;
    }
  }
  if (!found) {
    throw Error(Errc::unknown_property,
                "unknown property '" + std::string(name) + "'");
  }
  return *found;
}

FilterConfig parse_filter_expr(std::string_view text,
                               const ComparisonTable& table) {
  return Parser(text, table).parse();
}

std::string serialize_filter_expr(const FilterConfig& config) {
  std::string out;
  for (const auto& [property, spec] : config.clauses()) {
    if (!out.empty()) out += ";";
    out += property_token(property) + spec_text(spec);
  }
  return out;
}

}  // namespace kgfacet
