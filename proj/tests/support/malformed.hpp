#pragma once

#include <array>
#include <cstddef>

namespace kgfacet::testing {

struct MalformedExpr {
  const char* text;
  std::size_t position;  // byte offset of the offending token
};

// Malformed filter expressions over the three-contribution fixture.
inline constexpr std::array<MalformedExpr, 20> kMalformedExprs{{
    {"", 0},
    {"method", 6},
    {"method=", 7},
    {"method=[", 8},
    {"method=[PCR", 11},
    {"method=[PCR|]", 12},
    {"method=[]", 8},
    {"patients>abc", 9},
    {"patients in 1..", 15},
    {"patients in 1 2", 14},
    {"patients in 5..1", 12},
    {"study_date>2020-13-01", 11},
    {"study_date<=2020-01-01", 10},
    {"method<PCR", 6},
    {"method in a..b", 7},
    {"patients>1;", 11},
    {";patients>1", 0},
    {"\"method=[PCR]", 0},
    {"method=\"PCR", 7},
    {"patients>1 junk", 11},
}};

}  // namespace kgfacet::testing
