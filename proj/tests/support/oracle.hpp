#pragma once

#include <string>
#include <vector>

#include "kgfacet/comparison.hpp"
#include "kgfacet/filters.hpp"

namespace kgfacet::testing {

/// Brute-force filter evaluator kept separate from the engine: it reads
/// only value kinds and canonical texts, parses numbers into scaled
/// integers and compares ISO dates as strings.
std::vector<std::string> brute_force_filter(const ComparisonTable& table,
                                            const FilterConfig& config);

/// Brute-force evaluation of one clause for one contribution.
bool brute_force_clause(const FilterSpec& spec, const std::vector<Value>& cell);

}  // namespace kgfacet::testing
