#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixture.hpp"
#include "kgfacet/error.hpp"
#include "kgfacet/filters.hpp"
#include "oracle.hpp"
#include "random_tables.hpp"

namespace kgfacet {
namespace {

using testing::id;
using testing::ids;

ComparisonTable fixture_table() {
  return build_comparison(*testing::fixture_store(), ids({"C1", "C2", "C3"}));
}

Decimal dec(const char* t) { return Decimal::from_string(t); }
CalendarDate date(const char* t) { return CalendarDate::from_string(t); }

std::vector<std::string> kept(const ComparisonTable& t) {
  std::vector<std::string> out;
  for (const auto& c : t.contributions()) out.push_back(c.id.str());
  return out;
}

std::vector<std::string> strings(const std::vector<ResourceId>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(r.str());
  return out;
}

TEST(EvalCell, Examples) {
  const std::vector<Value> pcr{Value::text("PCR")};
  EXPECT_TRUE(eval_cell(TextAnyOf{{"PCR"}, false}, pcr));
  EXPECT_FALSE(eval_cell(TextAnyOf{{"pcr"}, false}, pcr));
  EXPECT_FALSE(eval_cell(TextAnyOf{{"PC"}, false}, pcr));
  EXPECT_TRUE(eval_cell(TextAnyOf{{"PCR"}, true}, {}));
  EXPECT_FALSE(eval_cell(TextAnyOf{{"PCR"}, false}, {}));

  const NumericCmp gt100{NumericOp::gt, dec("100")};
  EXPECT_FALSE(eval_cell(gt100, std::vector{Value::number(dec("100"))}));
  EXPECT_TRUE(eval_cell(gt100, std::vector{Value::number(dec("250"))}));
  EXPECT_FALSE(eval_cell(gt100, {}));
}

TEST(EvalCell, MultiValuedAndKinds) {
  const std::vector<Value> cell{Value::text("a"), Value::text("b")};
  EXPECT_TRUE(eval_cell(TextAnyOf{{"b"}, false}, cell));
  EXPECT_FALSE(eval_cell(TextAnyOf{{"b"}, true}, cell));
  EXPECT_TRUE(eval_cell(TextAnyOf{{"c"}, true}, cell));

  // Links match by label.
  const std::vector<Value> link{Value::link(ResourceId("R1"), "Hannover")};
  EXPECT_TRUE(eval_cell(TextAnyOf{{"Hannover"}, false}, link));
  EXPECT_FALSE(eval_cell(TextAnyOf{{"R1"}, false}, link));
  EXPECT_FALSE(eval_cell(NumericCmp{NumericOp::ge, dec("0")}, link));

  // Decimal equality is numeric.
  EXPECT_TRUE(eval_cell(NumericCmp{NumericOp::eq, dec("10")},
                        std::vector{Value::number(dec("10.00"))}));
  EXPECT_TRUE(eval_cell(NumericCmp{NumericOp::neq, dec("10")}, {}));
  EXPECT_FALSE(eval_cell(NumericCmp{NumericOp::neq, dec("10")},
                         std::vector{Value::number(dec("10.0")), Value::number(dec("3"))}));

  // Ranges are inclusive.
  const NumericRange range{dec("100"), dec("250"), false};
  EXPECT_TRUE(eval_cell(range, std::vector{Value::number(dec("100"))}));
  EXPECT_TRUE(eval_cell(range, std::vector{Value::number(dec("250"))}));
  EXPECT_FALSE(eval_cell(range, std::vector{Value::number(dec("250.01"))}));

  const std::vector<Value> days{Value::date(date("2020-04-10")), Value::date(date("2020-04-15"))};
  EXPECT_TRUE(eval_cell(DateCmp{DateOp::on, date("2020-04-15"), false}, days));
  EXPECT_TRUE(eval_cell(DateCmp{DateOp::before, date("2020-04-11"), false}, days));
  EXPECT_FALSE(eval_cell(DateCmp{DateOp::before, date("2020-04-10"), false}, days));
  EXPECT_TRUE(eval_cell(DateCmp{DateOp::after, date("2020-04-14"), false}, days));
  EXPECT_FALSE(eval_cell(DateCmp{DateOp::after, date("2020-04-14"), true}, days));
  EXPECT_TRUE(eval_cell(DateRange{date("2020-04-15"), date("2020-04-15"), false}, days));
  EXPECT_FALSE(eval_cell(DateRange{date("2020-04-11"), date("2020-04-14"), false}, days));
  EXPECT_FALSE(eval_cell(DateCmp{DateOp::on, date("2020-04-15"), false},
                         std::vector{Value::text("someday")}));
}

TEST(ApplyFilters, FixtureChain) {
  const auto table = fixture_table();
  EXPECT_EQ(apply_filters(table, {}), table);

  FilterConfig config;
  config.add(id("method"), TextAnyOf{{"PCR"}, false});
  EXPECT_EQ(kept(apply_filters(table, config)), (std::vector<std::string>{"C1", "C2"}));

  config.add(id("patients"), NumericCmp{NumericOp::gt, dec("100")});
  EXPECT_EQ(kept(apply_filters(table, config)), (std::vector<std::string>{"C2"}));

  config.add(id("study_date"), DateRange{date("2020-05-01"), date("2020-05-31"), false});
  EXPECT_EQ(kept(apply_filters(table, config)), (std::vector<std::string>{"C2"}));

  FilterConfig none;
  none.add(id("method"), TextAnyOf{{"Xray"}, false});
  const auto empty = apply_filters(table, none);
  EXPECT_TRUE(empty.contributions().empty());
  EXPECT_TRUE(empty.properties().empty());
}

TEST(ApplyFilters, NegatedFiltersKeepMissingCells) {
  const auto table = fixture_table();
  FilterConfig config;
  config.add(id("patients"), NumericRange{dec("0"), dec("200"), true});
  EXPECT_EQ(kept(apply_filters(table, config)), (std::vector<std::string>{"C2", "C3"}));
}

TEST(ApplyFilters, UnknownProperty) {
  FilterConfig config;
  config.add(id("ghost"), TextAnyOf{{"x"}, false});
  try {
    apply_filters(fixture_table(), config);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_property);
  }
}

TEST(FilterConfig, Invariants) {
  FilterConfig config;
  config.add(id("method"), TextAnyOf{{"PCR"}, false});
  try {
    config.add(id("method"), TextAnyOf{{"X"}, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::duplicate_clause);
  }
  EXPECT_THROW(config.add(id("a"), TextAnyOf{{}, false}), Error);
  EXPECT_THROW(config.add(id("b"), NumericRange{dec("2"), dec("1"), false}), Error);
  EXPECT_THROW(config.add(id("c"), DateRange{date("2020-02-02"), date("2020-02-01"), false}),
               Error);
  EXPECT_EQ(config.size(), 1u);
}

TEST(FilterProperties, IdentityAndOracleEquivalence) {
  std::mt19937_64 rng(101);
  for (int round = 0; round < 500; ++round) {
    const auto table = testing::random_table(rng);
    EXPECT_EQ(apply_filters(table, {}), table);
    const auto config = testing::random_config(rng, table);
    EXPECT_EQ(kept(apply_filters(table, config)), testing::brute_force_filter(table, config))
        << "round " << round;
  }
}

TEST(FilterProperties, Monotonicity) {
  std::mt19937_64 rng(202);
  for (int round = 0; round < 500; ++round) {
    const auto table = testing::random_table(rng);
    auto config = testing::random_config(rng, table);
    const auto* extra = testing::unfiltered_property(rng, table, config);
    if (!extra) continue;
    const auto before = strings(matching_contributions(table, config));
    config.add(extra->id, testing::random_spec(rng));
    const auto after = strings(matching_contributions(table, config));
    for (const auto& c : after) {
      EXPECT_NE(std::find(before.begin(), before.end(), c), before.end()) << c;
    }
  }
}

TEST(FilterProperties, Commutativity) {
  std::mt19937_64 rng(303);
  for (int round = 0; round < 300; ++round) {
    const auto table = testing::random_table(rng);
    const auto config = testing::random_config(rng, table);
    std::vector<std::pair<ResourceId, FilterSpec>> clauses(config.clauses().begin(),
                                                           config.clauses().end());
    std::shuffle(clauses.begin(), clauses.end(), rng);
    FilterConfig reordered;
    for (auto& [p, s] : clauses) reordered.add(p, s);
    EXPECT_EQ(apply_filters(table, reordered), apply_filters(table, config));
  }
}

TEST(FilterProperties, NegationDualityPartitions) {
  std::mt19937_64 rng(404);
  int checked = 0;
  for (int round = 0; round < 1000; ++round) {
    const auto table = testing::random_table(rng);
    const auto& row = table.properties()[rng() % table.properties().size()];
    const FilterSpec spec = testing::random_spec(rng);
    const auto twin = negated_twin(spec);
    if (!twin) continue;
    ++checked;
    EXPECT_NE(is_negated(spec), is_negated(*twin));
    EXPECT_EQ(negated_twin(*twin), spec);
    FilterConfig a, b;
    a.add(row.id, spec);
    b.add(row.id, *twin);
    const auto left = strings(matching_contributions(table, a));
    const auto right = strings(matching_contributions(table, b));
    std::vector<std::string> both;
    std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                          std::back_inserter(both));
    EXPECT_TRUE(both.empty());
    EXPECT_EQ(left.size() + right.size(), table.contributions().size());
  }
  EXPECT_GT(checked, 500);
}

TEST(ValidateConfig, Examples) {
  const auto table = fixture_table();
  const auto facets = infer_facets(table);

  FilterConfig ok;
  ok.add(id("method"), TextAnyOf{{"PCR"}, false});
  EXPECT_TRUE(validate_config(ok, table, facets).empty());

  FilterConfig stranger;
  stranger.add(id("method"), TextAnyOf{{"Xray"}, false});
  auto w = validate_config(stranger, table, facets);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].kind, Warning::Kind::not_a_candidate);

  FilterConfig mismatch;
  mismatch.add(id("method"), NumericCmp{NumericOp::gt, dec("5")});
  w = validate_config(mismatch, table, facets);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].kind, Warning::Kind::kind_mismatch);

  FilterConfig far;
  far.add(id("patients"), NumericCmp{NumericOp::gt, dec("1000")});
  w = validate_config(far, table, facets);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].kind, Warning::Kind::out_of_range);

  FilterConfig overlapping;
  overlapping.add(id("study_date"),
                  DateRange{date("2020-05-01"), date("2020-05-31"), false});
  overlapping.add(id("patients"), NumericRange{dec("0"), dec("150"), false});
  EXPECT_TRUE(validate_config(overlapping, table, facets).empty());

  FilterConfig disjoint;
  disjoint.add(id("study_date"), DateRange{date("2021-01-01"), date("2021-12-31"), false});
  w = validate_config(disjoint, table, facets);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].kind, Warning::Kind::out_of_range);

  FilterConfig ghost;
  ghost.add(id("ghost"), TextAnyOf{{"x"}, false});
  w = validate_config(ghost, table, facets);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].kind, Warning::Kind::unknown_property);
}

TEST(Oracle, AgreesOnHandPickedCells) {
  // Sanity check of the oracle itself against the examples above.
  EXPECT_TRUE(testing::brute_force_clause(NumericCmp{NumericOp::gt, dec("100")},
                                          {Value::number(dec("250"))}));
  EXPECT_FALSE(testing::brute_force_clause(NumericCmp{NumericOp::gt, dec("100")},
                                           {Value::number(dec("100"))}));
  EXPECT_TRUE(testing::brute_force_clause(TextAnyOf{{"PCR"}, true}, {}));
  EXPECT_TRUE(testing::brute_force_clause(
      TextAnyOf{{"Hannover"}, false}, {Value::link(ResourceId("R1"), "Hannover")}));
}

}  // namespace
}  // namespace kgfacet
