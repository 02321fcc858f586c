#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "fixture.hpp"
#include "kgfacet/error.hpp"
#include "kgfacet/graph_store.hpp"

namespace kgfacet {
namespace {

using testing::id;

Statement stmt(const char* s, const char* p, Value v) {
  return Statement{ResourceId(s), ResourceId(p), std::move(v)};
}

Value num(const char* text) { return Value::number(Decimal::from_string(text)); }

TEST(GraphStore, AddStatementHasSetSemantics) {
  GraphStore store;
  EXPECT_TRUE(store.add_statement(stmt("C1", "method", Value::text("PCR"))));
  EXPECT_FALSE(store.add_statement(stmt("C1", "method", Value::text("PCR"))));
  EXPECT_EQ(store.size(), 1u);
  // Same text, different kind, is a different triple.
  EXPECT_TRUE(store.add_statement(stmt("C1", "patients", num("100"))));
  EXPECT_TRUE(store.add_statement(stmt("C1", "patients", Value::text("100"))));
  EXPECT_EQ(store.match_statements(id("C1"), id("patients"), std::nullopt).size(), 2u);
}

TEST(GraphStore, MatchOnEmptyStore) {
  GraphStore store;
  EXPECT_TRUE(store.match_statements(std::nullopt, std::nullopt, std::nullopt).empty());
}

TEST(GraphStore, MatchOnFixture) {
  auto store = testing::fixture_store();
  const auto c1 = store->match_statements(id("C1"), std::nullopt, std::nullopt);
  ASSERT_EQ(c1.size(), 3u);
  EXPECT_EQ(c1[0].predicate.str(), "method");
  EXPECT_EQ(c1[1].predicate.str(), "patients");
  EXPECT_EQ(c1[2].predicate.str(), "study_date");

  const auto pcr = store->match_statements(std::nullopt, id("method"), Value::text("PCR"));
  ASSERT_EQ(pcr.size(), 2u);
  EXPECT_EQ(pcr[0].subject.str(), "C1");
  EXPECT_EQ(pcr[1].subject.str(), "C2");

  EXPECT_EQ(store->match_statements(id("C1"), id("patients"), std::nullopt).size(), 1u);
  EXPECT_EQ(store->match_statements(std::nullopt, std::nullopt, num("250")).size(), 1u);
  EXPECT_TRUE(store->match_statements(id("C9"), std::nullopt, std::nullopt).empty());
}

TEST(GraphStore, Templates) {
  GraphStore store;
  store.register_template({id("patients"), Datatype::number, "patients"});
  EXPECT_EQ(store.find_template(id("patients"))->datatype, Datatype::number);
  EXPECT_NO_THROW(store.register_template({id("patients"), Datatype::number, "patients"}));
  try {
    store.register_template({id("patients"), Datatype::text, "patients"});
    FAIL() << "expected template-conflict";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::template_conflict);
  }
  EXPECT_FALSE(store.find_template(id("method")));
  EXPECT_EQ(store.templates().size(), 1u);
}

TEST(GraphStore, Labels) {
  auto store = testing::fixture_store();
  EXPECT_EQ(store->property_label(id("study_date")), "study date");
  EXPECT_EQ(store->resource_label(id("C3")), "Serology survey");
  EXPECT_EQ(store->resource_label(id("C99")), "C99");
}

TEST(GraphStore, IngestFixture) {
  GraphStore store;
  const auto report = store.ingest_file(testing::fixture_path());
  EXPECT_EQ(report.statements_added, 9u);
  EXPECT_EQ(report.templates_added, 3u);
  EXPECT_EQ(report.labels_declared, 3u);
  EXPECT_TRUE(report.lines_rejected.empty());
  EXPECT_EQ(store.size(), 9u);
}

TEST(GraphStore, IngestEmptyStream) {
  GraphStore store;
  std::istringstream in("");
  const auto report = store.ingest_dump(in);
  EXPECT_EQ(report.statements_added, 0u);
  EXPECT_EQ(report.templates_added, 0u);
  EXPECT_TRUE(report.lines_rejected.empty());
}

TEST(GraphStore, IngestReportsMalformedLines) {
  GraphStore store;
  std::istringstream in(
      "S\tC1\tmethod\ttext\tPCR\n"          // 1 ok
      "X\tC1\tmethod\ttext\tPCR\n"          // 2 unknown record
      "S\tC1\tmethod\ttext\n"               // 3 field count
      "S\tC 1\tmethod\ttext\tPCR\n"         // 4 id with space
      "S\tC1\tpatients\tinteger\t5\n"       // 5 kind
      "S\tC1\tpatients\tnumber\t5e3\n"      // 6 number
      "S\tC1\tdate\tdate\t2020-02-30\n"     // 7 date
      "S\tC1\tref\tlink\tR1\n"              // 8 link without label
      "T\tpatients\tnumber\tpatients\n"     // 9 ok
      "T\tpatients\ttext\tpatients\n"       // 10 conflict
      "T\tmethod\tstring\tmethod\n"         // 11 datatype
      "\n"                                   // blank, ignored
      "# comment\n"
      "S\tC1\tpatients\tnumber\t5\r\n"      // 14 ok, CRLF
      "S\tC1\tmethod\ttext\tPCR\n"          // 15 duplicate, not an error
      "R\tC1\n");                            // 16 field count
  const auto report = store.ingest_dump(in);
  EXPECT_EQ(report.statements_added, 2u);
  EXPECT_EQ(report.templates_added, 1u);
  const std::vector<RejectedLine> expected = {
      {2, "unknown-record-type"}, {3, "wrong-field-count"}, {4, "invalid-id"},
      {5, "invalid-kind"},        {6, "invalid-value"},     {7, "invalid-value"},
      {8, "invalid-value"},       {10, "template-conflict"}, {11, "invalid-datatype"},
      {16, "wrong-field-count"}};
  EXPECT_EQ(report.lines_rejected, expected);
}

TEST(GraphStore, IngestMissingFileIsIoFailure) {
  GraphStore store;
  try {
    store.ingest_file(testing::data_dir() / "does-not-exist.tsv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::io_failure);
  }
}

// Random stores: match_statements equals a brute-force scan, content equals
// the set of distinct inserted triples, and ordering is canonical.
TEST(GraphStore, MatchEqualsBruteForceScan) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> subjects = {"C1", "C2", "C3", "C4", "C5"};
  const std::vector<std::string> predicates = {"p", "q", "r"};
  auto random_value = [&]() {
    switch (rng() % 3) {
      case 0: return Value::text(std::string(1, char('a' + rng() % 4)));
      case 1: return Value::number(Decimal::from_string(std::to_string(rng() % 5)));
      default: return Value::date(CalendarDate::from_string(
          "2020-01-0" + std::to_string(1 + rng() % 5)));
    }
  };
  for (int round = 0; round < 20; ++round) {
    GraphStore store;
    std::set<Statement> reference;
    const int n = int(rng() % 1000);
    for (int i = 0; i < n; ++i) {
      Statement s{ResourceId(subjects[rng() % subjects.size()]),
                  ResourceId(predicates[rng() % predicates.size()]), random_value()};
      EXPECT_EQ(store.add_statement(s), reference.insert(s).second);
    }
    const auto all = store.match_statements(std::nullopt, std::nullopt, std::nullopt);
    EXPECT_EQ(std::vector<Statement>(reference.begin(), reference.end()), all);

    for (int q = 0; q < 30; ++q) {
      std::optional<ResourceId> s, p;
      std::optional<Value> o;
      if (rng() % 2) s = ResourceId(subjects[rng() % subjects.size()]);
      if (rng() % 2) p = ResourceId(predicates[rng() % predicates.size()]);
      if (rng() % 2) o = random_value();
      std::vector<Statement> expected;
      for (const auto& st : reference) {
        if ((!s || st.subject == *s) && (!p || st.predicate == *p) &&
            (!o || st.object == *o)) {
          expected.push_back(st);
        }
      }
      EXPECT_EQ(store.match_statements(s, p, o), expected);
    }
  }
}

TEST(GraphStore, IngestThenMatchReturnsWellFormedLines) {
  std::ostringstream dump;
  std::multiset<std::string> expected;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const std::string line = "S\tC" + std::to_string(rng() % 20) + "\tp" +
                             std::to_string(rng() % 4) + "\tnumber\t" +
                             std::to_string(rng() % 50);
    dump << line << "\n";
    if (rng() % 10 == 0) dump << "S\tbroken line\n";
    expected.insert(line);
  }
  GraphStore store;
  std::istringstream in(dump.str());
  store.ingest_dump(in);
  std::set<std::string> distinct(expected.begin(), expected.end());
  std::set<std::string> got;
  for (const auto& s : store.match_statements(std::nullopt, std::nullopt, std::nullopt)) {
    got.insert("S\t" + s.subject.str() + "\t" + s.predicate.str() + "\t" +
               std::string(to_string(s.object.kind())) + "\t" + s.object.lexical());
  }
  EXPECT_EQ(got, distinct);
}

TEST(GraphStore, ConcurrentReadersAfterLoad) {
  auto store = testing::fixture_store();
  std::vector<std::thread> readers;
  std::atomic<int> failures{0};
  for (int t = 0; t < 8; ++t) {
    readers.emplace_back([&] {
      for (int i = 0; i < 500; ++i) {
        if (store->match_statements(id("C3"), std::nullopt, std::nullopt).size() != 3) {
          ++failures;
        }
      }
    });
  }
  for (auto& r : readers) r.join();
  EXPECT_EQ(failures.load(), 0);
}

}  // namespace
}  // namespace kgfacet
