#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "kgfacet/value.hpp"

namespace kgfacet {

struct Statement {
  ResourceId subject;
  ResourceId predicate;
  Value object;

  friend bool operator==(const Statement&, const Statement&) = default;
  friend auto operator<=>(const Statement&, const Statement&) = default;
};

struct PropertyTemplate {
  ResourceId predicate;
  Datatype datatype;
  std::string label;

  friend bool operator==(const PropertyTemplate&,
                         const PropertyTemplate&) = default;
};

struct RejectedLine {
  std::size_t line_number;  // 1-based
  std::string reason;

  friend bool operator==(const RejectedLine&, const RejectedLine&) = default;
};

struct IngestReport {
  std::size_t statements_added = 0;
  std::size_t templates_added = 0;
  std::size_t labels_declared = 0;
  std::vector<RejectedLine> lines_rejected;
};

/// In-memory triple store with set semantics, property templates and
/// resource labels.
///
/// Reads may run concurrently; writers take an exclusive lock.
class GraphStore {
 public:
  GraphStore() = default;
  GraphStore(const GraphStore&) = delete;
  GraphStore& operator=(const GraphStore&) = delete;

  /// Returns false when the triple is already present.
  bool add_statement(Statement stmt);

  /// Unbound positions match anything. Results are ordered by
  /// (subject, predicate, canonical value text).
  std::vector<Statement> match_statements(
      const std::optional<ResourceId>& subject,
      const std::optional<ResourceId>& predicate,
      const std::optional<Value>& object) const;

  /// Idempotent for identical datatypes; throws Error(template_conflict)
  /// when the predicate already has a different datatype. A re-registration
  /// with the same datatype updates the label.
  void register_template(const PropertyTemplate& tmpl);
  std::optional<PropertyTemplate> find_template(const ResourceId& predicate) const;
  std::vector<PropertyTemplate> templates() const;

  void set_label(const ResourceId& id, std::string label);
  std::optional<std::string> find_label(const ResourceId& id) const;

  /// Display label for a predicate: template label, then declared label,
  /// then the id itself.
  std::string property_label(const ResourceId& predicate) const;
  /// Display label for any resource: declared label, then the id.
  std::string resource_label(const ResourceId& id) const;

  bool has_subject(const ResourceId& subject) const;
  std::size_t size() const;

  /// Applies the tab-separated dump records in `source`. Malformed lines
  /// are reported, not fatal. Throws Error(io_failure) on stream errors.
  IngestReport ingest_dump(std::istream& source);
  /// Throws Error(io_failure) when the file cannot be opened or read.
  IngestReport ingest_file(const std::filesystem::path& path);

 private:
  bool insert_locked(Statement stmt);
  bool register_locked(const PropertyTemplate& tmpl);

  mutable std::shared_mutex mutex_;
  std::map<ResourceId, std::set<Statement>> by_subject_;
  std::map<ResourceId, std::vector<const Statement*>> by_predicate_;
  std::size_t size_ = 0;
  std::map<ResourceId, PropertyTemplate> templates_;
  std::map<ResourceId, std::string> labels_;
};

}  // namespace kgfacet
