#include "kgfacet/graph_store.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <string_view>

#include "kgfacet/error.hpp"

namespace kgfacet {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const auto tab = line.find('\t', begin);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, tab - begin));
    begin = tab + 1;
  }
}

bool matches(const Statement& s, const std::optional<ResourceId>& subject,
             const std::optional<ResourceId>& predicate,
             const std::optional<Value>& object) {
  return (!subject || s.subject == *subject) &&
         (!predicate || s.predicate == *predicate) &&
         (!object || s.object == *object);
}

// Per-line failure carrying the reason reported in IngestReport.
struct LineRejected {
  std::string reason;
};

ResourceId parse_id(std::string_view text) {
  if (!ResourceId::is_valid(text)) {
    throw LineRejected{"invalid-id"};
  }
  return ResourceId(std::string(text));
}

}  // namespace

bool GraphStore::add_statement(Statement stmt) {
  std::unique_lock lock(mutex_);
  return insert_locked(std::move(stmt));
}

bool GraphStore::insert_locked(Statement stmt) {
  auto& bucket = by_subject_[stmt.subject];
  auto [it, inserted] = bucket.insert(std::move(stmt));
  if (inserted) {
    by_predicate_[it->predicate].push_back(&*it);
    ++size_;
  }
  return inserted;
}

std::vector<Statement> GraphStore::match_statements(
    const std::optional<ResourceId>& subject,
    const std::optional<ResourceId>& predicate,
    const std::optional<Value>& object) const {
  std::shared_lock lock(mutex_);
  std::vector<Statement> out;
  if (subject) {
    auto it = by_subject_.find(*subject);
    if (it == by_subject_.end()) return out;
    for (const auto& s : it->second) {
      if (matches(s, subject, predicate, object)) out.push_back(s);
    }
    return out;
  }
  if (predicate) {
    auto it = by_predicate_.find(*predicate);
    if (it == by_predicate_.end()) return out;
    for (const Statement* s : it->second) {
      if (matches(*s, subject, predicate, object)) out.push_back(*s);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  for (const auto& [id, bucket] : by_subject_) {
    for (const auto& s : bucket) {
      if (matches(s, subject, predicate, object)) out.push_back(s);
    }
  }
  return out;
}

void GraphStore::register_template(const PropertyTemplate& tmpl) {
  std::unique_lock lock(mutex_);
  register_locked(tmpl);
}

bool GraphStore::register_locked(const PropertyTemplate& tmpl) {
  auto it = templates_.find(tmpl.predicate);
  if (it == templates_.end()) {
    templates_.emplace(tmpl.predicate, tmpl);
    return true;
  }
  if (it->second.datatype != tmpl.datatype) {
    throw Error(Errc::template_conflict,
                "template for '" + tmpl.predicate.str() + "' is already " +
                    std::string(to_string(it->second.datatype)));
  }
  it->second.label = tmpl.label;
  return false;
}

std::optional<PropertyTemplate> GraphStore::find_template(
    const ResourceId& predicate) const {
  std::shared_lock lock(mutex_);
  auto it = templates_.find(predicate);
  if (it == templates_.end()) return std::nullopt;
  return it->second;
}

std::vector<PropertyTemplate> GraphStore::templates() const {
  std::shared_lock lock(mutex_);
  std::vector<PropertyTemplate> out;
  out.reserve(templates_.size());
  for (const auto& [id, t] : templates_) out.push_back(t);
  return out;
}

void GraphStore::set_label(const ResourceId& id, std::string label) {
  std::unique_lock lock(mutex_);
  labels_[id] = std::move(label);
}

std::optional<std::string> GraphStore::find_label(const ResourceId& id) const {
  std::shared_lock lock(mutex_);
  auto it = labels_.find(id);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::string GraphStore::property_label(const ResourceId& predicate) const {
  std::shared_lock lock(mutex_);
  if (auto t = templates_.find(predicate);
      t != templates_.end() && !t->second.label.empty()) {
    return t->second.label;
  }
  if (auto l = labels_.find(predicate); l != labels_.end()) {
    return l->second;
  }
  return predicate.str();
}

std::string GraphStore::resource_label(const ResourceId& id) const {
  std::shared_lock lock(mutex_);
  if (auto l = labels_.find(id); l != labels_.end()) {
    return l->second;
  }
  return id.str();
}

bool GraphStore::has_subject(const ResourceId& subject) const {
  std::shared_lock lock(mutex_);
  auto it = by_subject_.find(subject);
  return it != by_subject_.end() && !it->second.empty();
}

std::size_t GraphStore::size() const {
  std::shared_lock lock(mutex_);
  return size_;
}

IngestReport GraphStore::ingest_dump(std::istream& source) {
  IngestReport report;
  std::unique_lock lock(mutex_);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(source, line)) {
    ++line_number;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;

    const auto fields = split_tabs(view);
    try {
      if (fields[0] == "S") {
        if (fields.size() != 5) throw LineRejected{"wrong-field-count"};
        auto subject = parse_id(fields[1]);
        auto predicate = parse_id(fields[2]);
        const auto kind = parse_datatype(fields[3]);
        if (!kind) throw LineRejected{"invalid-kind"};
        std::optional<Value> object;
        try {
          object = Value::from_lexical(*kind, fields[4]);
        } catch (const Error& e) {
          throw LineRejected{e.code() == Errc::invalid_id ? "invalid-id"
                                                          : "invalid-value"};
        }
        if (insert_locked(Statement{std::move(subject), std::move(predicate),
                                    *std::move(object)})) {
          ++report.statements_added;
        }
      } else if (fields[0] == "T") {
        if (fields.size() != 4) throw LineRejected{"wrong-field-count"};
        auto predicate = parse_id(fields[1]);
        const auto datatype = parse_datatype(fields[2]);
        if (!datatype) throw LineRejected{"invalid-datatype"};
        try {
          if (register_locked(PropertyTemplate{std::move(predicate), *datatype,
                                               std::string(fields[3])})) {
            ++report.templates_added;
          }
        } catch (const Error&) {
          throw LineRejected{"template-conflict"};
        }
      } else if (fields[0] == "R") {
        if (fields.size() != 3) throw LineRejected{"wrong-field-count"};
        labels_[parse_id(fields[1])] = std::string(fields[2]);
        ++report.labels_declared;
      } else {
        throw LineRejected{"unknown-record-type"};
      }
    } catch (const LineRejected& rejected) {
      report.lines_rejected.push_back({line_number, rejected.reason});
    }
  }
  if (source.bad()) {
    throw Error(Errc::io_failure, "read error while ingesting dump");
  }
  return report;
}

IngestReport GraphStore::ingest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_failure, "cannot open dump '" + path.string() + "'");
  }
  return ingest_dump(in);
}

}  // namespace kgfacet
