#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgfacet/comparison.hpp"
#include "kgfacet/filters.hpp"

namespace kgfacet {

/// What a saved comparison freezes: the requested contributions, the filter
/// config and the resulting table.
struct Snapshot {
  std::vector<ResourceId> source;
  FilterConfig config;
  ComparisonTable table;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// Canonical JSON bytes of a snapshot; these bytes are what gets hashed.
std::string encode_snapshot(const Snapshot& snapshot);
/// Throws Error(invalid_snapshot) when `bytes` is not a snapshot document.
Snapshot decode_snapshot(std::string_view bytes);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);
/// First 16 hex characters of the SHA-256 of `bytes`.
std::string content_id(std::string_view bytes);
bool is_valid_saved_id(std::string_view id) noexcept;

/// `<base>/saved/<id>`, with trailing slashes of `base` dropped.
std::string permalink(std::string_view base_url, std::string_view id);

struct SavedComparison {
  std::string id;
  std::string bytes;
  Snapshot snapshot;
  std::string created_at;  // RFC 3339 UTC; empty if the index lacks it
};

struct SavedEntry {
  std::string id;
  std::string created_at;

  friend bool operator==(const SavedEntry&, const SavedEntry&) = default;
};

/// Content-addressed snapshot directory: `<id>.snapshot` holds the exact
/// hashed bytes and `index.log` records `<id>\t<created_at>` lines.
///
/// Files are written to a temporary name and hard-linked into place, so
/// concurrent saves of the same content converge on one object.
class SnapshotStore {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  explicit SnapshotStore(std::filesystem::path directory,
                         Clock clock = std::chrono::system_clock::now);

  const std::filesystem::path& directory() const noexcept { return dir_; }

  /// Idempotent for identical content. Throws Error(storage_failure) and
  /// Error(hash_collision).
  SavedComparison save(const ComparisonTable& table, const FilterConfig& config,
                       std::span<const ResourceId> source);

  /// Verifies the content hash on every load. Throws Error(malformed_id),
  /// Error(not_found), Error(integrity_failure), Error(storage_failure).
  SavedComparison load(std::string_view id) const;

  /// All saved ids ordered by (created_at, id). Throws
  /// Error(storage_failure).
  std::vector<SavedEntry> list_saved() const;

 private:
  std::filesystem::path snapshot_path(std::string_view id) const;
  std::optional<std::string> created_at_of(std::string_view id) const;
  void append_index(std::string_view id, std::string_view created_at);

  std::filesystem::path dir_;
  Clock clock_;
};

}  // namespace kgfacet
