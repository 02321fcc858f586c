#pragma once

#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include "kgfacet/error.hpp"
#include "kgfacet/graph_store.hpp"
#include "kgfacet/persistence.hpp"

namespace kgfacet {

/// Error envelope payload: `{"error":{"code":..., "message":...}}`.
/// Codes come from a closed set: invalid-request, unknown-contribution,
/// unknown-property, syntax-error, not-found, malformed-id, conflict,
/// internal.
struct ApiError {
  std::string code;
  std::string message;
  int http_status;
};

struct ApiResponse {
  int status = 200;
  std::string body;  // canonical JSON
};

ApiResponse error_response(const ApiError& error);

/// Endpoint handlers over a loaded, read-only graph. Handlers take and
/// return canonical JSON bodies and never throw; every failure becomes an
/// ApiError envelope.
class ApiService {
 public:
  ApiService(std::shared_ptr<const GraphStore> graph, SnapshotStore snapshots,
             std::string base_url);

  ApiResponse health() const;
  ApiResponse compare(std::string_view body) const;
  ApiResponse autocomplete(std::string_view body) const;
  ApiResponse save(std::string_view body);
  ApiResponse get_saved(std::string_view id) const;
  ApiResponse list_saved() const;

  /// Routes a request by method and path; unknown routes yield 404 and
  /// known paths with the wrong method 405, both as envelopes.
  ApiResponse dispatch(std::string_view method, std::string_view path,
                       std::string_view body);

 private:
  std::shared_ptr<const GraphStore> graph_;
  SnapshotStore snapshots_;
  std::string base_url_;
};

struct ServeConfig {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
  std::filesystem::path data_dump_path;
  std::filesystem::path storage_dir;
  std::string base_url;
  bool strict = false;
};

/// A running HTTP server. Destruction stops it.
class ServiceHandle {
 public:
  virtual ~ServiceHandle() = default;
  virtual int port() const = 0;
  virtual const IngestReport& ingest_report() const = 0;
  virtual void stop() = 0;
  /// Blocks until the server stops.
  virtual void wait() = 0;
};

/// Loads the dump completely, checks the storage directory, binds and
/// starts serving on a background thread.
///
/// Throws Error(ingest_failure) when the dump cannot be read (or, with
/// `strict`, has rejected lines), Error(storage_failure) for an unusable
/// storage directory and Error(bind_failure) when the port is taken.
std::unique_ptr<ServiceHandle> serve(const ServeConfig& config,
                                     std::ostream& log);

}  // namespace kgfacet
