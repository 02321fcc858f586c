#include <sys/socket.h>

#include <thread>

#include <httplib.h>

#include "kgfacet/service.hpp"

namespace kgfacet {

namespace {

class HttpService final : public ServiceHandle {
 public:
  HttpService(std::unique_ptr<ApiService> api, IngestReport report)
      : api_(std::move(api)), report_(std::move(report)) {
    // SO_REUSEPORT (httplib's default) would let a second instance share the
    // port; a taken port must fail to bind instead.
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    });
    // Routing lives in ApiService; httplib only has to read the body first.
    const auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      const ApiResponse r = api_->dispatch(req.method, req.path, req.body);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    };
    server_.Get(".*", handler);
    server_.Post(".*", handler);
    server_.Put(".*", handler);
    server_.Patch(".*", handler);
    server_.Delete(".*", handler);
    server_.Options(".*", handler);
  }

  ~HttpService() override {
    stop();
    wait();
  }

  void bind(const std::string& host, int port) {
    if (port == 0) {
      port_ = server_.bind_to_any_port(host);
    } else if (server_.bind_to_port(host, port)) {
      port_ = port;
    }
    if (port_ <= 0) {
      throw Error(Errc::bind_failure,
                  "cannot bind " + host + ":" + std::to_string(port));
    }
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  int port() const override { return port_; }
  const IngestReport& ingest_report() const override { return report_; }
  void stop() override { server_.stop(); }
  void wait() override {
    if (thread_.joinable()) thread_.join();
  }

 private:
  std::unique_ptr<ApiService> api_;
  IngestReport report_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = -1;
};

}  // namespace

std::unique_ptr<ServiceHandle> serve(const ServeConfig& config,
                                     std::ostream& log) {
  auto graph = std::make_shared<GraphStore>();
  IngestReport report;
  try {
    report = graph->ingest_file(config.data_dump_path);
  } catch (const Error& e) {
    throw Error(Errc::ingest_failure, e.what());
  }
  for (const auto& r : report.lines_rejected) {
    log << "dump line " << r.line_number << " rejected: " << r.reason << "\n";
  }
  if (config.strict && !report.lines_rejected.empty()) {
    throw Error(Errc::ingest_failure,
                std::to_string(report.lines_rejected.size()) +
                    " dump line(s) rejected under --strict");
  }

  std::error_code ec;
  std::filesystem::create_directories(config.storage_dir, ec);
  if (ec || !std::filesystem::is_directory(config.storage_dir)) {
    throw Error(Errc::storage_failure,
                "storage directory '" + config.storage_dir.string() +
                    "' is unusable");
  }

  auto api = std::make_unique<ApiService>(
      std::move(graph), SnapshotStore(config.storage_dir), config.base_url);
  auto handle = std::make_unique<HttpService>(std::move(api), std::move(report));
  handle->bind(config.host, config.port);
  log << "listening on " << config.host << ":" << handle->port() << " ("
      << handle->ingest_report().statements_added << " statements)\n";
  return handle;
}

}  // namespace kgfacet
