#include <signal.h>

#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kgfacet/canonical_json.hpp"
#include "kgfacet/comparison.hpp"
#include "kgfacet/error.hpp"
#include "kgfacet/facets.hpp"
#include "kgfacet/filter_expr.hpp"
#include "kgfacet/filters.hpp"
#include "kgfacet/graph_store.hpp"
#include "kgfacet/service.hpp"

namespace {

using namespace kgfacet;

constexpr int kOk = 0;
constexpr int kDataError = 1;
constexpr int kUsageError = 2;

int report_error(const Error& e) {
  std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
  return kDataError;
}

int run_ingest(const std::string& path) {
  GraphStore store;
  const IngestReport report = store.ingest_file(path);
  std::cout << "statements: " << report.statements_added << "\n"
            << "templates: " << report.templates_added << "\n"
            << "labels: " << report.labels_declared << "\n"
            << "rejected: " << report.lines_rejected.size() << "\n";
  for (const auto& r : report.lines_rejected) {
    std::cerr << path << ":" << r.line_number << ": " << r.reason << "\n";
  }
  return report.lines_rejected.empty() ? kOk : kDataError;
}

std::string cell_text(const ComparisonTable& t, const PropertyRow& p, const ContributionColumn& c) {
  std::string out;
  for (const auto& v : t.cell(p.id, c.id)) {
    if (!out.empty()) out += "; ";
    out += v.display_text();
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(const ComparisonTable& t, std::ostream& out) {
  out << "property";
  for (const auto& c : t.contributions()) out << "," << csv_field(c.id.str());
  out << "\r\n";
  for (const auto& p : t.properties()) {
    out << csv_field(p.label);
    for (const auto& c : t.contributions()) out << "," << csv_field(cell_text(t, p, c));
    out << "\r\n";
  }
}

void write_table(const ComparisonTable& t, std::ostream& out) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"property"});
  for (const auto& c : t.contributions()) grid[0].push_back(c.id.str());
  for (const auto& p : t.properties()) {
    std::vector<std::string> row{p.label};
    for (const auto& c : t.contributions()) row.push_back(cell_text(t, p, c));
    grid.push_back(std::move(row));
  }
  std::vector<std::size_t> width(grid[0].size(), 0);
  for (const auto& row : grid) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (std::size_t r = 0; r < grid.size(); ++r) {
    std::string line;
    for (std::size_t i = 0; i < grid[r].size(); ++i) {
      if (i) line += "  ";
      line += grid[r][i];
      if (i + 1 < grid[r].size()) line += std::string(width[i] - grid[r][i].size(), ' ');
    }
    out << line << "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w;
      out << std::string(total + 2 * (width.size() - 1), '-') << "\n";
    }
  }
}

int run_compare(const std::string& data, const std::vector<std::string>& contributions,
                const std::string& filter, const std::string& format) {
  GraphStore store;
  const IngestReport report = store.ingest_file(data);
  if (!report.lines_rejected.empty()) {
    std::cerr << "warning: " << report.lines_rejected.size() << " dump line(s) rejected\n";
  }
  std::vector<ResourceId> ids;
  for (const auto& c : contributions) {
    if (!ResourceId::is_valid(c)) throw Error(Errc::invalid_id, "invalid contribution id '" + c + "'");
    ids.emplace_back(c);
  }
  const ComparisonTable full = build_comparison(store, ids);
  const FilterConfig config = filter.empty() ? FilterConfig{} : parse_filter_expr(filter, full);
  const ComparisonTable filtered = apply_filters(full, config);
  const auto facets = infer_facets(full);
  for (const auto& w : validate_config(config, full, facets)) {
    std::cerr << "warning: " << to_string(w.kind) << ": " << w.message << "\n";
  }

  if (format == "json") {
    std::cout << canonical::dump_canonical({{"table", canonical::to_json(filtered)},
                                            {"facets", canonical::to_json(facets)},
                                            {"active_filters", canonical::to_json(config)}})
              << "\n";
  } else if (format == "csv") {
    write_csv(filtered, std::cout);
  } else {
    write_table(filtered, std::cout);
  }
  return kOk;
}

int run_serve(ServeConfig config) {
  // Block the signals before any server thread starts so only sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const auto handle = serve(config, std::cerr);
  int received = 0;
  sigwait(&signals, &received);
  std::cerr << "shutting down\n";
  handle->stop();
  handle->wait();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Faceted search over scholarly knowledge graph comparisons"};
  app.require_subcommand(1);

  std::string dump;
  auto* ingest = app.add_subcommand("ingest", "Validate a dump and print its ingest report");
  ingest->add_option("dump", dump, "Dump file")->required();

  std::string data, filter, format = "table";
  std::vector<std::string> contributions;
  auto* compare = app.add_subcommand("compare", "Build, filter and print a comparison");
  compare->add_option("--data", data, "Dump file")->required();
  compare->add_option("--contributions", contributions, "Contribution ids")
      ->required()
      ->delimiter(',');
  compare->add_option("--filter", filter, "Filter expression");
  compare->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  ServeConfig serve_config;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--port", serve_config.port, "TCP port (0 picks a free one)")
      ->required()
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", serve_config.host, "Bind address");
  serve_cmd->add_option("--data", serve_config.data_dump_path, "Dump file")->required();
  serve_cmd->add_option("--storage", serve_config.storage_dir, "Snapshot directory")->required();
  serve_cmd->add_option("--base-url", serve_config.base_url, "Prefix for permalinks")->required();
  serve_cmd->add_flag("--strict", serve_config.strict, "Refuse to start if any dump line is rejected");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*ingest) return run_ingest(dump);
    if (*compare) return run_compare(data, contributions, filter, format);
    return run_serve(serve_config);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
}
