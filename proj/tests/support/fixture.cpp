#include "fixture.hpp"

#include <atomic>
#include <random>
#include <stdexcept>

#include <unistd.h>

namespace kgfacet::testing {

std::filesystem::path data_dir() { return KGFACET_TEST_DATA_DIR; }

std::filesystem::path fixture_path() { return data_dir() / "fixture.tsv"; }

std::shared_ptr<GraphStore> fixture_store() {
  auto store = std::make_shared<GraphStore>();
  const auto report = store->ingest_file(fixture_path());
  if (!report.lines_rejected.empty()) {
    throw std::runtime_error("fixture dump has rejected lines");
  }
  return store;
}

std::vector<ResourceId> ids(std::initializer_list<const char*> names) {
  std::vector<ResourceId> out;
  for (const char* n : names) out.emplace_back(n);
  return out;
}

ResourceId id(const char* name) { return ResourceId(name); }

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("kgfacet-test-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter++) + "-" + std::to_string(rd()));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace kgfacet::testing
