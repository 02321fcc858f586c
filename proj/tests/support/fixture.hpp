#pragma once

#include <filesystem>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "kgfacet/graph_store.hpp"

namespace kgfacet::testing {

std::filesystem::path data_dir();
std::filesystem::path fixture_path();

/// Store loaded from the three-contribution fixture dump.
std::shared_ptr<GraphStore> fixture_store();

std::vector<ResourceId> ids(std::initializer_list<const char*> names);
ResourceId id(const char* name);

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace kgfacet::testing
