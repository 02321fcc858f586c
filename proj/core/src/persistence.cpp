#include "kgfacet/persistence.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "kgfacet/canonical_json.hpp"
#include "kgfacet/error.hpp"

namespace kgfacet {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kIndexFile = "index.log";

[[noreturn]] void storage_failure(const std::string& what) {
  throw Error(Errc::storage_failure, what);
}

std::string errno_text() { return std::strerror(errno); }

std::string format_utc(std::chrono::system_clock::time_point t) {
  using namespace std::chrono;
  const auto ms = duration_cast<milliseconds>(t.time_since_epoch()).count();
  const std::time_t secs = std::time_t(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, int(ms % 1000));
  return buf;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) storage_failure("cannot read '" + path.string() + "'");
  return buf.str();
}

void write_all(int fd, std::string_view bytes, const fs::path& path) {
  while (!bytes.empty()) {
    const ssize_t n = ::write(fd, bytes.data(), bytes.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      storage_failure("cannot write '" + path.string() + "': " + errno_text());
    }
    bytes.remove_prefix(std::size_t(n));
  }
}

class FileDescriptor {
 public:
  explicit FileDescriptor(int fd) : fd_(fd) {}
  FileDescriptor(const FileDescriptor&) = delete;
  FileDescriptor& operator=(const FileDescriptor&) = delete;
  ~FileDescriptor() {
    if (fd_ >= 0) ::close(fd_);
  }
  int get() const { return fd_; }

 private:
  int fd_;
};

fs::path temp_name(const fs::path& dir, std::string_view id) {
  static std::atomic<unsigned long> counter{0};
  std::ostringstream name;
  name << "." << id << "." << ::getpid() << "."
       << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
       << counter.fetch_add(1) << ".tmp";
  return dir / name.str();
}

}  // namespace

std::string encode_snapshot(const Snapshot& snapshot) {
  return canonical::dump_canonical(
      {{"source", canonical::to_json(std::span<const ResourceId>(snapshot.source))},
       {"config", canonical::to_json(snapshot.config)},
       {"table", canonical::to_json(snapshot.table)}});
}

Snapshot decode_snapshot(std::string_view bytes) {
  try {
    const auto tree = canonical::Json::parse(bytes);
    if (!tree.is_object() || !tree.contains("source") ||
        !tree.contains("config") || !tree.contains("table")) {
      throw Error(Errc::invalid_snapshot, "snapshot lacks source/config/table");
    }
    return Snapshot{canonical::ids_from_json(tree.at("source")),
                    canonical::config_from_json(tree.at("config")),
                    canonical::table_from_json(tree.at("table"))};
  } catch (const canonical::Json::exception& e) {
    throw Error(Errc::invalid_snapshot, e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_snapshot) throw;
    throw Error(Errc::invalid_snapshot, e.what());
  }
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(Errc::storage_failure, "SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string content_id(std::string_view bytes) {
  return sha256_hex(bytes).substr(0, 16);
}

bool is_valid_saved_id(std::string_view id) noexcept {
  if (id.size() != 16) return false;
  for (char c : id) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

std::string permalink(std::string_view base_url, std::string_view id) {
  while (!base_url.empty() && base_url.back() == '/') base_url.remove_suffix(1);
  return std::string(base_url) + "/saved/" + std::string(id);
}

SnapshotStore::SnapshotStore(fs::path directory, Clock clock)
    : dir_(std::move(directory)), clock_(std::move(clock)) {}

fs::path SnapshotStore::snapshot_path(std::string_view id) const {
  return dir_ / (std::string(id) + ".snapshot");
}

SavedComparison SnapshotStore::save(const ComparisonTable& table,
                                    const FilterConfig& config,
                                    std::span<const ResourceId> source) {
  Snapshot snapshot{{source.begin(), source.end()}, config, table};
  std::string bytes = encode_snapshot(snapshot);
  std::string id = content_id(bytes);

  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    storage_failure("cannot create storage directory '" + dir_.string() +
                    "': " + ec.message());
  }

  const fs::path target = snapshot_path(id);
  auto existing_matches = [&]() {
    auto stored = read_file(target);
    if (!stored) storage_failure("cannot read '" + target.string() + "'");
    if (*stored != bytes) {
      throw Error(Errc::hash_collision,
                  "different content already stored under id " + id);
    }
  };

  if (fs::exists(target, ec)) {
    existing_matches();
  } else {
    const fs::path tmp = temp_name(dir_, id);
    {
      FileDescriptor fd(::open(tmp.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0644));
      if (fd.get() < 0) {
        storage_failure("cannot create '" + tmp.string() + "': " + errno_text());
      }
      write_all(fd.get(), bytes, tmp);
      if (::fsync(fd.get()) != 0) {
        ::unlink(tmp.c_str());
        storage_failure("cannot sync '" + tmp.string() + "': " + errno_text());
      }
    }
    const int linked = ::link(tmp.c_str(), target.c_str());
    const int link_errno = errno;
    ::unlink(tmp.c_str());
    if (linked == 0) {
      append_index(id, format_utc(clock_()));
    } else if (link_errno == EEXIST) {
      existing_matches();
    } else {
      storage_failure("cannot publish '" + target.string() +
                      "': " + std::strerror(link_errno));
    }
  }

  std::string created_at = created_at_of(id).value_or("");
  return SavedComparison{std::move(id), std::move(bytes), std::move(snapshot),
                         std::move(created_at)};
}

SavedComparison SnapshotStore::load(std::string_view id) const {
  if (!is_valid_saved_id(id)) {
    throw Error(Errc::malformed_id,
                "saved comparison ids are 16 lowercase hex characters");
  }
  const fs::path path = snapshot_path(id);
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw Error(Errc::not_found, "no saved comparison " + std::string(id));
  }
  auto bytes = read_file(path);
  if (!bytes) storage_failure("cannot read '" + path.string() + "'");
  if (content_id(*bytes) != id) {
    throw Error(Errc::integrity_failure,
                "stored bytes of " + std::string(id) + " fail verification");
  }
  Snapshot snapshot;
  try {
    snapshot = decode_snapshot(*bytes);
  } catch (const Error& e) {
    throw Error(Errc::integrity_failure, e.what());
  }
  return SavedComparison{std::string(id), *std::move(bytes), std::move(snapshot),
                         created_at_of(id).value_or("")};
}

std::vector<SavedEntry> SnapshotStore::list_saved() const {
  const fs::path path = dir_ / kIndexFile;
  std::error_code ec;
  if (!fs::exists(path, ec)) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) storage_failure("cannot open '" + path.string() + "'");

  std::map<std::string, std::string> first_seen;
  std::string line;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    std::string id = line.substr(0, tab);
    std::string created = line.substr(tab + 1);
    if (!is_valid_saved_id(id)) continue;
    auto [it, inserted] = first_seen.emplace(id, created);
    if (!inserted && created < it->second) it->second = created;
  }
  if (in.bad()) storage_failure("cannot read '" + path.string() + "'");

  std::vector<SavedEntry> out;
  for (auto& [id, created] : first_seen) out.push_back({id, created});
  std::sort(out.begin(), out.end(), [](const SavedEntry& a, const SavedEntry& b) {
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    return a.id < b.id;
  });
  return out;
}

std::optional<std::string> SnapshotStore::created_at_of(std::string_view id) const {
  for (const auto& e : list_saved()) {
    if (e.id == id) return e.created_at;
  }
  return std::nullopt;
}

void SnapshotStore::append_index(std::string_view id,
                                 std::string_view created_at) {
  const fs::path path = dir_ / kIndexFile;
  FileDescriptor fd(::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644));
  if (fd.get() < 0) {
    storage_failure("cannot open '" + path.string() + "': " + errno_text());
  }
  // One write() per record keeps concurrent appends from interleaving.
  write_all(fd.get(), std::string(id) + "\t" + std::string(created_at) + "\n",
            path);
  if (::fsync(fd.get()) != 0) {
    storage_failure("cannot sync '" + path.string() + "': " + errno_text());
  }
}

}  // namespace kgfacet
