#include "racah/cache.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace racah {

namespace {

#pragma pack(push, 1)
struct Header {
  std::uint32_t magic;
  std::uint32_t version;
  std::uint8_t kind;
  std::uint8_t flags;
  std::uint16_t n;
  std::uint16_t m;
  std::uint16_t rank;
  std::uint16_t dim;
  std::uint64_t count;
};
#pragma pack(pop)

struct LockFile {
  std::string path;
  bool held = false;
  explicit LockFile(const std::string& dir) {
    path = dir + "/.lock";
    std::FILE* f = std::fopen(path.c_str(), "ax");
    if (f) {
      held = true;
      std::fclose(f);
    }
  }
  ~LockFile() {
    if (held) std::remove(path.c_str());
  }
};

bool write_file(const std::string& dir, const std::string& name,
                const Header& h,
                const std::vector<std::pair<TupleKey, double>>& entries) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  LockFile lock(dir);
  const std::string tmp = dir + "/" + name + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));
    for (const auto& [k, v] : entries) {
      out.write(reinterpret_cast<const char*>(&k), sizeof(k));
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
    if (!out) return false;
  }
  fs::rename(tmp, dir + "/" + name, ec);
  return !ec;
}

std::optional<std::pair<Header, std::vector<std::pair<TupleKey, double>>>>
read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  Header h{};
  in.read(reinterpret_cast<char*>(&h), sizeof(h));
  if (!in || h.magic != kCacheMagic || h.version != kCacheVersion)
    return std::nullopt;
  std::vector<std::pair<TupleKey, double>> entries;
  entries.reserve(h.count);
  for (std::uint64_t i = 0; i < h.count; ++i) {
    TupleKey k;
    double v;
    in.read(reinterpret_cast<char*>(&k), sizeof(k));
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) return std::nullopt;
    entries.emplace_back(k, v);
  }
  // trailing garbage means corruption
  char extra;
  if (in.read(&extra, 1)) return std::nullopt;
  return std::make_pair(h, std::move(entries));
}

}  // namespace

std::string cache_file_name(char kind, int n, int m) {
  return std::string(1, kind) + "_n" + std::to_string(n) + "_m" +
         std::to_string(m) + "_v" + std::to_string(kCacheVersion) + ".bin";
}

bool save_sym(const std::string& dir, char kind, int n, int m,
              const SymTensor& t, bool absent) {
  if (dir.empty()) return false;
  Header h{kCacheMagic,
           kCacheVersion,
           static_cast<std::uint8_t>(kind),
           static_cast<std::uint8_t>(absent ? 1 : 0),
           static_cast<std::uint16_t>(n),
           static_cast<std::uint16_t>(m),
           static_cast<std::uint16_t>(t.rank()),
           static_cast<std::uint16_t>(t.dim()),
           t.entry_count()};
  return write_file(dir, cache_file_name(kind, n, m), h, t.entries());
}

bool save_alt(const std::string& dir, char kind, int n, int m,
              const AltTensor& t, bool absent) {
  if (dir.empty()) return false;
  Header h{kCacheMagic,
           kCacheVersion,
           static_cast<std::uint8_t>(kind),
           static_cast<std::uint8_t>(absent ? 1 : 0),
           static_cast<std::uint16_t>(n),
           static_cast<std::uint16_t>(m),
           static_cast<std::uint16_t>(t.rank()),
           static_cast<std::uint16_t>(t.dim()),
           t.entry_count()};
  return write_file(dir, cache_file_name(kind, n, m), h, t.entries());
}

std::optional<LoadedSym> load_sym(const std::string& dir, char kind, int n,
                                  int m, int expect_rank, int expect_dim) {
  if (dir.empty()) return std::nullopt;
  auto r = read_file(dir + "/" + cache_file_name(kind, n, m));
  if (!r) return std::nullopt;
  const Header h = r->first;
  if (h.kind != static_cast<std::uint8_t>(kind) || h.n != n || h.m != m ||
      h.rank != expect_rank || h.dim != expect_dim)
    return std::nullopt;
  return LoadedSym{SymTensor::from_entries(expect_rank, expect_dim,
                                           std::move(r->second), 0.0),
                   (h.flags & 1) != 0};
}

std::optional<LoadedAlt> load_alt(const std::string& dir, char kind, int n,
                                  int m, int expect_rank, int expect_dim) {
  if (dir.empty()) return std::nullopt;
  auto r = read_file(dir + "/" + cache_file_name(kind, n, m));
  if (!r) return std::nullopt;
  const Header h = r->first;
  if (h.kind != static_cast<std::uint8_t>(kind) || h.n != n || h.m != m ||
      h.rank != expect_rank || h.dim != expect_dim)
    return std::nullopt;
  return LoadedAlt{AltTensor::from_entries(expect_rank, expect_dim,
                                           std::move(r->second), 0.0),
                   (h.flags & 1) != 0};
}

std::vector<CacheEntryInfo> cache_list(const std::string& dir) {
  std::vector<CacheEntryInfo> out;
  std::error_code ec;
  if (dir.empty() || !fs::exists(dir, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (!e.is_regular_file() || e.path().extension() != ".bin") continue;
    auto r = read_file(e.path().string());
    if (!r) continue;
    const Header& h = r->first;
    out.push_back({e.path().filename().string(), static_cast<char>(h.kind),
                   h.n, h.m, h.count, (h.flags & 1) != 0});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.file < b.file; });
  return out;
}

std::size_t cache_clear(const std::string& dir) {
  std::size_t removed = 0;
  std::error_code ec;
  if (dir.empty() || !fs::exists(dir, ec)) return 0;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (e.is_regular_file() &&
        (e.path().extension() == ".bin" || e.path().extension() == ".tmp")) {
      fs::remove(e.path(), ec);
      if (!ec) ++removed;
    }
  }
  return removed;
}

std::string resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("RACAH_CACHE_DIR");
  return env ? std::string(env) : std::string();
}

}  // namespace racah
