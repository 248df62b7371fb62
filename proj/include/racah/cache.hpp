#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "racah/tensor.hpp"
#include "racah/types.hpp"

namespace racah {

// Versioned binary cache. Layout (little-endian):
//   u32 magic 'RCHT' | u32 version (carries the basis-ordering revision) |
//   u8 kind ('d','o','t') | u8 flags (bit0 = absent) | u16 n | u16 m |
//   u16 rank | u16 dim | u64 entry count | count x (u64 key, f64 value).
// Writes are atomic (tmp file + rename) under a best-effort lock file.
// Anything that fails validation is treated as corrupt and rebuilt.

inline constexpr std::uint32_t kCacheMagic = 0x52434854;  // "RCHT"
inline constexpr std::uint32_t kCacheVersion = 1;

struct CacheEntryInfo {
  std::string file;
  char kind;
  int n, m;
  std::uint64_t count;
  bool absent;
};

std::string cache_file_name(char kind, int n, int m);

bool save_sym(const std::string& dir, char kind, int n, int m,
              const SymTensor& t, bool absent = false);
bool save_alt(const std::string& dir, char kind, int n, int m,
              const AltTensor& t, bool absent = false);

struct LoadedSym {
  SymTensor tensor;
  bool absent;
};
struct LoadedAlt {
  AltTensor tensor;
  bool absent;
};

std::optional<LoadedSym> load_sym(const std::string& dir, char kind, int n,
                                  int m, int expect_rank, int expect_dim);
std::optional<LoadedAlt> load_alt(const std::string& dir, char kind, int n,
                                  int m, int expect_rank, int expect_dim);

std::vector<CacheEntryInfo> cache_list(const std::string& dir);
std::size_t cache_clear(const std::string& dir);

/// Resolves the cache directory: explicit flag wins, then RACAH_CACHE_DIR,
/// else empty (caching off).
std::string resolve_cache_dir(const std::string& flag_value);

}  // namespace racah
