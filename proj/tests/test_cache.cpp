#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "racah/cache.hpp"
#include "racah/invariants.hpp"

using namespace racah;
namespace fs = std::filesystem;

namespace {

struct TmpDir {
  std::string path;
  TmpDir() {
    path = (fs::temp_directory_path() /
            ("racah_cache_test_" + std::to_string(::getpid())))
               .string();
    fs::create_directories(path);
  }
  ~TmpDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("bit-exact round trip") {
  TmpDir tmp;
  GellMannBasis b = gell_mann_basis(3);
  StructureConstants sc = structure_constants(b);

  REQUIRE(save_alt(tmp.path, 'o', 3, 2, sc.f));
  auto back = load_alt(tmp.path, 'o', 3, 2, 3, 8);
  REQUIRE(back.has_value());
  CHECK(!back->absent);
  REQUIRE(back->tensor.entry_count() == sc.f.entry_count());
  for (size_t i = 0; i < sc.f.entries().size(); ++i) {
    CHECK(back->tensor.entries()[i].first == sc.f.entries()[i].first);
    // bit-exact, not approximately equal
    CHECK(back->tensor.entries()[i].second == sc.f.entries()[i].second);
  }

  REQUIRE(save_sym(tmp.path, 'd', 3, 3, sc.d, /*absent=*/false));
  auto ds = load_sym(tmp.path, 'd', 3, 3, 3, 8);
  REQUIRE(ds.has_value());
  CHECK(ds->tensor.entry_count() == sc.d.entry_count());

  // absent flag round-trips
  SymTensor empty(5, 8);
  REQUIRE(save_sym(tmp.path, 't', 3, 5, empty, /*absent=*/true));
  auto abs5 = load_sym(tmp.path, 't', 3, 5, 5, 8);
  REQUIRE(abs5.has_value());
  CHECK(abs5->absent);
}

TEST_CASE("shape or kind mismatches are treated as misses") {
  TmpDir tmp;
  GellMannBasis b = gell_mann_basis(3);
  StructureConstants sc = structure_constants(b);
  REQUIRE(save_sym(tmp.path, 'd', 3, 3, sc.d));
  CHECK(!load_sym(tmp.path, 'x', 3, 3, 3, 8).has_value());
  CHECK(!load_sym(tmp.path, 'd', 3, 3, 4, 8).has_value());
  CHECK(!load_sym(tmp.path, 'd', 3, 3, 3, 15).has_value());
  CHECK(!load_sym("", 'd', 3, 3, 3, 8).has_value());
}

TEST_CASE("corrupt entries are rejected, never trusted") {
  TmpDir tmp;
  GellMannBasis b = gell_mann_basis(3);
  StructureConstants sc = structure_constants(b);
  REQUIRE(save_sym(tmp.path, 'd', 3, 3, sc.d));
  const std::string file = tmp.path + "/" + cache_file_name('d', 3, 3);

  // truncate
  fs::resize_file(file, fs::file_size(file) - 7);
  CHECK(!load_sym(tmp.path, 'd', 3, 3, 3, 8).has_value());

  // wrong magic
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << "garbage";
  }
  CHECK(!load_sym(tmp.path, 'd', 3, 3, 3, 8).has_value());
}

TEST_CASE("list and clear") {
  TmpDir tmp;
  GellMannBasis b = gell_mann_basis(3);
  StructureConstants sc = structure_constants(b);
  REQUIRE(save_sym(tmp.path, 'd', 3, 3, sc.d));
  REQUIRE(save_alt(tmp.path, 'o', 3, 2, sc.f));
  auto lst = cache_list(tmp.path);
  REQUIRE(lst.size() == 2);
  CHECK(lst[0].kind == 'd');
  CHECK(lst[1].kind == 'o');
  CHECK(cache_clear(tmp.path) == 2);
  CHECK(cache_list(tmp.path).empty());
}

TEST_CASE("workspace read-through") {
  TmpDir tmp;
  RunConfig cfg;
  cfg.cache_dir = tmp.path;
  {
    InvariantWorkspace ws(3, cfg);
    ws.t_m(3);
  }
  // tensors persisted: d3 is derived, d2/d3 come from the basis, so expect
  // at least omega and t files
  auto lst = cache_list(tmp.path);
  bool have_o = false, have_t = false;
  for (const auto& e : lst) {
    if (e.kind == 'o' && e.m == 3) have_o = true;
    if (e.kind == 't' && e.m == 3) have_t = true;
  }
  CHECK(have_o);
  CHECK(have_t);
  // a fresh workspace reads them back identically
  InvariantWorkspace ws2(3, cfg);
  RunConfig nocache;
  InvariantWorkspace ws3(3, nocache);
  CHECK(sym_diff_max(ws2.t_m(3).body, ws3.t_m(3).body) == 0.0);
}

TEST_CASE("cache dir resolution") {
  CHECK(resolve_cache_dir("/x/y") == "/x/y");
  ::setenv("RACAH_CACHE_DIR", "/from/env", 1);
  CHECK(resolve_cache_dir("") == "/from/env");
  CHECK(resolve_cache_dir("/flag/wins") == "/flag/wins");
  ::unsetenv("RACAH_CACHE_DIR");
  CHECK(resolve_cache_dir("").empty());
}
