// Acceptance suite: runs the spec'd criteria at a given tier and prints one
// pass/fail line per check, grouped by criterion.
#include <cstring>
#include <iomanip>
#include <iostream>
#include <map>

#include "racah/cache.hpp"
#include "racah/verify.hpp"

using namespace racah;

int main(int argc, char** argv) {
  std::string tier = "core";
  std::string cache_dir;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--tier") && i + 1 < argc) tier = argv[++i];
    if (!std::strcmp(argv[i], "--cache-dir") && i + 1 < argc)
      cache_dir = argv[++i];
  }
  RunConfig cfg;
  cfg.cache_dir = resolve_cache_dir(cache_dir);

  VerifyReport rep;
  try {
    rep = run_verify_suite(tier_from_string(tier), cfg);
  } catch (const std::exception& e) {
    std::cerr << "acceptance: infrastructure error: " << e.what() << "\n";
    return 2;
  }

  std::map<int, std::pair<int, int>> tally;  // criterion -> (pass, total)
  for (const auto& c : rep.checks) {
    std::cout << (c.pass ? "PASS" : (c.blocking ? "FAIL" : "WARN")) << "  [c"
              << c.criterion << "] " << c.name << "  residual="
              << std::scientific << std::setprecision(3) << c.residual
              << " tol=" << c.tolerance << "\n";
    auto& t = tally[c.criterion];
    ++t.second;
    if (c.pass || !c.blocking) ++t.first;
  }
  std::cout << "----------------------------------------\n";
  bool all = true;
  for (const auto& [crit, t] : tally) {
    const bool ok = t.first == t.second;
    all = all && ok;
    std::cout << "criterion " << crit << ": " << (ok ? "PASS" : "FAIL") << " ("
              << t.first << "/" << t.second << ")\n";
  }
  std::cout << "acceptance[" << tier << "]: " << (rep.all_pass ? "PASS" : "FAIL")
            << "\n";
  return rep.all_pass ? 0 : 1;
}
