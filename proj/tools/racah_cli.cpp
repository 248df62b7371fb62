#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "racah/cache.hpp"
#include "racah/table.hpp"
#include "racah/verify.hpp"

using namespace racah;

namespace {

// exit contract: 0 = all checks pass, 1 = a value mismatch, 2 = infra error
constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInfra = 2;

Representation build_rep(InvariantWorkspace& ws, const std::string& spec) {
  if (spec == "def") return defining_rep(ws.basis());
  if (spec == "adj") return adjoint_rep(ws.sc());
  if (spec == "spinor")
    return spinor_rep(ws.basis(), ws.sc(), ws.config().caps);
  if (spec.rfind("sym:", 0) == 0)
    return sym_power_rep(ws.basis(), std::stoi(spec.substr(4)),
                         ws.config().caps);
  if (spec.rfind("fund:", 0) == 0)
    return fund_rep(ws.basis(), std::stoi(spec.substr(5)), ws.config().caps);
  if (spec.rfind("conj:", 0) == 0)
    return conjugate_rep(build_rep(ws, spec.substr(5)));
  throw DomainError("unknown rep spec: " + spec +
                    " (expected def|adj|sym:p|fund:s|spinor|conj:<spec>)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "racah: su(n) invariant tensors, Racah-Casimir eigenvalues and "
      "generalized Dynkin indices"};
  app.require_subcommand(1);
  app.fallthrough();  // parent options may follow the subcommand

  std::string cache_flag;
  app.add_option("--cache-dir", cache_flag,
                 "cache directory (default: $RACAH_CACHE_DIR; empty = off)");

  // table
  auto* cmd_table = app.add_subcommand("table",
                                       "fundamental-representation index "
                                       "table of su(n)");
  int table_n = 4;
  std::string table_format = "md";
  std::string table_tier = "extended";
  bool table_heavy = false;
  cmd_table->add_option("--n", table_n, "rank parameter, 3..6")
      ->check(CLI::Range(3, 6));
  cmd_table->add_option("--format", table_format, "md|csv|json")
      ->check(CLI::IsMember({"md", "csv", "json"}));
  cmd_table->add_option("--tier", table_tier, "core|extended|heavy")
      ->check(CLI::IsMember({"core", "extended", "heavy"}));
  cmd_table->add_flag("--heavy", table_heavy,
                      "open the heavy-route caps (equivalent to --tier heavy)");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "core";
  std::string verify_json_path;
  cmd_verify->add_option("--suite", suite, "core|extended|heavy")
      ->check(CLI::IsMember({"core", "extended", "heavy"}));
  cmd_verify->add_option("--json", verify_json_path,
                         "also write the machine-readable report here");

  // compute
  auto* cmd_compute =
      app.add_subcommand("compute", "single (n, m, rep) index record");
  int comp_n = 3, comp_m = 2;
  std::string comp_rep = "def";
  std::string comp_route = "auto";
  bool comp_heavy = false;
  std::string comp_checkpoint;
  cmd_compute->add_option("--n", comp_n, "rank parameter")->required();
  cmd_compute->add_option("--m", comp_m, "Casimir order")->required();
  cmd_compute->add_option("--rep", comp_rep,
                          "def|adj|sym:p|fund:s|spinor|conj:<spec>")
      ->required();
  cmd_compute->add_option("--route", comp_route, "auto|sym|antisym")
      ->check(CLI::IsMember({"auto", "sym", "antisym"}));
  cmd_compute->add_flag("--heavy", comp_heavy,
                        "open the permutation-sum budget for long runs");
  cmd_compute->add_option("--checkpoint", comp_checkpoint,
                          "file for resumable per-branch partial sums");

  // cache
  auto* cmd_cache = app.add_subcommand("cache", "cache management");
  auto* cache_list_cmd = cmd_cache->add_subcommand("list", "list entries");
  auto* cache_clear_cmd = cmd_cache->add_subcommand("clear", "remove entries");
  cmd_cache->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  cfg.cache_dir = resolve_cache_dir(cache_flag);

  try {
    if (*cmd_table) {
      if (table_heavy) table_tier = "heavy";
      const Tier tier = tier_from_string(table_tier);
      InvariantWorkspace ws(table_n, cfg);
      GdiTable t = compute_gdi_table(ws, tier);
      if (table_format == "md")
        std::cout << render_table_markdown(t);
      else if (table_format == "csv")
        std::cout << render_table_csv(t);
      else
        std::cout << render_table_json(t) << "\n";
      bool mismatch = false;
      for (const auto& row : t.rows)
        for (const auto& cell : row)
          if (cell.feasible && !cell.closed_form_ok) mismatch = true;
      if (conjugation_invariant_residual(t) > cfg.eps_int) mismatch = true;
      return mismatch ? kMismatch : kOk;
    }
    if (*cmd_verify) {
      VerifyReport rep = run_verify_suite(tier_from_string(suite), cfg);
      for (const auto& c : rep.checks) {
        std::cout << (c.pass ? "PASS" : (c.blocking ? "FAIL" : "WARN"))
                  << "  [c" << c.criterion << "] " << c.name
                  << "  residual=" << c.residual << " tol=" << c.tolerance
                  << "\n";
      }
      std::cout << (rep.all_pass ? "suite PASS" : "suite FAIL") << " ("
                << rep.checks.size() << " checks)\n";
      if (!verify_json_path.empty()) {
        std::ofstream out(verify_json_path);
        out << verify_report_to_json(rep) << "\n";
      }
      return rep.all_pass ? kOk : kMismatch;
    }
    if (*cmd_compute) {
      InvariantWorkspace ws(comp_n, cfg);
      Representation rep = build_rep(ws, comp_rep);
      PermTraceOptions popt;
      popt.flop_cap = comp_heavy ? 1e13 : cfg.caps.perm_flop_cap;
      popt.checkpoint_file = comp_checkpoint;
      IndexReport r;
      if (comp_route == "antisym") {
        r = gdi_single_component(ws, comp_m, rep, popt);
      } else if (comp_route == "sym") {
        r = gdi_from_eigenvalue(ws, comp_m, rep);
      } else {
        try {
          r = gdi_from_eigenvalue(ws, comp_m, rep);
        } catch (const CapExceeded&) {
          r = gdi_single_component(ws, comp_m, rep, popt);
        }
      }
      std::cout << index_report_to_json(r) << "\n";
      return kOk;
    }
    if (*cmd_cache) {
      if (cfg.cache_dir.empty()) {
        std::cerr << "no cache directory configured (--cache-dir or "
                     "RACAH_CACHE_DIR)\n";
        return kInfra;
      }
      if (*cache_list_cmd) {
        for (const auto& e : cache_list(cfg.cache_dir))
          std::cout << e.file << "  kind=" << e.kind << " n=" << e.n
                    << " m=" << e.m << " entries=" << e.count
                    << (e.absent ? " (absent)" : "") << "\n";
        return kOk;
      }
      if (*cache_clear_cmd) {
        std::cout << "removed " << cache_clear(cfg.cache_dir) << " entries\n";
        return kOk;
      }
    }
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kInfra;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfra;
  }
  return kInfra;
}
