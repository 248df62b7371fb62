#pragma once

#include <string>
#include <vector>

#include "racah/casimir.hpp"

namespace racah {

enum class Tier { Core, Extended, Heavy };

Tier tier_from_string(const std::string& s);
std::string tier_name(Tier t);

/// One fundamental-representation table cell.
struct CellResult {
  int m = 0;
  int s = 0;
  bool feasible = true;  // infeasible cells render as "needs --heavy"
  IndexReport report;
  std::string closed_form_note;  // e.g. "K6 ok" / "K5 mismatch"
  bool closed_form_ok = true;
};

/// Generalized Dynkin indices of the fundamental representations of su(n):
/// rows m = 2..n, columns s = 1..n-1.
struct GdiTable {
  int n = 0;
  std::vector<std::vector<CellResult>> rows;

  const CellResult& at(int m, int s) const { return rows[m - 2][s - 1]; }
  CellResult& at(int m, int s) { return rows[m - 2][s - 1]; }
};

GdiTable compute_gdi_table(InvariantWorkspace& ws, Tier tier);

std::string render_table_markdown(const GdiTable& t);
std::string render_table_csv(const GdiTable& t);
std::string render_table_json(const GdiTable& t);

/// Max |entry(m,s) - (-1)^m entry(m,n-s)| over feasible cell pairs.
double conjugation_invariant_residual(const GdiTable& t);

std::string index_report_to_json(const IndexReport& r);
IndexReport index_report_from_json(const std::string& text);

}  // namespace racah
