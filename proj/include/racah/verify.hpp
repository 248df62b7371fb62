#pragma once

#include <string>
#include <vector>

#include "racah/table.hpp"

namespace racah {

struct VerifyCheck {
  int criterion = 0;      // 1..10, the acceptance-criteria grouping
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;  // resolved absolute bound the residual must meet
  bool pass = false;
  bool blocking = true;    // conjecture-consistency entries only report
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;
  bool all_pass = true;

  void add(int criterion, std::string name, double residual, double tolerance,
           bool blocking = true);
};

/// Runs one suite tier. Tiers are incremental: core covers everything at
/// n <= 4 plus the cheap n <= 6 identities, extended adds the su(5) column
/// and the order-6 adjoint index, heavy adds the su(6) table.
VerifyReport run_verify_suite(Tier tier, const RunConfig& cfg);

std::string verify_report_to_json(const VerifyReport& r);

}  // namespace racah
