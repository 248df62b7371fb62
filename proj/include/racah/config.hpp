#pragma once

#include <cstdint>
#include <string>

#include "racah/types.hpp"

namespace racah {

/// Cost and memory caps for the heavy construction paths. All configurable;
/// the defaults keep everything up to su(5) (and the cheap su(6) paths)
/// runnable without flags.
struct Caps {
  /// Refuse to materialize an Omega tensor whose canonical entry bound
  /// C(n^2-1, 2m-1) exceeds this.
  std::uint64_t omega_entry_cap = 10'000'000;
  /// Cap on the (2m-2)! alternation term count for single components
  /// (default admits m <= 6).
  std::uint64_t component_term_cap = 3'700'000;
  /// Budget for antisymmetrized-trace permutation sums, in units of
  /// (tree nodes) x dim^3. Exceeding it is a refusal, not a long wait.
  double perm_flop_cap = 5.0e11;
  /// Largest spinor dimension 2^floor(r/2) built without an override
  /// (128 admits n <= 4).
  std::uint64_t spinor_dim_cap = 128;
  /// Largest representation dimension the tensor-power builders accept.
  std::uint64_t rep_dim_cap = 4096;
  /// Cost guard for symmetric trace tensors, in units of
  /// C(r+m-1, m) x (m-1)! x dim^2.
  double sym_trace_cost_cap = 5.0e11;
};

struct RunConfig {
  Caps caps;
  Tolerance tol;
  /// |gdi - round(gdi)| must stay below eps_int * max(1, |gdi|).
  double eps_int = 1e-4;
  /// Minimum |Omega component| accepted when picking a probe tuple.
  double eps_pick = 1e-6;
  std::string cache_dir;  // empty = cache disabled
  int threads = 0;        // 0 = hardware concurrency
};

inline RunConfig& default_config() {
  static RunConfig cfg;
  return cfg;
}

}  // namespace racah
