#pragma once

#include <span>
#include <string>
#include <vector>

#include "racah/types.hpp"

namespace racah {

struct PermTraceOptions {
  double flop_cap = 5.0e11;
  int threads = 1;
  /// When set, per-first-branch partial sums are flushed to this file and
  /// reloaded on restart, making long runs resumable.
  std::string checkpoint_file;
};

/// Estimated flop count for antisym_product_trace on q matrices of the given
/// dimension (prefix-sharing tree, cyclic reduction already applied).
double antisym_trace_cost(int q, int dim, bool real_path = false);

/// Unit-weight antisymmetrized product trace Tr M_[0 1 ... q-1] for an odd
/// number q >= 3 of equal-size square matrices (all distinct by assumption).
/// Since cyclic rotations of an odd-length product are even permutations,
/// the first factor is pinned and only (q-1)! orderings of the rest are
/// walked, sharing prefix products along a depth-first tree. Matrices that
/// are purely real or purely imaginary are routed through real arithmetic.
Complex antisym_product_trace(std::span<const CMatrix> mats,
                              const PermTraceOptions& opt = {});

}  // namespace racah
