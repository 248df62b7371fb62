#pragma once

#include <span>
#include <vector>

#include "racah/types.hpp"

namespace racah {

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: incompatible shapes " + shape_str(a) +
                         " * " + shape_str(b));
  return a * b;
}

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw DimensionError("commutator: need equal square shapes, got " +
                         shape_str(a) + " and " + shape_str(b));
  return a * b - b * a;
}

inline CMatrix anticommutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw DimensionError("anticommutator: need equal square shapes, got " +
                         shape_str(a) + " and " + shape_str(b));
  return a * b + b * a;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Complex trace(const CMatrix& a) {
  if (a.rows() != a.cols())
    throw DimensionError("trace: matrix is not square: " + shape_str(a));
  return a.trace();
}

/// Tr(a_0 a_1 ... a_{k-1}) without materializing the last product:
/// the chain is multiplied left to right and paired with the final factor
/// entrywise, Tr(P*B) = sum_ij P_ij B_ji.
inline Complex trace_product(std::span<const CMatrix> ms) {
  if (ms.empty())
    throw DimensionError("trace_product: empty sequence");
  for (size_t i = 0; i + 1 < ms.size(); ++i)
    if (ms[i].cols() != ms[i + 1].rows())
      throw DimensionError("trace_product: shape break at factor " +
                           std::to_string(i) + ": " + shape_str(ms[i]) +
                           " then " + shape_str(ms[i + 1]));
  if (ms.back().cols() != ms.front().rows())
    throw DimensionError("trace_product: chain is not closed: " +
                         shape_str(ms.back()) + " back to " +
                         shape_str(ms.front()));
  if (ms.size() == 1) return ms[0].trace();
  if (ms.size() == 2) return (ms[0] * ms[1]).trace();
  CMatrix p = ms[0];
  for (size_t i = 1; i + 1 < ms.size(); ++i) p = p * ms[i];
  return (p.transpose().array() * ms.back().array()).sum();
}

inline Complex trace_product(const std::vector<CMatrix>& ms) {
  return trace_product(std::span<const CMatrix>(ms));
}

inline bool is_hermitian(const CMatrix& a, double tol_abs = 1e-9) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() < tol_abs;
}

}  // namespace racah
