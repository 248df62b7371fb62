#pragma once

#include <vector>

#include "racah/tensor.hpp"
#include "racah/types.hpp"

namespace racah {

/// Generalized Gell-Mann basis of su(n): n^2-1 hermitian traceless matrices
/// with Tr(lambda_i lambda_j) = 2 delta_ij.
///
/// Ordering convention (fixed; cache files carry its version): for each
/// column k = 2..n, first the off-diagonal pairs (j,k) for j = 1..k-1 as a
/// symmetric then an antisymmetric matrix, then the diagonal matrix
/// sqrt(2/((k-1)k)) * diag(1,..,1,-(k-1),0,..) closing the k-block.
/// For n=2 this yields the Pauli matrices sigma_1, sigma_2, sigma_3 in order,
/// and for n=3 the eight standard Gell-Mann matrices in their usual order.
struct GellMannBasis {
  int n = 0;
  std::vector<CMatrix> lambdas;  // size n^2-1, each n x n

  int dim_adjoint() const { return n * n - 1; }
};

/// f (totally antisymmetric) and d (totally symmetric) constant tensors of
/// su(n), derived from the trace formulas
///   f_ijk = -i/4 Tr([l_i,l_j] l_k),   d_ijk = 1/4 Tr({l_i,l_j} l_k).
struct StructureConstants {
  int n = 0;
  AltTensor f;
  SymTensor d;

  // index structures for sparse work over f
  struct PairEntry {
    int k;
    double value;
  };
  // f_pairs[pair_id] = (a,b) with a<b such that f_{kab} != 0 for some k;
  // f_by_pair[pair_id] lists those (k, f_{kab}).
  std::vector<std::pair<int, int>> f_pairs;
  std::vector<std::vector<PairEntry>> f_by_pair;
  // pairs_of_k[k] lists (pair_id, f_{k a b}) over canonical pairs a<b.
  std::vector<std::vector<std::pair<int, double>>> pairs_of_k;

  int pair_id(int a, int b) const;  // -1 if (a,b) unsupported
  /// f_{k a b} for canonical a<b (0 if absent).
  double f_pair_value(int k, int a, int b) const;
};

GellMannBasis gell_mann_basis(int n);

StructureConstants structure_constants(const GellMannBasis& basis,
                                       const Tolerance& tol = {});

/// Max residual of the Jacobi identity over all index pairs (matrix form
/// [F_i,F_j] + f_ijk F_k = 0 with (F_i)_jk = f_ijk, covering every triple).
double jacobi_residual(const StructureConstants& sc);

/// Max residual of l_i l_j = (2/n) d_ij I + (d+if)_ijk l_k over all (i,j).
double product_reconstruction_residual(const GellMannBasis& basis,
                                       const StructureConstants& sc);

}  // namespace racah
