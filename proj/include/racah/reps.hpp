#pragma once

#include <string>
#include <vector>

#include "racah/basis.hpp"
#include "racah/config.hpp"
#include "racah/types.hpp"

namespace racah {

/// A concrete family of matrices D(X_i) satisfying [D_i, D_j] = i f_ijk D_k.
struct Representation {
  std::string name;  // def | adj | sym:p | fund:s | spinor | conj:<name>
  int n = 0;
  int dim = 0;
  std::vector<CMatrix> mats;  // n^2-1 generators
};

/// Hermitian Dirac matrices of a Euclidean space, {g_i, g_j} = 2 delta_ij.
struct GammaSet {
  int r = 0;
  std::vector<CMatrix> gammas;  // size r, each 2^floor(r/2) square
};

/// D_i = lambda_i / 2, dimension n.
Representation defining_rep(const GellMannBasis& basis);

/// (ad_i)_jk = -i f_ijk, dimension n^2-1.
Representation adjoint_rep(const StructureConstants& sc);

/// Slot-sum action of lambda_i/2 on the totally symmetric p-fold product,
/// built on the monomial basis of nondecreasing p-tuples; dim C(n+p-1, p).
/// p = 1 coincides with the defining representation.
Representation sym_power_rep(const GellMannBasis& basis, int p,
                             const Caps& caps = {});

/// Restriction to the alternating subspace on strictly increasing s-tuples;
/// dim C(n, s). s = 1 coincides with the defining representation.
Representation fund_rep(const GellMannBasis& basis, int s,
                        const Caps& caps = {});

/// Tensor-product recursion (Pauli factors; odd r closes with the chirality
/// product). Only the anticommutation relations are contractual.
GammaSet gamma_set(int r, const Caps& caps = {});

/// S_i = -(i/4) f_ijk g_j g_k on the gamma set of dimension n^2-1;
/// dim 2^floor((n^2-1)/2).
Representation spinor_rep(const GellMannBasis& basis,
                          const StructureConstants& sc,
                          const Caps& caps = {});

/// X_i -> -D_i^T.
Representation conjugate_rep(const Representation& d);

/// Max over generator pairs of max|[D_i,D_j] - i f_ijk D_k|. sample_pairs = 0
/// checks every pair; otherwise that many deterministically seeded pairs.
double commutation_residual(const Representation& d,
                            const StructureConstants& sc,
                            int sample_pairs = 0, std::uint64_t seed = 1);

/// Max anticommutator residual max|{g_i,g_j} - 2 delta_ij I| over all pairs.
double gamma_residual(const GammaSet& g);

}  // namespace racah
