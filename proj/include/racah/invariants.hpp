#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "racah/basis.hpp"
#include "racah/config.hpp"
#include "racah/tensor.hpp"

namespace racah {

/// Totally antisymmetric cocycle tensor of rank 2m-1 over the adjoint range.
struct OmegaTensor {
  int n = 0;
  int m = 0;
  AltTensor body;
  bool absent = false;       // m > n: cocycle does not exist
  double antisym_residual = 0.0;  // spot check across the non-alternated slot
};

/// Totally symmetric, traceless, mutually orthogonal invariant of rank m,
/// the maximal f-contraction of the corresponding Omega tensor.
struct TTensor {
  int n = 0;
  int m = 0;
  SymTensor body;
  bool absent = false;
};

/// d^(m): d^(2) = delta, d^(m) = unit-weight symmetrization of
/// d^(m-1)_{i1..i_{m-2} j} d_{j i_{m-1} i_m}. Defined for every m >= 2
/// (non-primitive members included).
SymTensor d_family(const StructureConstants& sc, int m);

/// Omega via the alternated f-chain contracted into d^(m). Alternation runs
/// over the first 2m-2 slots only; full antisymmetry is verified by the
/// recorded spot-check residual.
OmegaTensor omega(const StructureConstants& sc, int m,
                  const RunConfig& cfg = default_config());

/// Same construction with a caller-supplied symmetric tensor in the d^(m)
/// slot (substituting non-primitive tensors must produce zero).
OmegaTensor omega_from_d(const StructureConstants& sc, int m,
                         const SymTensor& dm,
                         const RunConfig& cfg = default_config(),
                         double prune_rel = 1e-9);

/// Single canonical component via the (2m-2)!-term alternation, organized
/// over pair matchings with sparse f chains; exactly consistent with omega().
double omega_component(const StructureConstants& sc, int m,
                       std::span<const int> tuple, const SymTensor& dm,
                       const RunConfig& cfg = default_config());

/// Omega extracted from antisymmetrized (2m-1)-fold products of the basis
/// matrices, Tr l_[i1...k] / (2 i^(m-1)). Independent of the f-chain route.
OmegaTensor omega_via_lambda_trace(const GellMannBasis& basis, int m,
                                   const RunConfig& cfg = default_config());

/// Exact closed form for the full contraction of Omega^(2m-1) with itself:
/// (2^(2m-3)/(2m-2)!) n prod_{r=1..m-1} (n^2 - r^2); zero when m > n.
double omega_norm_closed_form(int n, int m);

/// t^(m) by maximal f-contraction of Omega^(2m-1).
TTensor t_tensor(const StructureConstants& sc, int m,
                 const RunConfig& cfg = default_config());
TTensor t_tensor_from(const StructureConstants& sc, const OmegaTensor& om,
                      const RunConfig& cfg = default_config());

/// The unsymmetrized contraction at one raw index tuple (k_1..k_m); used to
/// confirm that the construction is symmetric without storage assistance.
double t_component_raw(const StructureConstants& sc, const OmegaTensor& om,
                       std::span<const int> tuple);

/// Partial contraction of two symmetric tensors over nbound leading slots,
/// sum_Y mult(Y) a(Y+x) b(Y+y); small dense output (identity checking only).
DenseTensor sym_partial_contract(const SymTensor& a, const SymTensor& b,
                                 int nbound);

/// Max |a - b| over the union of supports.
double sym_diff_max(const SymTensor& a, const SymTensor& b);
double alt_diff_max(const AltTensor& a, const AltTensor& b);

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double scale = 1.0;     // magnitude the residual should be compared against
  bool applicable = true;
  bool pass(const Tolerance& tol = {}) const {
    return !applicable || residual <= std::max(tol.abs, tol.rel * scale);
  }
};

class InvariantWorkspace;

/// Section-2 identity bank: the explicit t-tensor forms, t-tracelessness,
/// otraD, D8, pairwise orthogonality, and the vanishing of t^(m) for m > n.
std::vector<IdentityCheck> verify_t_identities(InvariantWorkspace& ws);

/// Memoizing holder for everything derived from one n: basis, structure
/// constants, d / Omega / t towers. Read-through disk cache when the config
/// names a cache directory. Frozen objects; safe to share.
class InvariantWorkspace {
 public:
  explicit InvariantWorkspace(int n, RunConfig cfg = default_config());

  int n() const { return n_; }
  int adjoint_dim() const { return n_ * n_ - 1; }
  const RunConfig& config() const { return cfg_; }
  const GellMannBasis& basis() const { return basis_; }
  const StructureConstants& sc() const { return sc_; }

  const SymTensor& d_m(int m);
  const OmegaTensor& omega_m(int m);
  const TTensor& t_m(int m);

 private:
  int n_;
  RunConfig cfg_;
  GellMannBasis basis_;
  StructureConstants sc_;
  std::map<int, SymTensor> d_;
  std::map<int, OmegaTensor> omega_;
  std::map<int, TTensor> t_;
};

}  // namespace racah
