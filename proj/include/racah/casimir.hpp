#pragma once

#include <optional>
#include <string>
#include <vector>

#include "racah/invariants.hpp"
#include "racah/perm_trace.hpp"
#include "racah/reps.hpp"

namespace racah {

/// One computed (m, representation) record.
struct IndexReport {
  int n = 0;
  int m = 0;
  std::string rep;
  double c_value = 0.0;
  double gdi_value = 0.0;
  long long gdi_rounded = 0;
  std::string route;           // symmetric-trace | antisym-component | closed-form
  double residual_int = 0.0;   // |gdi - nearest integer|
  double residual_cross = -1.0;  // cross-route disagreement; -1 = single route
  double residual_imag = 0.0;  // imaginary leakage on the route taken
  bool absent = false;         // m > n
};

/// Unit-weight symmetrized product traces of one representation, with the
/// D_a D_b pair products precomputed so each permutation term costs O(dim^2).
class SymTraceEngine {
 public:
  SymTraceEngine(const Representation& rep, const Caps& caps = {});

  const Representation& rep() const { return *rep_; }

  /// Tr D_(k1 ... km) at a canonical tuple.
  Complex component(std::span<const int> tuple) const;

  /// The full rank-m tensor (cost-guarded); imaginary residue is checked
  /// against the tolerance and the real parts stored.
  SymTensor tensor(int m, const Tolerance& tol = {}) const;

 private:
  const Representation* rep_;
  Caps caps_;
  std::vector<CMatrix> pair_;  // r*r products D_a D_b
};

struct CasimirValue {
  double c = 0.0;
  bool absent = false;
  double residual_imag = 0.0;
};

/// c^(m)(D) = <t^(m), Tr D_(...)> / dim D.
CasimirValue casimir_eigenvalue(InvariantWorkspace& ws, int m,
                                const Representation& d);

/// Same contraction materialized as the operator t . D...D (small scale);
/// scalarity of the result is the caller's check.
CMatrix casimir_operator(InvariantWorkspace& ws, int m,
                         const Representation& d);

IndexReport gdi_from_eigenvalue(InvariantWorkspace& ws, int m,
                                const Representation& d);

/// Tr D_[i1 ... i_{2m-1}] by signed permutation sum (prefix-shared tree,
/// first factor pinned by cyclicity).
Complex antisym_trace_component(const Representation& d,
                                std::span<const int> tuple,
                                const PermTraceOptions& opt = {});

/// Probe tuple with |Omega component| > eps_pick, assembled from the
/// largest-|f| pairs; returns the tuple and its Omega value.
struct ProbeTuple {
  std::vector<int> tuple;
  double omega_value = 0.0;
};
std::optional<ProbeTuple> pick_probe_tuple(InvariantWorkspace& ws, int m,
                                           int max_evals = 4000);

IndexReport gdi_single_component(InvariantWorkspace& ws, int m,
                                 const Representation& d,
                                 const PermTraceOptions& opt = {});

/// Same, against a caller-chosen probe (lets callers reuse one probe across
/// several representations of the same order).
IndexReport gdi_from_component(InvariantWorkspace& ws, int m,
                               const Representation& d,
                               const ProbeTuple& probe,
                               const PermTraceOptions& opt = {});

/// Closed-form oracle bank. Everything returns nullopt outside its
/// applicability range (distinct from a genuine zero).
namespace closed_form {
std::optional<double> su3_c2(int lambda, int mu);
std::optional<double> su4_c2(int lambda, int mu, int nu);
std::optional<double> su3_c3(int lambda, int mu);
std::optional<double> c_defining(int n, int m);       // order-m eigenvalue
std::optional<double> c_adjoint(int n, int m);        // even m formula, odd 0
std::optional<double> gdi_adjoint(int n, int m);      // 2n / 0, needs m <= n
std::optional<double> c_spinor(int n, int m);         // m in {2,3,4}
std::optional<double> gdi_spinor(int n, int m);       // m in {2,3,4}
std::optional<double> gdi_sym2(int n, int m);         // n + 2^(m-1)
std::optional<double> gdi_sym_power(int n, int m, int p);   // m in {2,3,4}
std::optional<double> gdi_fund2(int n, int m);        // n - 2^(m-1)
std::optional<double> gdi_fund(int n, int m, int s);  // m in {2,3,4}
std::optional<double> gdi_fund3_m5(int n);            // (n-6)(n-27)/2, n >= 5
/// dispatcher used by the CLI; returns nullopt for unknown family/instance
std::optional<double> eval(const std::string& family, int n, int m,
                           std::span<const int> params);
}  // namespace closed_form

struct ConjugationReport {
  double c = 0.0;
  double c_conj = 0.0;
  double residual = 0.0;       // |c_conj - (-1)^m c|
  bool self_conjugate = false;
  double self_conj_residual = 0.0;  // |c| for odd m when self-conjugate
  bool absent = false;
};

ConjugationReport conjugation_check(InvariantWorkspace& ws,
                                    const Representation& d, int m);

/// Numeric verification of the symmetrized trace formulas used by the
/// adjoint and spinor index derivations.
std::vector<IdentityCheck> verify_trace_lemmas(InvariantWorkspace& ws);

}  // namespace racah
