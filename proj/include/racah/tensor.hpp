#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "racah/types.hpp"

namespace racah {

// Canonical index tuples are packed 6 bits per slot (first slot in the high
// bits, so numeric key order == lexicographic tuple order). Supports
// rank <= 10 over index ranges up to 63; every tensor this artifact
// materializes fits (the rank-11 cocycle of su(6) is never stored).
inline constexpr int kMaxRank = 10;
inline constexpr int kMaxDim = 63;
// Scratch bound for raw index tuples passing through component routines;
// rank-11 tuples occur for order-6 single components even though no rank-11
// tensor is ever packed or stored.
inline constexpr int kMaxTuple = 12;

using TupleKey = std::uint64_t;

inline TupleKey pack_tuple(std::span<const int> t) {
  TupleKey k = 0;
  for (int v : t) k = (k << 6) | static_cast<TupleKey>(v);
  return k;
}

inline void unpack_tuple(TupleKey k, int rank, int* out) {
  for (int i = rank - 1; i >= 0; --i) {
    out[i] = static_cast<int>(k & 0x3f);
    k >>= 6;
  }
}

/// Sorts a small tuple in place, returning the permutation sign
/// (0 if any index repeats).
int sort_sign(int* t, int rank);

std::uint64_t factorial(int n);
std::uint64_t binomial(int n, int k);

/// Number of distinct arrangements of a nondecreasing tuple,
/// rank! / prod(run lengths!).
std::uint64_t tuple_multiplicity(const int* t, int rank);

/// Ways to pick the sub-multiset A out of M respecting instance counts,
/// prod_e C(count_M(e), count_A(e)). Both tuples sorted.
double instance_count(const int* m, int rm, const int* a, int ra);

/// Enumerates canonical nondecreasing tuples in lexicographic order.
template <typename Fn>
void for_each_nondecreasing(int rank, int dim, Fn&& fn) {
  std::vector<int> t(rank, 0);
  if (rank == 0) {
    fn(std::span<const int>{t.data(), 0});
    return;
  }
  while (true) {
    fn(std::span<const int>{t.data(), static_cast<size_t>(rank)});
    int i = rank - 1;
    while (i >= 0 && t[i] == dim - 1) --i;
    if (i < 0) break;
    int v = ++t[i];
    for (int j = i + 1; j < rank; ++j) t[j] = v;
  }
}

/// Enumerates strictly increasing tuples in lexicographic order.
template <typename Fn>
void for_each_increasing(int rank, int dim, Fn&& fn) {
  if (rank > dim) return;
  std::vector<int> t(rank);
  for (int i = 0; i < rank; ++i) t[i] = i;
  while (true) {
    fn(std::span<const int>{t.data(), static_cast<size_t>(rank)});
    int i = rank - 1;
    while (i >= 0 && t[i] == dim - rank + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < rank; ++j) t[j] = t[j - 1] + 1;
  }
}

/// Enumerates the distinct size-`size` sub-multisets of a sorted tuple;
/// fn(sub_sorted, rest_sorted).
template <typename Fn>
void for_each_split(const int* t, int rank, int size, Fn&& fn) {
  int vals[kMaxRank], cnts[kMaxRank];
  int g = 0;
  for (int i = 0; i < rank;) {
    int j = i;
    while (j < rank && t[j] == t[i]) ++j;
    vals[g] = t[i];
    cnts[g] = j - i;
    ++g;
    i = j;
  }
  int take[kMaxRank];
  int sub[kMaxRank], rest[kMaxRank];
  auto rec = [&](auto&& self, int gi, int left) -> void {
    if (gi == g) {
      if (left != 0) return;
      int ns = 0, nr = 0;
      for (int q = 0; q < g; ++q) {
        for (int c = 0; c < take[q]; ++c) sub[ns++] = vals[q];
        for (int c = 0; c < cnts[q] - take[q]; ++c) rest[nr++] = vals[q];
      }
      fn(std::span<const int>{sub, static_cast<size_t>(ns)},
         std::span<const int>{rest, static_cast<size_t>(nr)});
      return;
    }
    int hi = std::min(cnts[gi], left);
    for (int c = 0; c <= hi; ++c) {
      take[gi] = c;
      self(self, gi + 1, left - c);
    }
  };
  rec(rec, 0, size);
}

class SymTensor;
class AltTensor;

/// Dense row-major real tensor; bridge type for small-scale symmetrize /
/// antisymmetrize / contraction oracles.
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(int rank, int dim);

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  double& at(std::span<const int> idx);
  double at(std::span<const int> idx) const;
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  std::size_t size() const { return data_.size(); }

 private:
  int rank_ = 0;
  int dim_ = 0;
  std::vector<double> data_;
};

/// Totally symmetric real tensor stored on canonical nondecreasing tuples.
/// Frozen after construction; entries sorted by packed key.
class SymTensor {
 public:
  SymTensor() = default;
  SymTensor(int rank, int dim) : rank_(rank), dim_(dim) {}

  /// Builds from (key,value) accumulation pairs: sorts, sums duplicates and
  /// prunes entries below prune_rel * max|value|.
  static SymTensor from_entries(int rank, int dim,
                                std::vector<std::pair<TupleKey, double>> acc,
                                double prune_rel = 1e-9);

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  std::size_t entry_count() const { return entries_.size(); }
  const std::vector<std::pair<TupleKey, double>>& entries() const {
    return entries_;
  }

  /// Value at an arbitrary raw index tuple (permutation-invariant lookup).
  double value(std::span<const int> idx) const;
  /// Value at a canonical (nondecreasing) packed key.
  double value_key(TupleKey key) const;

  double max_abs() const;
  /// Full self-contraction over all raw assignments:
  /// sum of multiplicity(tuple) * value^2.
  double norm_sq() const;

  DenseTensor to_dense() const;

  bool absent = false;  // set for identically-vanishing results (m > n)

 private:
  int rank_ = 0;
  int dim_ = 0;
  std::vector<std::pair<TupleKey, double>> entries_;
};

/// Totally antisymmetric real tensor stored on strictly increasing tuples;
/// permuted lookups resolve the permutation parity, repeated indices give 0.
class AltTensor {
 public:
  AltTensor() = default;
  AltTensor(int rank, int dim) : rank_(rank), dim_(dim) {}

  static AltTensor from_entries(int rank, int dim,
                                std::vector<std::pair<TupleKey, double>> acc,
                                double prune_rel = 1e-9);

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  std::size_t entry_count() const { return entries_.size(); }
  const std::vector<std::pair<TupleKey, double>>& entries() const {
    return entries_;
  }

  double value(std::span<const int> idx) const;
  double value_key(TupleKey key) const;  // key must be strictly increasing

  double max_abs() const;
  /// Full self-contraction: rank! * sum of value^2.
  double norm_sq() const;

  DenseTensor to_dense() const;

  bool absent = false;

 private:
  int rank_ = 0;
  int dim_ = 0;
  std::vector<std::pair<TupleKey, double>> entries_;
};

SymTensor sym_from_dense(const DenseTensor& t, double prune_rel = 1e-9);
AltTensor alt_from_dense(const DenseTensor& t, double prune_rel = 1e-9);

/// Unit-weight symmetrization of a dense tensor.
SymTensor symmetrize(const DenseTensor& t);
/// Unit-weight symmetrization is the identity on canonical storage.
inline const SymTensor& symmetrize(const SymTensor& t) { return t; }
/// Symmetrizing an alternating tensor of rank >= 2 gives zero.
SymTensor symmetrize(const AltTensor& t);

/// Unit-weight alternation over the chosen slots, dense result.
DenseTensor antisymmetrize(const DenseTensor& t, std::span<const int> slots);
/// Full-slot alternation, canonical result.
AltTensor antisymmetrize(const DenseTensor& t);

/// Unit-weight symmetrized outer product of two symmetric tensors,
/// e.g. delta_(ij delta_kl) or delta_(ij d_klm).
SymTensor sym_outer(const SymTensor& a, const SymTensor& b);

/// Identity tensor delta_ij.
SymTensor delta_tensor(int dim);

SymTensor sym_scale(const SymTensor& a, double factor);
SymTensor sym_add(const SymTensor& a, const SymTensor& b);

struct ContractionPlan {
  // paired slot positions (slot_in_a, slot_in_b)
  std::vector<std::pair<int, int>> pairs;
  enum class Output { Dense, Sym, Alt } output = Output::Dense;
};

/// Pairwise contraction over raw index assignments. Uses canonical sparsity
/// for symmetric operands; small dense fallback otherwise (guarded).
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const ContractionPlan& plan);

/// Contraction materialized canonically per the plan's output expectation.
SymTensor contract_to_sym(const DenseTensor& a, const DenseTensor& b,
                          ContractionPlan plan);
AltTensor contract_to_alt(const DenseTensor& a, const DenseTensor& b,
                          ContractionPlan plan);

/// sum over a k-element bound multiset Y of mult(Y) a(Y+X) b(Y):
/// contraction of all of b's slots against the leading slots of a,
/// both totally symmetric. Returns a SymTensor of rank a.rank-b.rank
/// (rank 0 -> single entry at empty key).
SymTensor contract_sym_all_of_b(const SymTensor& a, const SymTensor& b,
                                double prune_rel = 1e-12);

/// Full scalar contraction of two equal-rank symmetric tensors.
double dot_sym(const SymTensor& a, const SymTensor& b);

/// Trace of a symmetric tensor over one index pair:
/// R(X) = sum_i a(X + {i,i}).
SymTensor sym_trace_pair(const SymTensor& a);

}  // namespace racah
