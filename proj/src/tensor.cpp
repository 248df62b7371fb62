#include "racah/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace racah {

int sort_sign(int* t, int rank) {
  int sign = 1;
  for (int i = 1; i < rank; ++i) {
    int v = t[i];
    int j = i - 1;
    while (j >= 0 && t[j] > v) {
      t[j + 1] = t[j];
      --j;
      sign = -sign;
    }
    t[j + 1] = v;
  }
  for (int i = 1; i < rank; ++i)
    if (t[i] == t[i - 1]) return 0;
  return sign;
}

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) /
        static_cast<std::uint64_t>(i);
  }
  return r;
}

std::uint64_t tuple_multiplicity(const int* t, int rank) {
  std::uint64_t denom = 1;
  int run = 1;
  for (int i = 1; i < rank; ++i) {
    if (t[i] == t[i - 1]) {
      ++run;
      denom *= static_cast<std::uint64_t>(run);
    } else {
      run = 1;
    }
  }
  return factorial(rank) / denom;
}

// ---------------------------------------------------------------------------
// DenseTensor

DenseTensor::DenseTensor(int rank, int dim) : rank_(rank), dim_(dim) {
  std::size_t n = 1;
  for (int i = 0; i < rank; ++i) n *= static_cast<std::size_t>(dim);
  data_.assign(n, 0.0);
}

static std::size_t dense_offset(int rank, int dim, std::span<const int> idx) {
  std::size_t off = 0;
  for (int i = 0; i < rank; ++i)
    off = off * static_cast<std::size_t>(dim) + static_cast<std::size_t>(idx[i]);
  return off;
}

double& DenseTensor::at(std::span<const int> idx) {
  return data_[dense_offset(rank_, dim_, idx)];
}

double DenseTensor::at(std::span<const int> idx) const {
  return data_[dense_offset(rank_, dim_, idx)];
}

// ---------------------------------------------------------------------------
// shared canonical-entry machinery

static void sort_merge_prune(std::vector<std::pair<TupleKey, double>>& acc,
                             double prune_rel) {
  std::sort(acc.begin(), acc.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < acc.size();) {
    TupleKey k = acc[i].first;
    double v = 0.0;
    while (i < acc.size() && acc[i].first == k) v += acc[i++].second;
    acc[out++] = {k, v};
  }
  acc.resize(out);
  double mx = 0.0;
  for (const auto& e : acc) mx = std::max(mx, std::abs(e.second));
  const double cut = prune_rel * mx;
  out = 0;
  for (const auto& e : acc)
    if (std::abs(e.second) > cut) acc[out++] = e;
  acc.resize(out);
  acc.shrink_to_fit();
}

static double find_key(const std::vector<std::pair<TupleKey, double>>& es,
                       TupleKey key) {
  auto it = std::lower_bound(
      es.begin(), es.end(), key,
      [](const auto& e, TupleKey k) { return e.first < k; });
  return (it != es.end() && it->first == key) ? it->second : 0.0;
}

// ---------------------------------------------------------------------------
// SymTensor

SymTensor SymTensor::from_entries(int rank, int dim,
                                  std::vector<std::pair<TupleKey, double>> acc,
                                  double prune_rel) {
  SymTensor t(rank, dim);
  sort_merge_prune(acc, prune_rel);
  t.entries_ = std::move(acc);
  return t;
}

double SymTensor::value(std::span<const int> idx) const {
  int buf[kMaxRank];
  std::copy(idx.begin(), idx.end(), buf);
  std::sort(buf, buf + rank_);
  return find_key(entries_, pack_tuple({buf, static_cast<size_t>(rank_)}));
}

double SymTensor::value_key(TupleKey key) const {
  return find_key(entries_, key);
}

double SymTensor::max_abs() const {
  double mx = 0.0;
  for (const auto& e : entries_) mx = std::max(mx, std::abs(e.second));
  return mx;
}

double SymTensor::norm_sq() const {
  double s = 0.0;
  int buf[kMaxRank];
  for (const auto& e : entries_) {
    unpack_tuple(e.first, rank_, buf);
    s += static_cast<double>(tuple_multiplicity(buf, rank_)) * e.second *
         e.second;
  }
  return s;
}

DenseTensor SymTensor::to_dense() const {
  DenseTensor d(rank_, dim_);
  int buf[kMaxRank];
  for (const auto& e : entries_) {
    unpack_tuple(e.first, rank_, buf);
    int perm[kMaxRank];
    std::copy(buf, buf + rank_, perm);
    do {
      d.at({perm, static_cast<size_t>(rank_)}) = e.second;
    } while (std::next_permutation(perm, perm + rank_));
  }
  return d;
}

// ---------------------------------------------------------------------------
// AltTensor

AltTensor AltTensor::from_entries(int rank, int dim,
                                  std::vector<std::pair<TupleKey, double>> acc,
                                  double prune_rel) {
  AltTensor t(rank, dim);
  sort_merge_prune(acc, prune_rel);
  t.entries_ = std::move(acc);
  return t;
}

double AltTensor::value(std::span<const int> idx) const {
  int buf[kMaxRank];
  std::copy(idx.begin(), idx.end(), buf);
  int sign = sort_sign(buf, rank_);
  if (sign == 0) return 0.0;
  return sign *
         find_key(entries_, pack_tuple({buf, static_cast<size_t>(rank_)}));
}

double AltTensor::value_key(TupleKey key) const {
  return find_key(entries_, key);
}

double AltTensor::max_abs() const {
  double mx = 0.0;
  for (const auto& e : entries_) mx = std::max(mx, std::abs(e.second));
  return mx;
}

double AltTensor::norm_sq() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.second * e.second;
  return s * static_cast<double>(factorial(rank_));
}

DenseTensor AltTensor::to_dense() const {
  DenseTensor d(rank_, dim_);
  int buf[kMaxRank];
  for (const auto& e : entries_) {
    unpack_tuple(e.first, rank_, buf);
    int perm[kMaxRank];
    std::copy(buf, buf + rank_, perm);
    do {
      int tmp[kMaxRank];
      std::copy(perm, perm + rank_, tmp);
      int sign = sort_sign(tmp, rank_);
      d.at({perm, static_cast<size_t>(rank_)}) = sign * e.second;
    } while (std::next_permutation(perm, perm + rank_));
  }
  return d;
}

double instance_count(const int* m, int rm, const int* a, int ra) {
  double c = 1.0;
  int i = 0, j = 0;
  while (j < ra) {
    while (i < rm && m[i] < a[j]) ++i;
    int cm = 0, ca = 0;
    int v = a[j];
    int i2 = i;
    while (i2 < rm && m[i2] == v) {
      ++cm;
      ++i2;
    }
    while (j < ra && a[j] == v) {
      ++ca;
      ++j;
    }
    c *= static_cast<double>(binomial(cm, ca));
    i = i2;
  }
  return c;
}

SymTensor sym_from_dense(const DenseTensor& t, double prune_rel) {
  std::vector<std::pair<TupleKey, double>> acc;
  for_each_nondecreasing(t.rank(), t.dim(), [&](std::span<const int> idx) {
    double v = t.at(idx);
    if (v != 0.0) acc.emplace_back(pack_tuple(idx), v);
  });
  return SymTensor::from_entries(t.rank(), t.dim(), std::move(acc), prune_rel);
}

AltTensor alt_from_dense(const DenseTensor& t, double prune_rel) {
  std::vector<std::pair<TupleKey, double>> acc;
  for_each_increasing(t.rank(), t.dim(), [&](std::span<const int> idx) {
    double v = t.at(idx);
    if (v != 0.0) acc.emplace_back(pack_tuple(idx), v);
  });
  return AltTensor::from_entries(t.rank(), t.dim(), std::move(acc), prune_rel);
}

SymTensor symmetrize(const DenseTensor& t) {
  const int m = t.rank();
  std::vector<std::pair<TupleKey, double>> acc;
  const double w = 1.0 / static_cast<double>(factorial(m));
  for_each_nondecreasing(m, t.dim(), [&](std::span<const int> idx) {
    int pos[kMaxRank];
    std::iota(pos, pos + m, 0);
    int perm[kMaxRank];
    double s = 0.0;
    do {
      for (int i = 0; i < m; ++i) perm[i] = idx[pos[i]];
      s += t.at({perm, static_cast<size_t>(m)});
    } while (std::next_permutation(pos, pos + m));
    if (s != 0.0) acc.emplace_back(pack_tuple(idx), s * w);
  });
  return SymTensor::from_entries(m, t.dim(), std::move(acc));
}

SymTensor symmetrize(const AltTensor& t) {
  if (t.rank() >= 2) return SymTensor(t.rank(), t.dim());
  return symmetrize(t.to_dense());
}

DenseTensor antisymmetrize(const DenseTensor& t, std::span<const int> slots) {
  const int m = t.rank();
  const int k = static_cast<int>(slots.size());
  DenseTensor out(m, t.dim());
  const double w = 1.0 / static_cast<double>(factorial(k));
  std::vector<int> idx(m, 0);
  const std::size_t total = out.size();
  std::vector<int> pos(k);
  int perm[kMaxRank];
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t f = flat;
    for (int i = m - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(f % t.dim());
      f /= t.dim();
    }
    std::iota(pos.begin(), pos.end(), 0);
    double s = 0.0;
    do {
      std::copy(idx.begin(), idx.end(), perm);
      for (int i = 0; i < k; ++i) perm[slots[i]] = idx[slots[pos[i]]];
      int tmp[kMaxRank];
      std::copy(pos.begin(), pos.end(), tmp);
      int sign = sort_sign(tmp, k);
      s += sign * t.at({perm, static_cast<size_t>(m)});
    } while (std::next_permutation(pos.begin(), pos.end()));
    out.data()[flat] = s * w;
  }
  return out;
}

AltTensor antisymmetrize(const DenseTensor& t) {
  const int m = t.rank();
  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::pair<TupleKey, double>> acc;
  const double w = 1.0 / static_cast<double>(factorial(m));
  for_each_increasing(m, t.dim(), [&](std::span<const int> idx) {
    int pos[kMaxRank];
    std::iota(pos, pos + m, 0);
    int perm[kMaxRank];
    double s = 0.0;
    do {
      for (int i = 0; i < m; ++i) perm[i] = idx[pos[i]];
      int tmp[kMaxRank];
      std::copy(pos, pos + m, tmp);
      int sign = sort_sign(tmp, m);
      s += sign * t.at({perm, static_cast<size_t>(m)});
    } while (std::next_permutation(pos, pos + m));
    if (s != 0.0) acc.emplace_back(pack_tuple(idx), s * w);
  });
  return AltTensor::from_entries(m, t.dim(), std::move(acc));
}

// ---------------------------------------------------------------------------
// symmetric-tensor algebra

namespace {

void merge_sorted(const int* a, int ra, const int* b, int rb, int* out) {
  std::merge(a, a + ra, b, b + rb, out);
}

}  // namespace

SymTensor sym_outer(const SymTensor& a, const SymTensor& b) {
  if (a.dim() != b.dim())
    throw DimensionError("sym_outer: dimension mismatch");
  const int ra = a.rank(), rb = b.rank(), q = ra + rb;
  if (q > kMaxRank) throw DomainError("sym_outer: rank too large");
  std::vector<std::pair<TupleKey, double>> acc;
  const double norm = static_cast<double>(factorial(ra)) *
                      static_cast<double>(factorial(rb)) /
                      static_cast<double>(factorial(q));
  int ta[kMaxRank], tb[kMaxRank], tm[kMaxRank];
  for (const auto& ea : a.entries()) {
    unpack_tuple(ea.first, ra, ta);
    for (const auto& eb : b.entries()) {
      unpack_tuple(eb.first, rb, tb);
      merge_sorted(ta, ra, tb, rb, tm);
      double cinst = instance_count(tm, q, ta, ra);
      acc.emplace_back(pack_tuple({tm, static_cast<size_t>(q)}),
                       norm * cinst * ea.second * eb.second);
    }
  }
  return SymTensor::from_entries(q, a.dim(), std::move(acc), 1e-13);
}

SymTensor delta_tensor(int dim) {
  std::vector<std::pair<TupleKey, double>> acc;
  for (int i = 0; i < dim; ++i) {
    int t[2] = {i, i};
    acc.emplace_back(pack_tuple({t, 2}), 1.0);
  }
  return SymTensor::from_entries(2, dim, std::move(acc), 0.0);
}

SymTensor sym_scale(const SymTensor& a, double factor) {
  std::vector<std::pair<TupleKey, double>> acc(a.entries());
  for (auto& e : acc) e.second *= factor;
  return SymTensor::from_entries(a.rank(), a.dim(), std::move(acc), 0.0);
}

SymTensor sym_add(const SymTensor& a, const SymTensor& b) {
  if (a.rank() != b.rank() || a.dim() != b.dim())
    throw DimensionError("sym_add: shape mismatch");
  std::vector<std::pair<TupleKey, double>> acc(a.entries());
  acc.insert(acc.end(), b.entries().begin(), b.entries().end());
  return SymTensor::from_entries(a.rank(), a.dim(), std::move(acc), 0.0);
}

SymTensor contract_sym_all_of_b(const SymTensor& a, const SymTensor& b,
                                double prune_rel) {
  if (a.dim() != b.dim() || a.rank() < b.rank())
    throw DimensionError("contract_sym_all_of_b: incompatible operands");
  const int ra = a.rank(), rb = b.rank(), rf = ra - rb;
  std::vector<std::pair<TupleKey, double>> acc;
  int tm[kMaxRank];
  for (const auto& ea : a.entries()) {
    unpack_tuple(ea.first, ra, tm);
    for_each_split(tm, ra, rb,
                   [&](std::span<const int> sub, std::span<const int> rest) {
                     double vb = b.value_key(pack_tuple(sub));
                     if (vb == 0.0) return;
                     double mult = static_cast<double>(
                         tuple_multiplicity(sub.data(), rb));
                     acc.emplace_back(pack_tuple(rest),
                                      mult * ea.second * vb);
                   });
  }
  return SymTensor::from_entries(rf, a.dim(), std::move(acc), prune_rel);
}

double dot_sym(const SymTensor& a, const SymTensor& b) {
  if (a.rank() != b.rank() || a.dim() != b.dim())
    throw DimensionError("dot_sym: shape mismatch");
  double s = 0.0;
  int buf[kMaxRank];
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].first < eb[j].first) {
      ++i;
    } else if (eb[j].first < ea[i].first) {
      ++j;
    } else {
      unpack_tuple(ea[i].first, a.rank(), buf);
      s += static_cast<double>(tuple_multiplicity(buf, a.rank())) *
           ea[i].second * eb[j].second;
      ++i;
      ++j;
    }
  }
  return s;
}

SymTensor sym_trace_pair(const SymTensor& a) {
  const int ra = a.rank();
  if (ra < 2) throw DimensionError("sym_trace_pair: rank < 2");
  std::vector<std::pair<TupleKey, double>> acc;
  int tm[kMaxRank], rest[kMaxRank];
  for (const auto& ea : a.entries()) {
    unpack_tuple(ea.first, ra, tm);
    for (int i = 0; i < ra;) {
      int j = i;
      while (j < ra && tm[j] == tm[i]) ++j;
      if (j - i >= 2) {
        int nr = 0;
        for (int q = 0; q < ra; ++q)
          if (q < i || q >= i + 2) rest[nr++] = tm[q];
        acc.emplace_back(pack_tuple({rest, static_cast<size_t>(nr)}),
                         ea.second);
      }
      i = j;
    }
  }
  return SymTensor::from_entries(ra - 2, a.dim(), std::move(acc), 1e-13);
}

// ---------------------------------------------------------------------------
// general pairwise contraction (dense paths are test-scale; guarded)

DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const ContractionPlan& plan) {
  const int ra = a.rank(), rb = b.rank();
  const int nb = static_cast<int>(plan.pairs.size());
  std::vector<bool> abound(ra, false), bbound(rb, false);
  for (auto [pa, pb] : plan.pairs) {
    if (pa < 0 || pa >= ra || pb < 0 || pb >= rb)
      throw DimensionError("contract: slot out of range");
    if (abound[pa] || bbound[pb])
      throw DimensionError("contract: slot paired twice");
    abound[pa] = true;
    bbound[pb] = true;
  }
  if (a.dim() != b.dim()) throw DimensionError("contract: dim mismatch");
  const int dim = a.dim();
  std::vector<int> afree, bfree;
  for (int i = 0; i < ra; ++i)
    if (!abound[i]) afree.push_back(i);
  for (int i = 0; i < rb; ++i)
    if (!bbound[i]) bfree.push_back(i);
  const int rout = static_cast<int>(afree.size() + bfree.size());
  if (rout > kMaxRank) throw DomainError("contract: output rank too large");
  double sz = 1.0;
  for (int i = 0; i < rout; ++i) sz *= dim;
  if (sz > 6.0e7) throw CapExceeded("contract: dense output too large");

  DenseTensor out(rout, dim);
  std::vector<int> ia(ra, 0), ib(rb, 0), io(rout, 0), ik(nb, 0);
  const std::size_t nout = out.size();
  for (std::size_t flat = 0; flat < nout; ++flat) {
    std::size_t f = flat;
    for (int i = rout - 1; i >= 0; --i) {
      io[i] = static_cast<int>(f % dim);
      f /= dim;
    }
    for (std::size_t i = 0; i < afree.size(); ++i) ia[afree[i]] = io[i];
    for (std::size_t i = 0; i < bfree.size(); ++i)
      ib[bfree[i]] = io[afree.size() + i];
    double s = 0.0;
    std::fill(ik.begin(), ik.end(), 0);
    while (true) {
      for (int i = 0; i < nb; ++i) {
        ia[plan.pairs[i].first] = ik[i];
        ib[plan.pairs[i].second] = ik[i];
      }
      s += a.at(ia) * b.at(ib);
      int i = nb - 1;
      while (i >= 0 && ik[i] == dim - 1) ik[i--] = 0;
      if (i < 0) break;
      ++ik[i];
    }
    out.data()[flat] = s;
  }
  return out;
}

SymTensor contract_to_sym(const DenseTensor& a, const DenseTensor& b,
                          ContractionPlan plan) {
  plan.output = ContractionPlan::Output::Sym;
  return sym_from_dense(contract(a, b, plan));
}

AltTensor contract_to_alt(const DenseTensor& a, const DenseTensor& b,
                          ContractionPlan plan) {
  plan.output = ContractionPlan::Output::Alt;
  return alt_from_dense(contract(a, b, plan));
}

}  // namespace racah
