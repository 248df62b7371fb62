#include "racah/reps.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "racah/matrix_ops.hpp"
#include "racah/tensor.hpp"

namespace racah {

Representation defining_rep(const GellMannBasis& basis) {
  Representation rep;
  rep.name = "def";
  rep.n = basis.n;
  rep.dim = basis.n;
  rep.mats.reserve(basis.lambdas.size());
  for (const auto& l : basis.lambdas) rep.mats.push_back(0.5 * l);
  return rep;
}

Representation adjoint_rep(const StructureConstants& sc) {
  const int r = sc.f.dim();
  Representation rep;
  rep.name = "adj";
  rep.n = sc.n;
  rep.dim = r;
  rep.mats.assign(r, CMatrix::Zero(r, r));
  int t[3];
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const int signs[6] = {1, -1, -1, 1, 1, -1};
  for (const auto& e : sc.f.entries()) {
    unpack_tuple(e.first, 3, t);
    for (int p = 0; p < 6; ++p)
      rep.mats[t[perms[p][0]]](t[perms[p][1]], t[perms[p][2]]) =
          -kImag * (signs[p] * e.second);
  }
  return rep;
}

namespace {

// canonical tuple basis with key -> position lookup
struct TupleBasis {
  std::vector<TupleKey> keys;  // sorted (lex enumeration order)
  int index_of(TupleKey k) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), k);
    return static_cast<int>(it - keys.begin());
  }
};

}  // namespace

Representation sym_power_rep(const GellMannBasis& basis, int p,
                             const Caps& caps) {
  const int n = basis.n;
  if (p < 1) throw DomainError("sym_power_rep: requires p >= 1");
  const std::uint64_t dim = binomial(n + p - 1, p);
  if (dim > caps.rep_dim_cap)
    throw CapExceeded("sym_power_rep: dimension " + std::to_string(dim) +
                      " over cap");
  TupleBasis tb;
  tb.keys.reserve(dim);
  for_each_nondecreasing(p, n, [&](std::span<const int> t) {
    tb.keys.push_back(pack_tuple(t));
  });

  Representation rep;
  rep.name = "sym:" + std::to_string(p);
  rep.n = n;
  rep.dim = static_cast<int>(dim);
  rep.mats.assign(basis.lambdas.size(), CMatrix::Zero(rep.dim, rep.dim));

  int tup[kMaxRank], dst[kMaxRank];
  for (std::size_t gi = 0; gi < basis.lambdas.size(); ++gi) {
    const CMatrix x = 0.5 * basis.lambdas[gi];
    CMatrix& out = rep.mats[gi];
    for (int col = 0; col < rep.dim; ++col) {
      unpack_tuple(tb.keys[col], p, tup);
      // monomial action: sum over distinct slot values b with multiplicity
      // e_b, replacing one instance of b by a
      for (int s = 0; s < p;) {
        int s2 = s;
        while (s2 < p && tup[s2] == tup[s]) ++s2;
        const int b = tup[s];
        const int eb = s2 - s;
        for (int a = 0; a < n; ++a) {
          const Complex xab = x(a, b);
          if (xab == Complex(0.0)) continue;
          std::copy(tup, tup + p, dst);
          dst[s] = a;
          std::sort(dst, dst + p);
          const int row = tb.index_of(pack_tuple({dst, static_cast<size_t>(p)}));
          out(row, col) += static_cast<double>(eb) * xab;
        }
        s = s2;
      }
    }
  }
  return rep;
}

Representation fund_rep(const GellMannBasis& basis, int s, const Caps& caps) {
  const int n = basis.n;
  if (s < 1 || s > n - 1)
    throw DomainError("fund_rep: s must be in 1..n-1, got " +
                      std::to_string(s));
  const std::uint64_t dim = binomial(n, s);
  if (dim > caps.rep_dim_cap)
    throw CapExceeded("fund_rep: dimension over cap");
  TupleBasis tb;
  tb.keys.reserve(dim);
  for_each_increasing(s, n, [&](std::span<const int> t) {
    tb.keys.push_back(pack_tuple(t));
  });

  Representation rep;
  rep.name = "fund:" + std::to_string(s);
  rep.n = n;
  rep.dim = static_cast<int>(dim);
  rep.mats.assign(basis.lambdas.size(), CMatrix::Zero(rep.dim, rep.dim));

  int tup[kMaxRank], dst[kMaxRank];
  for (std::size_t gi = 0; gi < basis.lambdas.size(); ++gi) {
    const CMatrix x = 0.5 * basis.lambdas[gi];
    CMatrix& out = rep.mats[gi];
    for (int col = 0; col < rep.dim; ++col) {
      unpack_tuple(tb.keys[col], s, tup);
      for (int slot = 0; slot < s; ++slot) {
        const int b = tup[slot];
        for (int a = 0; a < n; ++a) {
          const Complex xab = x(a, b);
          if (xab == Complex(0.0)) continue;
          std::copy(tup, tup + s, dst);
          dst[slot] = a;
          const int sign = sort_sign(dst, s);
          if (sign == 0) continue;  // wedge kills repeated factors
          const int row = tb.index_of(pack_tuple({dst, static_cast<size_t>(s)}));
          out(row, col) += static_cast<double>(sign) * xab;
        }
      }
    }
  }
  return rep;
}

GammaSet gamma_set(int r, const Caps& caps) {
  if (r < 1) throw DomainError("gamma_set: requires r >= 1");
  const int half = r / 2;
  const double dim = std::pow(2.0, half);
  if (dim > static_cast<double>(caps.spinor_dim_cap))
    throw CapExceeded("gamma_set: dimension 2^" + std::to_string(half) + " = " +
                      std::to_string(static_cast<std::uint64_t>(dim)) +
                      " over cap");
  CMatrix s1(2, 2), s2(2, 2), s3(2, 2), id2 = CMatrix::Identity(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -kImag, kImag, 0;
  s3 << 1, 0, 0, -1;

  GammaSet g;
  g.r = r;
  if (r == 1) {
    g.gammas.push_back(CMatrix::Identity(1, 1));
    return g;
  }
  // even part by the doubling recursion
  g.gammas = {s1, s2};
  for (int cur = 2; cur + 2 <= r; cur += 2) {
    std::vector<CMatrix> next;
    next.reserve(cur + 2);
    for (const auto& gm : g.gammas) next.push_back(kron(gm, s3));
    const CMatrix idk = CMatrix::Identity(g.gammas[0].rows(),
                                          g.gammas[0].rows());
    next.push_back(kron(idk, s1));
    next.push_back(kron(idk, s2));
    g.gammas = std::move(next);
  }
  if (r % 2 == 1) {
    // chirality product closes the odd case: i^k g_1 ... g_2k
    const int k = half;
    CMatrix prod = g.gammas[0];
    for (int i = 1; i < 2 * k; ++i) prod = prod * g.gammas[i];
    Complex phase = 1.0;
    switch (k % 4) {
      case 0: phase = 1.0; break;
      case 1: phase = kImag; break;
      case 2: phase = -1.0; break;
      case 3: phase = -kImag; break;
    }
    g.gammas.push_back(phase * prod);
  }
  return g;
}

Representation spinor_rep(const GellMannBasis& basis,
                          const StructureConstants& sc, const Caps& caps) {
  const int n = basis.n;
  const int r = basis.dim_adjoint();
  GammaSet g = gamma_set(r, caps);
  const int dim = static_cast<int>(g.gammas[0].rows());

  Representation rep;
  rep.name = "spinor";
  rep.n = n;
  rep.dim = dim;
  rep.mats.assign(r, CMatrix::Zero(dim, dim));
  // S_i = -(i/4) f_ijk g_j g_k = -(i/2) sum_{j<k} f_ijk g_j g_k
  int t[3];
  for (const auto& e : sc.f.entries()) {
    unpack_tuple(e.first, 3, t);
    const Complex w = Complex(0.0, -0.5) * e.second;
    rep.mats[t[0]] += w * (g.gammas[t[1]] * g.gammas[t[2]]);
    rep.mats[t[1]] -= w * (g.gammas[t[0]] * g.gammas[t[2]]);
    rep.mats[t[2]] += w * (g.gammas[t[0]] * g.gammas[t[1]]);
  }
  return rep;
}

Representation conjugate_rep(const Representation& d) {
  Representation rep;
  rep.name = "conj:" + d.name;
  rep.n = d.n;
  rep.dim = d.dim;
  rep.mats.reserve(d.mats.size());
  for (const auto& m : d.mats) rep.mats.push_back(-m.transpose());
  return rep;
}

double commutation_residual(const Representation& d,
                            const StructureConstants& sc, int sample_pairs,
                            std::uint64_t seed) {
  const int r = static_cast<int>(d.mats.size());
  std::vector<std::pair<int, int>> pairs;
  if (sample_pairs <= 0) {
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) pairs.emplace_back(i, j);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, r - 1);
    while (static_cast<int>(pairs.size()) < sample_pairs) {
      int i = pick(rng), j = pick(rng);
      if (i != j) pairs.emplace_back(i, j);
    }
  }
  double worst = 0.0;
  int raw[3];
  for (auto [i, j] : pairs) {
    CMatrix m = d.mats[i] * d.mats[j] - d.mats[j] * d.mats[i];
    raw[0] = i;
    raw[1] = j;
    for (int k = 0; k < r; ++k) {
      raw[2] = k;
      const double fv = sc.f.value({raw, 3});
      if (fv != 0.0) m -= kImag * fv * d.mats[k];
    }
    worst = std::max(worst, m.cwiseAbs().maxCoeff());
  }
  return worst;
}

double gamma_residual(const GammaSet& g) {
  const int r = g.r;
  const auto dim = g.gammas[0].rows();
  double worst = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) {
      CMatrix a = g.gammas[i] * g.gammas[j] + g.gammas[j] * g.gammas[i];
      if (i == j) a -= 2.0 * CMatrix::Identity(dim, dim);
      worst = std::max(worst, a.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace racah
