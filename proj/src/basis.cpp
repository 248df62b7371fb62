#include "racah/basis.hpp"

#include <algorithm>
#include <cmath>

#include "racah/matrix_ops.hpp"

namespace racah {

GellMannBasis gell_mann_basis(int n) {
  if (n < 2) throw DomainError("gell_mann_basis: need n >= 2");
  GellMannBasis basis;
  basis.n = n;
  basis.lambdas.reserve(static_cast<size_t>(n) * n - 1);
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      CMatrix sym = CMatrix::Zero(n, n);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.lambdas.push_back(sym);
      CMatrix asym = CMatrix::Zero(n, n);
      asym(j, k) = -kImag;
      asym(k, j) = kImag;
      basis.lambdas.push_back(asym);
    }
    CMatrix diag = CMatrix::Zero(n, n);
    const double norm = std::sqrt(2.0 / (static_cast<double>(k) * (k + 1)));
    for (int j = 0; j < k; ++j) diag(j, j) = norm;
    diag(k, k) = -norm * k;
    basis.lambdas.push_back(diag);
  }
  return basis;
}

int StructureConstants::pair_id(int a, int b) const {
  auto it = std::lower_bound(f_pairs.begin(), f_pairs.end(),
                             std::make_pair(a, b));
  if (it == f_pairs.end() || *it != std::make_pair(a, b)) return -1;
  return static_cast<int>(it - f_pairs.begin());
}

double StructureConstants::f_pair_value(int k, int a, int b) const {
  int id = pair_id(a, b);
  if (id < 0) return 0.0;
  for (const auto& e : f_by_pair[id])
    if (e.k == k) return e.value;
  return 0.0;
}

StructureConstants structure_constants(const GellMannBasis& basis,
                                       const Tolerance& tol) {
  const int n = basis.n;
  const int r = basis.dim_adjoint();
  StructureConstants sc;
  sc.n = n;

  // precompute all pair products once; f and d come from
  // Tr((l_i l_j -+ l_j l_i) l_k) read off as entrywise pairings
  std::vector<CMatrix> prod(static_cast<size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      prod[static_cast<size_t>(i) * r + j] = basis.lambdas[i] * basis.lambdas[j];

  std::vector<std::pair<TupleKey, double>> facc, dacc;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const CMatrix comm =
          prod[static_cast<size_t>(i) * r + j] - prod[static_cast<size_t>(j) * r + i];
      const CMatrix anti =
          prod[static_cast<size_t>(i) * r + j] + prod[static_cast<size_t>(j) * r + i];
      for (int k = 0; k < r; ++k) {
        // f_ijk = -i/4 Tr([l_i,l_j] l_k): nonzero only for k > j after
        // canonicalization, but compute all k >= 0 and keep canonical slots
        if (k > j) {
          const Complex tf =
              (comm.transpose().array() * basis.lambdas[k].array()).sum();
          const double fv = (tf * Complex(0.0, -0.25)).real();
          const double fim = std::abs((tf * Complex(0.0, -0.25)).imag());
          if (fim > tol.abs)
            throw DomainError("structure_constants: f has imaginary residue");
          if (std::abs(fv) > 1e-12) {
            int t[3] = {i, j, k};
            facc.emplace_back(pack_tuple({t, 3}), fv);
          }
        }
        if (k >= j) {
          const Complex td =
              (anti.transpose().array() * basis.lambdas[k].array()).sum();
          const double dv = 0.25 * td.real();
          if (std::abs(0.25 * td.imag()) > tol.abs)
            throw DomainError("structure_constants: d has imaginary residue");
          if (std::abs(dv) > 1e-12) {
            int t[3] = {i, j, k};
            dacc.emplace_back(pack_tuple({t, 3}), dv);
          }
        }
      }
    }
    // d_iik diagonal-in-two-slots entries (i == j)
    const CMatrix anti = 2.0 * prod[static_cast<size_t>(i) * r + i];
    for (int k = i; k < r; ++k) {
      const Complex td =
          (anti.transpose().array() * basis.lambdas[k].array()).sum();
      const double dv = 0.25 * td.real();
      if (std::abs(dv) > 1e-12) {
        int t[3] = {i, i, k};
        dacc.emplace_back(pack_tuple({t, 3}), dv);
      }
    }
  }
  sc.f = AltTensor::from_entries(3, r, std::move(facc), 0.0);
  sc.d = SymTensor::from_entries(3, r, std::move(dacc), 0.0);

  // sparse pair indexes over f: each canonical triple t0<t1<t2 supports the
  // pairs (t0,t1), (t0,t2), (t1,t2), the third index playing k
  for (const auto& e : sc.f.entries()) {
    int t[3];
    unpack_tuple(e.first, 3, t);
    sc.f_pairs.emplace_back(t[0], t[1]);
    sc.f_pairs.emplace_back(t[0], t[2]);
    sc.f_pairs.emplace_back(t[1], t[2]);
  }
  std::sort(sc.f_pairs.begin(), sc.f_pairs.end());
  sc.f_pairs.erase(std::unique(sc.f_pairs.begin(), sc.f_pairs.end()),
                   sc.f_pairs.end());
  sc.f_by_pair.assign(sc.f_pairs.size(), {});
  sc.pairs_of_k.assign(r, {});
  for (size_t id = 0; id < sc.f_pairs.size(); ++id) {
    auto [a, b] = sc.f_pairs[id];
    for (int k = 0; k < r; ++k) {
      int raw[3] = {k, a, b};
      double v = sc.f.value({raw, 3});
      if (v != 0.0) {
        sc.f_by_pair[id].push_back({k, v});
        sc.pairs_of_k[k].emplace_back(static_cast<int>(id), v);
      }
    }
  }
  return sc;
}

double jacobi_residual(const StructureConstants& sc) {
  const int r = sc.f.dim();
  std::vector<RMatrix> F(r, RMatrix::Zero(r, r));
  for (const auto& e : sc.f.entries()) {
    int t[3];
    unpack_tuple(e.first, 3, t);
    // scatter all 6 arrangements
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const int signs[6] = {1, -1, -1, 1, 1, -1};
    for (int p = 0; p < 6; ++p)
      F[t[perms[p][0]]](t[perms[p][1]], t[perms[p][2]]) = signs[p] * e.second;
  }
  double worst = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      RMatrix m = F[i] * F[j] - F[j] * F[i];
      int raw[3] = {i, j, 0};
      for (int k = 0; k < r; ++k) {
        raw[2] = k;
        double v = sc.f.value({raw, 3});
        if (v != 0.0) m += v * F[k];
      }
      worst = std::max(worst, m.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double product_reconstruction_residual(const GellMannBasis& basis,
                                       const StructureConstants& sc) {
  const int n = basis.n;
  const int r = basis.dim_adjoint();
  double worst = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      CMatrix rhs = CMatrix::Zero(n, n);
      if (i == j)
        rhs += (2.0 / n) * CMatrix::Identity(n, n);
      int raw[3] = {i, j, 0};
      for (int k = 0; k < r; ++k) {
        raw[2] = k;
        const double dv = sc.d.value({raw, 3});
        const double fv = sc.f.value({raw, 3});
        if (dv != 0.0 || fv != 0.0)
          rhs += Complex(dv, fv) * basis.lambdas[k];
      }
      const CMatrix lhs = basis.lambdas[i] * basis.lambdas[j];
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace racah
