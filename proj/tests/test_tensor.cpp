#include <doctest.h>

#include <random>

#include "racah/basis.hpp"
#include "racah/invariants.hpp"
#include "racah/tensor.hpp"

using namespace racah;

namespace {

DenseTensor random_dense(int rank, int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseTensor t(rank, dim);
  for (auto& v : t.data()) v = u(rng);
  return t;
}

double dense_norm_sq(const DenseTensor& t) {
  double s = 0.0;
  for (double v : t.data()) s += v * v;
  return s;
}

}  // namespace

TEST_CASE("tuple helpers") {
  int t[4] = {3, 1, 2, 1};
  CHECK(sort_sign(t, 4) == 0);  // repeated index
  int u[3] = {2, 0, 1};
  CHECK(sort_sign(u, 3) == 1);  // cyclic, even
  CHECK(u[0] == 0);
  int v[2] = {5, 3};
  CHECK(sort_sign(v, 2) == -1);

  CHECK(factorial(6) == 720);
  CHECK(binomial(15, 7) == 6435);
  int m[4] = {1, 1, 2, 3};
  CHECK(tuple_multiplicity(m, 4) == 12);

  int raw[3] = {7, 0, 63};
  TupleKey k = pack_tuple({raw, 3});
  int out[3];
  unpack_tuple(k, 3, out);
  CHECK(out[0] == 7);
  CHECK(out[1] == 0);
  CHECK(out[2] == 63);
}

TEST_CASE("canonical lookup semantics") {
  GellMannBasis b = gell_mann_basis(3);
  StructureConstants sc = structure_constants(b);

  // symmetric: any permuted tuple returns the canonical value
  int a[3] = {0, 0, 7};
  int ap[3] = {7, 0, 0};
  CHECK(sc.d.value({a, 3}) == sc.d.value({ap, 3}));

  // alternating: permutation parity, zero on repeats
  int f1[3] = {0, 1, 2};
  int f2[3] = {1, 0, 2};
  CHECK(sc.f.value({f1, 3}) == -sc.f.value({f2, 3}));
  int f3[3] = {1, 1, 2};
  CHECK(sc.f.value({f3, 3}) == 0.0);
}

TEST_CASE("dense round trips at n=3 scale") {
  std::mt19937_64 rng(5);
  DenseTensor raw = random_dense(3, 8, rng);
  SymTensor s = symmetrize(raw);
  SymTensor s2 = sym_from_dense(s.to_dense(), 0.0);
  CHECK(sym_diff_max(s, s2) == 0.0);

  AltTensor al = antisymmetrize(raw);
  AltTensor al2 = alt_from_dense(al.to_dense(), 0.0);
  CHECK(alt_diff_max(al, al2) == 0.0);
}

TEST_CASE("symmetrize") {
  std::mt19937_64 rng(9);
  DenseTensor raw = random_dense(3, 6, rng);
  SymTensor once = symmetrize(raw);
  SymTensor twice = symmetrize(once.to_dense());
  CHECK(sym_diff_max(once, twice) < 1e-14);

  // symmetrizing d_ijp d_pkl over all four slots rebuilds the recursive
  // fourth-order member with its 1/3 coefficients
  GellMannBasis b = gell_mann_basis(3);
  StructureConstants sc = structure_constants(b);
  DenseTensor dd = sc.d.to_dense();
  DenseTensor d4raw(4, 8);
  int idx[4];
  for (idx[0] = 0; idx[0] < 8; ++idx[0])
    for (idx[1] = 0; idx[1] < 8; ++idx[1])
      for (idx[2] = 0; idx[2] < 8; ++idx[2])
        for (idx[3] = 0; idx[3] < 8; ++idx[3]) {
          double s = 0.0;
          for (int p = 0; p < 8; ++p) {
            int x[3] = {idx[0], idx[1], p};
            int y[3] = {p, idx[2], idx[3]};
            s += dd.at({x, 3}) * dd.at({y, 3});
          }
          d4raw.at({idx, 4}) = s;
        }
  SymTensor d4 = symmetrize(d4raw);
  CHECK(sym_diff_max(d4, d_family(sc, 4)) < 1e-12);

  // a fully antisymmetric tensor symmetrizes to zero
  SymTensor z = symmetrize(sc.f);
  CHECK(z.entry_count() == 0);
}

TEST_CASE("antisymmetrize") {
  GellMannBasis b = gell_mann_basis(3);
  StructureConstants sc = structure_constants(b);

  // alternation of f_aij delta_ak style input reproduces f itself
  DenseTensor fd = sc.f.to_dense();
  DenseTensor t(3, 8);
  int idx[3];
  for (idx[0] = 0; idx[0] < 8; ++idx[0])
    for (idx[1] = 0; idx[1] < 8; ++idx[1])
      for (idx[2] = 0; idx[2] < 8; ++idx[2]) {
        int x[3] = {idx[2], idx[0], idx[1]};
        t.at({idx, 3}) = fd.at({x, 3});
      }
  AltTensor om = antisymmetrize(t);
  CHECK(alt_diff_max(om, sc.f) < 1e-14);

  // any two slots of a symmetric tensor alternate to zero
  DenseTensor ds = sc.d.to_dense();
  int slots[2] = {0, 1};
  DenseTensor killed = antisymmetrize(ds, {slots, 2});
  double mx = 0.0;
  for (double v : killed.data()) mx = std::max(mx, std::abs(v));
  CHECK(mx < 1e-14);

  // idempotence over the same slots
  std::mt19937_64 rng(31);
  DenseTensor raw = random_dense(3, 5, rng);
  DenseTensor once = antisymmetrize(raw, {slots, 2});
  DenseTensor twice = antisymmetrize(once, {slots, 2});
  double worst = 0.0;
  for (size_t i = 0; i < once.data().size(); ++i)
    worst = std::max(worst, std::abs(once.data()[i] - twice.data()[i]));
  CHECK(worst < 1e-14);
}

TEST_CASE("contract") {
  GellMannBasis b = gell_mann_basis(3);
  StructureConstants sc = structure_constants(b);
  DenseTensor fd = sc.f.to_dense();

  // f.f over the last two slots = n delta
  ContractionPlan plan;
  plan.pairs = {{1, 1}, {2, 2}};
  DenseTensor ff = contract(fd, fd, plan);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      int x[2] = {i, j};
      CHECK(std::abs(ff.at({x, 2}) - (i == j ? 3.0 : 0.0)) < 1e-12);
    }

  // identity contraction against delta
  DenseTensor del = delta_tensor(8).to_dense();
  ContractionPlan idplan;
  idplan.pairs = {{1, 0}};
  DenseTensor same = contract(del, fd, idplan);
  double worst = 0.0;
  for (size_t i = 0; i < fd.data().size(); ++i)
    worst = std::max(worst, std::abs(same.data()[i] - fd.data()[i]));
  CHECK(worst < 1e-13);

  // full self-contraction of the cocycle = 24 at n=3
  ContractionPlan full;
  full.pairs = {{0, 0}, {1, 1}, {2, 2}};
  DenseTensor scalar = contract(fd, fd, full);
  REQUIRE(scalar.data().size() == 1);
  CHECK(scalar.data()[0] == doctest::Approx(24.0).epsilon(1e-12));

  // random rank-3 x rank-2 against a hand-rolled loop
  std::mt19937_64 rng(17);
  DenseTensor a = random_dense(3, 4, rng), c = random_dense(2, 4, rng);
  ContractionPlan p2;
  p2.pairs = {{2, 0}};
  DenseTensor got = contract(a, c, p2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        double s = 0.0;
        for (int q = 0; q < 4; ++q) {
          int x[3] = {i, j, q};
          int y[2] = {q, k};
          s += a.at({x, 3}) * c.at({y, 2});
        }
        int o[3] = {i, j, k};
        CHECK(std::abs(got.at({o, 3}) - s) < 1e-13);
      }

  CHECK_THROWS_AS(contract(a, c, ContractionPlan{{{5, 0}}, {}}),
                  DimensionError);
}

TEST_CASE("norm_sq") {
  CHECK(SymTensor(3, 8).norm_sq() == 0.0);
  GellMannBasis b = gell_mann_basis(3);
  StructureConstants sc = structure_constants(b);
  CHECK(sc.f.norm_sq() == doctest::Approx(24.0).epsilon(1e-12));

  // (2^3/4!) n (n^2-1)(n^2-4) at n=3
  RunConfig cfg;
  OmegaTensor o5 = omega(sc, 3, cfg);
  CHECK(o5.body.norm_sq() == doctest::Approx(40.0).epsilon(1e-10));

  // alternation is an orthogonal projection in the raw-entry inner product
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    DenseTensor raw = random_dense(3, 6, rng);
    AltTensor alt = antisymmetrize(raw);
    CHECK(alt.norm_sq() <= dense_norm_sq(raw) + 1e-12);
  }
}

TEST_CASE("sym_outer against a brute-force oracle") {
  std::mt19937_64 rng(53);
  DenseTensor da = random_dense(2, 5, rng), db = random_dense(2, 5, rng);
  SymTensor a = symmetrize(da), bb = symmetrize(db);
  SymTensor got = sym_outer(a, bb);
  // oracle: dense outer product then unit-weight symmetrization
  DenseTensor outer(4, 5);
  DenseTensor ad = a.to_dense(), bd = bb.to_dense();
  int idx[4];
  for (idx[0] = 0; idx[0] < 5; ++idx[0])
    for (idx[1] = 0; idx[1] < 5; ++idx[1])
      for (idx[2] = 0; idx[2] < 5; ++idx[2])
        for (idx[3] = 0; idx[3] < 5; ++idx[3]) {
          int x[2] = {idx[0], idx[1]};
          int y[2] = {idx[2], idx[3]};
          outer.at({idx, 4}) = ad.at({x, 2}) * bd.at({y, 2});
        }
  CHECK(sym_diff_max(got, symmetrize(outer)) < 1e-13);
}

TEST_CASE("symmetric contraction helpers against dense oracles") {
  GellMannBasis b = gell_mann_basis(3);
  StructureConstants sc = structure_constants(b);
  SymTensor d4 = d_family(sc, 4);

  // dot_sym vs raw double loop
  double brute = 0.0;
  DenseTensor d4d = d4.to_dense();
  for (double v : d4d.data()) brute += v * v;
  CHECK(dot_sym(d4, d4) == doctest::Approx(brute).epsilon(1e-12));

  // sym_trace_pair vs explicit delta contraction
  SymTensor tr = sym_trace_pair(d4);
  for (int k = 0; k < 8; ++k)
    for (int l = k; l < 8; ++l) {
      double s = 0.0;
      for (int i = 0; i < 8; ++i) {
        int x[4] = {i, i, k, l};
        s += d4d.at({x, 4});
      }
      int o[2] = {k, l};
      CHECK(std::abs(tr.value({o, 2}) - s) < 1e-12);
    }

  // contract_sym_all_of_b vs brute force: R_m = sum_ijk d4_{ijkm} d_{ijk}
  SymTensor r1 = contract_sym_all_of_b(d4, sc.d, 0.0);
  DenseTensor dd = sc.d.to_dense();
  for (int m = 0; m < 8; ++m) {
    double s = 0.0;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) {
          int x[4] = {i, j, k, m};
          int y[3] = {i, j, k};
          s += d4d.at({x, 4}) * dd.at({y, 3});
        }
    int o[1] = {m};
    CHECK(std::abs(r1.value({o, 1}) - s) < 1e-11);
  }
}
