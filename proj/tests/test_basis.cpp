#include <doctest.h>

#include <cmath>

#include "racah/basis.hpp"
#include "racah/invariants.hpp"
#include "racah/matrix_ops.hpp"

using namespace racah;

TEST_CASE("gell_mann_basis n=2 gives the Pauli matrices in order") {
  GellMannBasis b = gell_mann_basis(2);
  REQUIRE(b.lambdas.size() == 3);
  CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -kImag, kImag, 0;
  s3 << 1, 0, 0, -1;
  CHECK((b.lambdas[0] - s1).cwiseAbs().maxCoeff() == 0.0);
  CHECK((b.lambdas[1] - s2).cwiseAbs().maxCoeff() == 0.0);
  CHECK((b.lambdas[2] - s3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("basis invariants at n=3 and n=5") {
  GellMannBasis b3 = gell_mann_basis(3);
  REQUIRE(b3.lambdas.size() == 8);
  CHECK(std::abs((b3.lambdas[7] * b3.lambdas[7]).trace() - 2.0) < 1e-14);

  GellMannBasis b5 = gell_mann_basis(5);
  REQUIRE(b5.lambdas.size() == 24);
  for (const auto& l : b5.lambdas) {
    CHECK(l.rows() == 5);
    CHECK(is_hermitian(l, 1e-12));
    CHECK(std::abs(l.trace()) < 1e-14);
  }

  CHECK_THROWS_AS(gell_mann_basis(1), DomainError);
}

TEST_CASE("structure constants of su(3)") {
  GellMannBasis b = gell_mann_basis(3);
  StructureConstants sc = structure_constants(b);

  int t[3] = {0, 1, 2};
  CHECK(sc.f.value({t, 3}) == doctest::Approx(1.0).epsilon(1e-12));

  int td[3] = {0, 0, 7};
  CHECK(sc.d.value({td, 3}) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

  // antisymmetry kills repeated indices
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      int r[3] = {i, i, j};
      CHECK(sc.f.value({r, 3}) == 0.0);
    }
}

TEST_CASE("reconstruction and Jacobi residuals") {
  for (int n = 3; n <= 5; ++n) {
    GellMannBasis b = gell_mann_basis(n);
    StructureConstants sc = structure_constants(b);
    CHECK(product_reconstruction_residual(b, sc) < 1e-9);
    CHECK(jacobi_residual(sc) < 1e-9);
    CHECK(sc.f.norm_sq() ==
          doctest::Approx(n * (n * n - 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("d.d contraction matches the derived closed form") {
  // brute-force oracle: sum_kl d_ikl d_jkl = ((n^2-4)/n) delta_ij
  for (int n = 3; n <= 4; ++n) {
    GellMannBasis b = gell_mann_basis(n);
    StructureConstants sc = structure_constants(b);
    const int r = n * n - 1;
    DenseTensor dd = sc.d.to_dense();
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        double s = 0.0;
        for (int k = 0; k < r; ++k)
          for (int l = 0; l < r; ++l) {
            int a[3] = {i, k, l};
            int c[3] = {j, k, l};
            s += dd.at({a, 3}) * dd.at({c, 3});
          }
        const double want = (i == j) ? (n * n - 4.0) / n : 0.0;
        CHECK(std::abs(s - want) < 1e-10 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("pair index structures are consistent with f") {
  GellMannBasis b = gell_mann_basis(4);
  StructureConstants sc = structure_constants(b);
  for (size_t id = 0; id < sc.f_pairs.size(); ++id) {
    auto [a, bb] = sc.f_pairs[id];
    for (const auto& e : sc.f_by_pair[id]) {
      int t[3] = {e.k, a, bb};
      CHECK(sc.f.value({t, 3}) == doctest::Approx(e.value).epsilon(1e-14));
      CHECK(sc.f_pair_value(e.k, a, bb) ==
            doctest::Approx(e.value).epsilon(1e-14));
    }
  }
  CHECK(sc.pair_id(0, 0) == -1);
}
