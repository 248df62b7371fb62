#include <doctest.h>

#include <random>

#include "racah/basis.hpp"
#include "racah/matrix_ops.hpp"

using namespace racah;

namespace {

CMatrix pauli(int k) {
  CMatrix s(2, 2);
  switch (k) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kImag, kImag, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

CMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(u(rng), u(rng));
  return a;
}

}  // namespace

TEST_CASE("matmul basics") {
  const CMatrix id2 = CMatrix::Identity(2, 2);
  CHECK((matmul(id2, id2) - id2).cwiseAbs().maxCoeff() == 0.0);

  // sigma1 sigma2 = i sigma3, multiplied out by hand
  CMatrix want = kImag * pauli(3);
  CHECK((matmul(pauli(1), pauli(2)) - want).cwiseAbs().maxCoeff() < 1e-15);

  std::mt19937_64 rng(7);
  CMatrix a = random_matrix(3, rng);
  CHECK(matmul(a, CMatrix::Zero(3, 3)).cwiseAbs().maxCoeff() == 0.0);

  CMatrix bad(2, 3);
  CHECK_THROWS_AS(matmul(bad, bad), DimensionError);
  CHECK_THROWS_WITH_AS(matmul(bad, bad), doctest::Contains("2x3"),
                       DimensionError);
}

TEST_CASE("commutator and anticommutator") {
  std::mt19937_64 rng(11);
  CMatrix a = random_matrix(4, rng);
  CHECK(commutator(a, a).cwiseAbs().maxCoeff() < 1e-14);

  CHECK(anticommutator(pauli(1), pauli(2)).cwiseAbs().maxCoeff() < 1e-15);

  // su(2) block inside su(3): [l1, l2] = 2i diag(1,-1,0)
  GellMannBasis b3 = gell_mann_basis(3);
  CMatrix want = CMatrix::Zero(3, 3);
  want(0, 0) = 2.0 * kImag;
  want(1, 1) = -2.0 * kImag;
  CHECK((commutator(b3.lambdas[0], b3.lambdas[1]) - want)
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  CMatrix c = random_matrix(4, rng);
  CHECK((commutator(a, c) + commutator(c, a)).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(commutator(a, random_matrix(3, rng)), DimensionError);
}

TEST_CASE("kron") {
  const CMatrix id2 = CMatrix::Identity(2, 2);
  CHECK((kron(id2, id2) - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() ==
        0.0);

  CMatrix d = kron(pauli(3), id2);
  CMatrix want = CMatrix::Zero(4, 4);
  want.diagonal() << 1, 1, -1, -1;
  CHECK((d - want).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 rng(3);
  CMatrix a = random_matrix(3, rng), b = random_matrix(2, rng);
  CHECK(kron(a, b).rows() == 6);
  CHECK(kron(a, b).cols() == 6);
  CHECK(std::abs(trace(kron(a, b)) - trace(a) * trace(b)) < 1e-13);
}

TEST_CASE("trace and trace_product") {
  CHECK(trace(CMatrix::Identity(5, 5)) == Complex(5.0));

  GellMannBasis b4 = gell_mann_basis(4);
  for (const auto& l : b4.lambdas) CHECK(std::abs(trace(l)) < 1e-14);
  for (size_t i = 0; i < b4.lambdas.size(); ++i)
    for (size_t j = 0; j < b4.lambdas.size(); ++j) {
      const Complex t = trace_product(
          std::vector<CMatrix>{b4.lambdas[i], b4.lambdas[j]});
      CHECK(std::abs(t - (i == j ? 2.0 : 0.0)) < 1e-13);
    }

  // cyclic invariance on random 4-matrix chains
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CMatrix> ms;
    for (int k = 0; k < 4; ++k) ms.push_back(random_matrix(5, rng));
    const Complex t0 = trace_product(ms);
    std::rotate(ms.begin(), ms.begin() + 1, ms.end());
    const Complex t1 = trace_product(ms);
    CHECK(std::abs(t0 - t1) < 1e-12 * std::max(1.0, std::abs(t0)));
  }

  // the paired final step matches the materialized product
  std::vector<CMatrix> ms;
  for (int k = 0; k < 5; ++k) ms.push_back(random_matrix(4, rng));
  CMatrix full = ms[0];
  for (int k = 1; k < 5; ++k) full = full * ms[k];
  CHECK(std::abs(trace_product(ms) - full.trace()) < 1e-12);

  CHECK_THROWS_AS(trace_product(std::vector<CMatrix>{}), DimensionError);
  CHECK_THROWS_AS(
      trace_product(std::vector<CMatrix>{CMatrix::Zero(2, 3)}),
      DimensionError);
  CHECK_THROWS_AS(trace_product(std::vector<CMatrix>{CMatrix::Zero(2, 2),
                                                     CMatrix::Zero(3, 3)}),
                  DimensionError);
}

TEST_CASE("tolerance validation") {
  CHECK_THROWS_AS(Tolerance(0.0, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(Tolerance(1e-9, -1.0), std::invalid_argument);
  Tolerance t;
  CHECK(t.close(1.0, 1.0 + 1e-10));
  CHECK(!t.close(1.0, 1.1));
}
