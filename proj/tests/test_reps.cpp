#include <doctest.h>

#include "racah/matrix_ops.hpp"
#include "racah/invariants.hpp"
#include "racah/reps.hpp"

using namespace racah;

namespace {

struct Ctx {
  GellMannBasis basis;
  StructureConstants sc;
  explicit Ctx(int n) : basis(gell_mann_basis(n)), sc(structure_constants(basis)) {}
};

double pair_trace_residual(const Representation& rep, double coef) {
  // max |Tr D_i D_j - coef delta_ij|
  double worst = 0.0;
  const int r = static_cast<int>(rep.mats.size());
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      const Complex t = (rep.mats[i] * rep.mats[j]).trace();
      worst = std::max(worst, std::abs(t - (i == j ? coef : 0.0)));
    }
  return worst;
}

}  // namespace

TEST_CASE("defining representation") {
  Ctx c3(3);
  Representation def = defining_rep(c3.basis);
  CHECK(def.dim == 3);
  CHECK(commutation_residual(def, c3.sc) < 1e-12);
  CHECK(pair_trace_residual(def, 0.5) < 1e-13);

  Ctx c4(4);
  CHECK(defining_rep(c4.basis).dim == 4);
}

TEST_CASE("adjoint representation") {
  Ctx c3(3);
  Representation ad = adjoint_rep(c3.sc);
  CHECK(ad.dim == 8);
  CHECK(commutation_residual(ad, c3.sc) < 1e-12);
  CHECK(pair_trace_residual(ad, 3.0) < 1e-12);
  for (const auto& m : ad.mats) {
    CHECK((m + m.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(m.real().cwiseAbs().maxCoeff() < 1e-14);
  }
  Ctx c4(4);
  CHECK(adjoint_rep(c4.sc).dim == 15);
}

TEST_CASE("symmetric power representations") {
  Ctx c3(3);
  Representation s2 = sym_power_rep(c3.basis, 2);
  CHECK(s2.dim == 6);
  CHECK(commutation_residual(s2, c3.sc) < 1e-12);
  CHECK(pair_trace_residual(s2, 2.5) < 1e-12);  // (n+2)/2 at n=3

  Representation s1 = sym_power_rep(c3.basis, 1);
  Representation def = defining_rep(c3.basis);
  double worst = 0.0;
  for (size_t i = 0; i < def.mats.size(); ++i)
    worst = std::max(worst,
                     (s1.mats[i] - def.mats[i]).cwiseAbs().maxCoeff());
  CHECK(worst == 0.0);

  Caps tight;
  tight.rep_dim_cap = 5;
  CHECK_THROWS_AS(sym_power_rep(c3.basis, 3, tight), CapExceeded);
}

TEST_CASE("fundamental representations") {
  Ctx c4(4);
  Representation f2 = fund_rep(c4.basis, 2);
  CHECK(f2.dim == 6);
  CHECK(commutation_residual(f2, c4.sc) < 1e-12);
  CHECK(pair_trace_residual(f2, 1.0) < 1e-12);  // (n-2)/2 at n=4
  for (const auto& m : f2.mats) CHECK(is_hermitian(m, 1e-12));

  Ctx c6(6);
  CHECK(fund_rep(c6.basis, 3).dim == 20);

  Representation f1 = fund_rep(c4.basis, 1);
  Representation def = defining_rep(c4.basis);
  double worst = 0.0;
  for (size_t i = 0; i < def.mats.size(); ++i)
    worst = std::max(worst,
                     (f1.mats[i] - def.mats[i]).cwiseAbs().maxCoeff());
  CHECK(worst == 0.0);

  CHECK_THROWS_AS(fund_rep(c4.basis, 0), DomainError);
  CHECK_THROWS_AS(fund_rep(c4.basis, 4), DomainError);
}

TEST_CASE("gamma sets") {
  GammaSet g8 = gamma_set(8);
  CHECK(g8.gammas.size() == 8);
  CHECK(g8.gammas[0].rows() == 16);
  CHECK(gamma_residual(g8) < 1e-12);
  for (const auto& g : g8.gammas) CHECK(is_hermitian(g, 1e-12));

  GammaSet g3 = gamma_set(3);
  CHECK(g3.gammas[0].rows() == 2);
  CHECK(gamma_residual(g3) < 1e-14);

  CHECK_THROWS_WITH_AS(gamma_set(17), doctest::Contains("256"), CapExceeded);
}

TEST_CASE("spinor representation of su(3)") {
  Ctx c3(3);
  Representation sp = spinor_rep(c3.basis, c3.sc);
  CHECK(sp.dim == 16);
  CHECK(commutation_residual(sp, c3.sc) < 1e-12);
}

TEST_CASE("conjugate representation") {
  Ctx c3(3);
  Representation ad = adjoint_rep(c3.sc);
  Representation adc = conjugate_rep(ad);
  CHECK(commutation_residual(adc, c3.sc) < 1e-12);
  // trace invariance under transposition
  for (size_t i = 0; i < ad.mats.size(); ++i)
    for (size_t j = 0; j < ad.mats.size(); ++j) {
      const Complex a = (ad.mats[i] * ad.mats[j]).trace();
      const Complex b = (adc.mats[i] * adc.mats[j]).trace();
      CHECK(std::abs(a - b) < 1e-12);
    }
  Representation back = conjugate_rep(adc);
  double worst = 0.0;
  for (size_t i = 0; i < ad.mats.size(); ++i)
    worst = std::max(worst,
                     (back.mats[i] - ad.mats[i]).cwiseAbs().maxCoeff());
  CHECK(worst == 0.0);
}

TEST_CASE("sampled commutation checks for larger n") {
  Ctx c5(5);
  Representation def = defining_rep(c5.basis);
  CHECK(commutation_residual(def, c5.sc, 200) < 1e-12);
  Representation f2 = fund_rep(c5.basis, 2);
  CHECK(commutation_residual(f2, c5.sc, 200) < 1e-12);
}

TEST_CASE("canonical-output contraction wrappers") {
  Ctx c3(3);
  DenseTensor fd = c3.sc.f.to_dense();
  ContractionPlan plan;
  plan.pairs = {{1, 1}, {2, 2}};
  SymTensor nd = contract_to_sym(fd, fd, plan);
  CHECK(sym_diff_max(nd, sym_scale(delta_tensor(8), 3.0)) < 1e-12);
}

TEST_CASE("sampled commutation at n=6") {
  Ctx c6(6);
  CHECK(commutation_residual(fund_rep(c6.basis, 3), c6.sc, 200) < 1e-12);
  CHECK(commutation_residual(adjoint_rep(c6.sc), c6.sc, 200) < 1e-12);
}
